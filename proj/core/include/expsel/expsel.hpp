#pragma once

#include "expsel/errors.hpp"
#include "expsel/estimators.hpp"
#include "expsel/model.hpp"
#include "expsel/numerics.hpp"
#include "expsel/risk.hpp"
#include "expsel/rng.hpp"
#include "expsel/version.hpp"
