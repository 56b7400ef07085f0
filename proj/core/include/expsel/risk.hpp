#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "expsel/estimators.hpp"
#include "expsel/model.hpp"
#include "expsel/numerics.hpp"

namespace expsel {

/// Entropy loss L = d / sigma - ln(d / sigma) - 1.
double entropy_loss(double d, double sigma_selected);

struct RiskEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t replications = 0;
    std::uint64_t seed = 0;
};

struct PairedComparison {
    /// mean of loss_a - loss_b under common random numbers
    double mean_diff = 0.0;
    double std_error_diff = 0.0;
    std::uint64_t replications = 0;
};

/// Monte Carlo mean of a per-replication statistic.
struct MomentEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t replications = 0;
};

struct BayesPrior {
    double shape = 1.0;
    double rate = 1.0;
};

/// Replications are split into fixed-size blocks and reduced in block order,
/// so results do not depend on the worker count.
struct ExecutionOptions {
    /// 0 selects std::thread::hardware_concurrency().
    unsigned workers = 0;
};

inline constexpr std::uint64_t kDefaultReplications = 5000;

RiskEstimate mc_risk(const EstimatorSpec& spec, const PopulationSet& pop,
                     std::uint64_t replications, const RngSpec& rng,
                     const ExecutionOptions& exec = {});

/// Risks of several estimators evaluated on the same draws.
std::vector<RiskEstimate> mc_risks(const std::vector<EstimatorSpec>& specs,
                                   const PopulationSet& pop, std::uint64_t replications,
                                   const RngSpec& rng, const ExecutionOptions& exec = {});

PairedComparison mc_dominance(const EstimatorSpec& spec_a, const EstimatorSpec& spec_b,
                              const PopulationSet& pop, std::uint64_t replications,
                              const RngSpec& rng, const ExecutionOptions& exec = {});

/// Monte Carlo estimate of E[1 / (sigma_J Y_J)], whose reciprocal at equal
/// rates is the upper admissible constant c^*.
MomentEstimate mc_selected_inverse_moment(const PopulationSet& pop, std::uint64_t replications,
                                          const RngSpec& rng, const ExecutionOptions& exec = {});

/// E[1 / (sigma_J Y_J)] for k = 2 as a function of the rate ratio q >= 1.
double h_of_q(double q, int n);

/// E[ln(sigma_J Y_J)] for k = 2 by quadrature.
double expected_log_selected_k2(const std::array<double, 2>& rates, int n,
                                const QuadratureSpec& quad = {});

/// Exact risk of c / Y_J for k = 2: c h(q) - ln c + E[ln(sigma_J Y_J)] - 1.
double exact_risk_scaleinv_k2(double c, const std::array<double, 2>& rates, int n,
                              const QuadratureSpec& quad = {});

/// Psi(n) - ln(n - 1): risk of the generalized Bayes rule (n - 1) / Y in the
/// one-population problem, and the minimax value.
double gb_component_risk(int n);

/// Psi(n + shape) - ln(n + shape - 1); the prior rate cancels.
double bayes_risk(int n, const BayesPrior& prior);

/// c / (n - 1) - ln c + Psi(n) - 1, the limit q -> infinity of the upper risk
/// bound for c / Y_J. Reported as a sup-risk bound.
double sup_risk_scaleinv(double c, int n);

namespace detail {
/// Risk of c / Y for a single Gamma(rate, n) population (no selection step).
/// Oracle path for the one-population closed form; not part of the selection API.
RiskEstimate mc_risk_single_population(double c, double rate, int n,
                                       std::uint64_t replications, const RngSpec& rng,
                                       const ExecutionOptions& exec = {});
}  // namespace detail

}  // namespace expsel
