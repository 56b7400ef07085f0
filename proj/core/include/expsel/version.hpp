#pragma once

namespace expsel {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace expsel
