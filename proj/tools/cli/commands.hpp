#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "config.hpp"
#include "report.hpp"

namespace expsel::cli {

/// Monte Carlo risk of every configured estimator at every grid point.
/// Grid point g uses RNG stream g, shared by all estimators.
Report run_risk_table(const ExperimentConfig& config);

/// Admissible interval, minimax value, sup-risk bounds and alpha bounds.
Report run_bounds(int n, int k);

/// Paired (common random numbers) risk differences risk(a) - risk(b).
Report run_dominance(const ExperimentConfig& config, const std::string& a, const std::string& b);

/// Long-format risk series against the scale ratio sigma_1^{-1} / sigma_2^{-1}.
Report run_plot_data(const ExperimentConfig& config);

struct ExactRequest {
    int n = 5;
    double c = 4.0;
    std::array<double, 2> scales{1.0, 1.0};
    std::uint64_t replications = 5000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
};

/// Closed-form k = 2 risk of c / Y_J next to its Monte Carlo estimate.
Report run_exact(const ExactRequest& request);

/// Verdict for one paired comparison at 3 standard errors.
std::string dominance_verdict(double mean_diff, double std_error, const std::string& a,
                              const std::string& b);

}  // namespace expsel::cli
