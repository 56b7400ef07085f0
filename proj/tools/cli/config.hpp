#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expsel/estimators.hpp"

namespace expsel::cli {

enum class OutputFormat { Csv, Json, Markdown };

OutputFormat parse_format(std::string_view text);
std::string to_string(OutputFormat format);

/// One experiment: a grid of scale vectors (1 / sigma_i per population) and
/// the estimators to compare on every grid point.
///
/// Estimator entries are named instances (ML, N1, N2, N2I, MLI) or explicit
/// forms `delta(c=4.5)` and `delta(c=4,alpha=0.1,h=2)`.
struct ExperimentConfig {
    int n = 5;
    int k = 2;
    std::vector<std::vector<double>> scales_grid;
    std::vector<std::string> estimators{"N1", "N2", "N2I", "ML", "MLI"};
    std::uint64_t replications = 5000;
    std::uint64_t seed = 1;
    OutputFormat format = OutputFormat::Csv;
    /// Override for the N2I/MLI alpha; default is the dominance bound.
    std::optional<double> alpha;
    /// Override for the N2I/MLI order-statistic count; default is k.
    std::optional<int> h_count;
    /// Worker threads for the Monte Carlo engine; 0 means hardware concurrency.
    unsigned workers = 0;

    bool operator==(const ExperimentConfig&) const = default;
};

/// The 5 x 5 grid of the published risk tables:
/// sigma_1^{-1} in {0.3, 0.5, 0.7, 0.9, 1.0}, sigma_2^{-1} in {0.2, 0.4, 0.6, 0.8, 1.0}.
std::vector<std::vector<double>> table_grid();

/// `0.3,0.2; 0.3,0.4` -> {{0.3, 0.2}, {0.3, 0.4}}
std::vector<std::vector<double>> parse_scales_grid(std::string_view text);
std::string format_scales_grid(const std::vector<std::vector<double>>& grid);

/// Splits on commas outside parentheses.
std::vector<std::string> parse_estimator_list(std::string_view text);

/// Flat `key = value` text; `#` starts a comment. Unknown keys are errors.
/// Keys: n, k, scales, estimators, reps, seed, format, alpha, h_count, workers.
ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});
std::string to_config_text(const ExperimentConfig& config);

/// Throws ValidationError naming the offending field.
void validate(const ExperimentConfig& config);

/// Resolves a single estimator entry against (n, k) and the alpha/h overrides.
EstimatorSpec resolve_estimator(std::string_view entry, const ExperimentConfig& config);
std::vector<EstimatorSpec> resolve_estimators(const ExperimentConfig& config);

}  // namespace expsel::cli
