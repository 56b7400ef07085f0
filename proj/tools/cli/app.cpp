#include "app.hpp"

#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "expsel/errors.hpp"
#include "expsel/version.hpp"

namespace expsel::cli {

namespace {

struct Flags {
    std::optional<int> n;
    std::optional<int> k;
    std::optional<std::uint64_t> reps;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    std::optional<std::string> config_path;
    std::optional<std::string> out_path;
    std::optional<std::string> scales;
    std::optional<std::string> estimators;
    std::optional<double> alpha;
    std::optional<int> h_count;
    std::optional<unsigned> workers;
    std::optional<std::string> pair;
    std::optional<double> c;
};

// Defaults, then the config file, then explicit flags.
ExperimentConfig build_config(const Flags& f) {
    ExperimentConfig base;
    base.scales_grid = table_grid();
    ExperimentConfig config = f.config_path ? load_config_file(*f.config_path, base) : base;
    if (f.n) config.n = *f.n;
    if (f.k) config.k = *f.k;
    if (f.reps) config.replications = *f.reps;
    if (f.seed) config.seed = *f.seed;
    if (f.format) config.format = parse_format(*f.format);
    if (f.scales) config.scales_grid = parse_scales_grid(*f.scales);
    if (f.estimators) config.estimators = parse_estimator_list(*f.estimators);
    if (f.alpha) config.alpha = *f.alpha;
    if (f.h_count) config.h_count = *f.h_count;
    if (f.workers) config.workers = *f.workers;
    return config;
}

std::pair<std::string, std::string> parse_pair(const std::optional<std::string>& text) {
    if (!text) throw ValidationError("dominance needs --pair A,B");
    const auto names = parse_estimator_list(*text);
    if (names.size() != 2) {
        throw ValidationError("--pair expects exactly two estimators, got '" + *text + "'");
    }
    return {names[0], names[1]};
}

ExactRequest exact_request(const Flags& f, const ExperimentConfig& config) {
    ExactRequest req;
    req.n = config.n;
    req.c = f.c ? *f.c : config.n - 1.0;
    req.replications = config.replications;
    req.seed = config.seed;
    req.workers = config.workers;
    if (f.scales) {
        const auto grid = parse_scales_grid(*f.scales);
        if (grid.size() != 1 || grid[0].size() != 2) {
            throw ValidationError("exact expects --scales with exactly two values, e.g. 1,2");
        }
        req.scales = {grid[0][0], grid[0][1]};
    }
    return req;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Estimation after selection of exponential hazard rates under entropy loss",
                 "expsel"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    app.add_option("--n", f.n, "Sample size per population");
    app.add_option("--k", f.k, "Number of populations");
    app.add_option("--reps", f.reps, "Monte Carlo replications");
    app.add_option("--seed", f.seed, "RNG seed");
    app.add_option("--format", f.format, "Output format: csv, json or markdown");
    app.add_option("--config", f.config_path, "Key = value config file; flags override it");
    app.add_option("--out", f.out_path, "Write the report here instead of stdout");
    app.add_option("--scales", f.scales, "Scale vectors (1/sigma_i), e.g. '0.3,0.2; 1,1'");
    app.add_option("--estimators", f.estimators, "e.g. 'N1,N2,delta(c=4.5)'");
    app.add_option("--alpha", f.alpha, "alpha for N2I/MLI (default: dominance bound)");
    app.add_option("--h-count", f.h_count, "h for N2I/MLI (default: k)");
    app.add_option("--workers", f.workers, "Monte Carlo threads (0 = all cores)");

    auto* risk_table = app.add_subcommand("risk-table", "Monte Carlo risk table");
    auto* bounds = app.add_subcommand("bounds", "Admissibility bounds and minimax value");
    auto* dominance = app.add_subcommand("dominance", "Paired risk comparison of two estimators");
    dominance->add_option("--pair", f.pair, "Two estimators, e.g. N1,N2")->required();
    auto* plot_data = app.add_subcommand("plot-data", "Risk against scale ratio (k = 2)");
    auto* exact = app.add_subcommand("exact", "Closed-form k = 2 risk of c / Y_J");
    exact->add_option("--c", f.c, "Constant c (default n - 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        const ExperimentConfig config = build_config(f);
        Report report;
        if (risk_table->parsed()) {
            report = run_risk_table(config);
        } else if (bounds->parsed()) {
            report = run_bounds(config.n, config.k);
        } else if (dominance->parsed()) {
            const auto [a, b] = parse_pair(f.pair);
            report = run_dominance(config, a, b);
        } else if (plot_data->parsed()) {
            report = run_plot_data(config);
        } else if (exact->parsed()) {
            report = run_exact(exact_request(f, config));
        }
        const std::string text = render(report, config.format);
        if (f.out_path) {
            std::ofstream file(*f.out_path, std::ios::binary);
            if (!file) throw ValidationError("cannot open output file '" + *f.out_path + "'");
            file << text;
            if (!file) throw ValidationError("failed writing '" + *f.out_path + "'");
        } else {
            out << text;
        }
        return 0;
    } catch (const ConvergenceError& e) {
        err << "expsel: numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "expsel: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace expsel::cli
