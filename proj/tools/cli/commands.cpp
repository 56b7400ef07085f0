#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "expsel/errors.hpp"
#include "expsel/estimators.hpp"
#include "expsel/risk.hpp"
#include "expsel/version.hpp"

namespace expsel::cli {

namespace {

constexpr double kVerdictSigmas = 3.0;

nlohmann::ordered_json config_json(const ExperimentConfig& config) {
    nlohmann::ordered_json j;
    j["n"] = config.n;
    j["k"] = config.k;
    j["scales"] = config.scales_grid;
    j["estimators"] = config.estimators;
    j["replications"] = config.replications;
    j["seed"] = config.seed;
    j["alpha"] = config.alpha ? nlohmann::ordered_json(*config.alpha) : nlohmann::ordered_json();
    j["h_count"] =
        config.h_count ? nlohmann::ordered_json(*config.h_count) : nlohmann::ordered_json();
    return j;
}

nlohmann::ordered_json make_meta(const std::string& command, std::uint64_t seed,
                                 nlohmann::ordered_json config) {
    nlohmann::ordered_json meta;
    meta["command"] = command;
    meta["version"] = kVersion;
    meta["seed"] = seed;
    meta["config"] = std::move(config);
    return meta;
}

ExecutionOptions execution(const ExperimentConfig& config) { return {config.workers}; }

std::vector<std::string> scale_columns(int k) {
    std::vector<std::string> cols;
    for (int i = 1; i <= k; ++i) cols.push_back("scale_" + std::to_string(i));
    return cols;
}

}  // namespace

Report run_risk_table(const ExperimentConfig& config) {
    validate(config);
    const auto specs = resolve_estimators(config);

    Report report;
    report.command = "risk-table";
    report.meta = make_meta(report.command, config.seed, config_json(config));
    report.columns = scale_columns(config.k);
    for (const auto& spec : specs) {
        report.columns.push_back("R_" + spec.name);
        report.columns.push_back("SE_" + spec.name);
    }

    for (std::size_t g = 0; g < config.scales_grid.size(); ++g) {
        const auto& scales = config.scales_grid[g];
        const auto pop = PopulationSet::from_scales(config.n, scales);
        const auto risks = mc_risks(specs, pop, config.replications, RngSpec{config.seed, g},
                                    execution(config));
        std::vector<Cell> row;
        for (double s : scales) row.push_back(Cell::shortest(s));
        for (const auto& r : risks) {
            row.push_back(Cell::number(r.mean));
            row.push_back(Cell::number(r.std_error));
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

Report run_bounds(int n, int k) {
    if (n < 2) throw DomainError("bounds: n must be at least 2, got " + std::to_string(n));
    if (k < 2) throw DomainError("bounds: k must be at least 2, got " + std::to_string(k));

    Report report;
    report.command = "bounds";
    nlohmann::ordered_json cfg;
    cfg["n"] = n;
    cfg["k"] = k;
    report.meta = make_meta(report.command, 0, cfg);
    report.meta.erase("seed");
    report.columns = {"quantity", "c", "value"};

    const auto range = admissible_range(n);
    auto add = [&](const std::string& name, std::optional<double> c, double value) {
        report.rows.push_back(
            {Cell::text(name), c ? Cell::shortest(*c) : Cell::empty(), Cell::number(value)});
    };
    add("c_lower", std::nullopt, range.c_lower);
    add("c_upper", std::nullopt, range.c_upper);
    add("minimax_value", std::nullopt, gb_component_risk(n));
    if (n >= 3) add("sup_risk_bound", n - 2.0, sup_risk_scaleinv(n - 2.0, n));
    add("sup_risk_bound", n - 1.0, sup_risk_scaleinv(n - 1.0, n));
    add("sup_risk_bound", n, sup_risk_scaleinv(n, n));
    add("alpha_bound", n - 1.0, alpha_upper_bound(n, k, n - 1.0));
    add("alpha_bound", n, alpha_upper_bound(n, k, n));
    return report;
}

std::string dominance_verdict(double mean_diff, double std_error, const std::string& a,
                              const std::string& b) {
    // mean_diff = risk(a) - risk(b)
    if (mean_diff > kVerdictSigmas * std_error) return b + " dominates " + a;
    if (mean_diff < -kVerdictSigmas * std_error) return a + " dominates " + b;
    return "inconclusive";
}

Report run_dominance(const ExperimentConfig& config, const std::string& a, const std::string& b) {
    validate(config);
    const auto spec_a = resolve_estimator(a, config);
    const auto spec_b = resolve_estimator(b, config);

    Report report;
    report.command = "dominance";
    auto cfg = config_json(config);
    cfg["pair"] = {spec_a.name, spec_b.name};
    report.meta = make_meta(report.command, config.seed, cfg);
    report.columns = scale_columns(config.k);
    for (const char* col : {"mean_diff", "se_diff", "verdict"}) report.columns.push_back(col);

    std::vector<std::string> verdicts;
    for (std::size_t g = 0; g < config.scales_grid.size(); ++g) {
        const auto& scales = config.scales_grid[g];
        const auto pop = PopulationSet::from_scales(config.n, scales);
        const auto cmp = mc_dominance(spec_a, spec_b, pop, config.replications,
                                      RngSpec{config.seed, g}, execution(config));
        verdicts.push_back(dominance_verdict(cmp.mean_diff, cmp.std_error_diff, spec_a.name,
                                             spec_b.name));
        std::vector<Cell> row;
        for (double s : scales) row.push_back(Cell::shortest(s));
        row.push_back(Cell::number(cmp.mean_diff));
        row.push_back(Cell::number(cmp.std_error_diff));
        row.push_back(Cell::text(verdicts.back()));
        report.rows.push_back(std::move(row));
    }
    const bool uniform = std::all_of(verdicts.begin(), verdicts.end(),
                                     [&](const std::string& v) { return v == verdicts.front(); });
    report.summary = uniform ? verdicts.front() : std::string("inconclusive");
    return report;
}

Report run_plot_data(const ExperimentConfig& config) {
    validate(config);
    if (config.k != 2) {
        throw ValidationError("config field 'k': plot-data needs k = 2 for a scale ratio, got " +
                              std::to_string(config.k));
    }
    const auto specs = resolve_estimators(config);

    struct Point {
        std::string estimator;
        double ratio;
        RiskEstimate risk;
    };
    std::vector<Point> points;
    for (std::size_t g = 0; g < config.scales_grid.size(); ++g) {
        const auto& scales = config.scales_grid[g];
        const auto pop = PopulationSet::from_scales(config.n, scales);
        const auto risks = mc_risks(specs, pop, config.replications, RngSpec{config.seed, g},
                                    execution(config));
        for (std::size_t e = 0; e < specs.size(); ++e) {
            points.push_back({specs[e].name, scales[0] / scales[1], risks[e]});
        }
    }
    std::stable_sort(points.begin(), points.end(), [](const Point& x, const Point& y) {
        if (x.estimator != y.estimator) return x.estimator < y.estimator;
        return x.ratio < y.ratio;
    });

    Report report;
    report.command = "plot-data";
    report.meta = make_meta(report.command, config.seed, config_json(config));
    report.columns = {"ratio", "estimator", "risk", "std_error"};
    for (const auto& p : points) {
        report.rows.push_back({Cell::number(p.ratio), Cell::text(p.estimator),
                               Cell::number(p.risk.mean), Cell::number(p.risk.std_error)});
    }
    return report;
}

Report run_exact(const ExactRequest& request) {
    if (request.n < 2) throw DomainError("exact: n must be at least 2");
    if (!(request.c > 0.0) || !std::isfinite(request.c)) {
        throw DomainError("exact: c must be positive (the entropy loss needs d > 0)");
    }
    const auto pop = PopulationSet::from_scales(request.n, request.scales);
    const std::array<double, 2> rates{pop.rates[0], pop.rates[1]};
    const double q = std::max(rates[0], rates[1]) / std::min(rates[0], rates[1]);
    const auto mc = mc_risk(EstimatorSpec::scale_inverse(request.c), pop, request.replications,
                            RngSpec{request.seed, 0}, {request.workers});

    Report report;
    report.command = "exact";
    nlohmann::ordered_json cfg;
    cfg["n"] = request.n;
    cfg["c"] = request.c;
    cfg["scales"] = request.scales;
    cfg["replications"] = request.replications;
    report.meta = make_meta(report.command, request.seed, cfg);
    report.columns = {"quantity", "value"};
    report.rows = {
        {Cell::text("q"), Cell::number(q, 10)},
        {Cell::text("h_q"), Cell::number(h_of_q(q, request.n), 10)},
        {Cell::text("exact_risk"), Cell::number(exact_risk_scaleinv_k2(request.c, rates, request.n))},
        {Cell::text("mc_risk"), Cell::number(mc.mean)},
        {Cell::text("mc_std_error"), Cell::number(mc.std_error)},
    };
    return report;
}

}  // namespace expsel::cli
