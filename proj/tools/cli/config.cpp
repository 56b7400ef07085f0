#include "config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "expsel/errors.hpp"

namespace expsel::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

[[noreturn]] void field_error(std::string_view field, const std::string& message) {
    throw ValidationError("config field '" + std::string(field) + "': " + message);
}

double parse_double(std::string_view text, std::string_view field) {
    const std::string s(trim(text));
    if (s.empty()) field_error(field, "expected a number, got an empty value");
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception&) {
        field_error(field, "expected a number, got '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(value)) {
        field_error(field, "expected a number, got '" + s + "'");
    }
    return value;
}

template <typename Int>
Int parse_int(std::string_view text, std::string_view field) {
    const std::string_view s = trim(text);
    Int value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        field_error(field, "expected an integer, got '" + std::string(s) + "'");
    }
    return value;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // Prefer the shortest representation that round-trips.
    for (int precision = 1; precision <= 17; ++precision) {
        char shorter[64];
        std::snprintf(shorter, sizeof shorter, "%.*g", precision, v);
        if (std::stod(shorter) == v) return shorter;
    }
    return buf;
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
    const std::string_view s = trim(text);
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    if (s == "markdown" || s == "md") return OutputFormat::Markdown;
    field_error("format", "expected csv, json or markdown, got '" + std::string(s) + "'");
}

std::string to_string(OutputFormat format) {
    switch (format) {
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
        case OutputFormat::Markdown: return "markdown";
    }
    return "csv";
}

std::vector<std::vector<double>> table_grid() {
    std::vector<std::vector<double>> grid;
    for (double s1 : {0.3, 0.5, 0.7, 0.9, 1.0}) {
        for (double s2 : {0.2, 0.4, 0.6, 0.8, 1.0}) grid.push_back({s1, s2});
    }
    return grid;
}

std::vector<std::vector<double>> parse_scales_grid(std::string_view text) {
    std::vector<std::vector<double>> grid;
    if (trim(text).empty()) return grid;
    for (std::string_view point : split(text, ';')) {
        point = trim(point);
        if (point.empty()) field_error("scales", "empty scale vector");
        std::vector<double> scales;
        for (std::string_view v : split(point, ',')) scales.push_back(parse_double(v, "scales"));
        grid.push_back(std::move(scales));
    }
    return grid;
}

std::string format_scales_grid(const std::vector<std::vector<double>>& grid) {
    std::string out;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (g > 0) out += "; ";
        for (std::size_t i = 0; i < grid[g].size(); ++i) {
            if (i > 0) out += ",";
            out += format_number(grid[g][i]);
        }
    }
    return out;
}

std::vector<std::string> parse_estimator_list(std::string_view text) {
    std::vector<std::string> names;
    int depth = 0;
    std::string current;
    auto flush = [&]() {
        const std::string_view t = trim(current);
        if (t.empty()) field_error("estimators", "empty estimator entry");
        names.emplace_back(t);
        current.clear();
    };
    if (trim(text).empty()) return names;
    for (char ch : text) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            flush();
        } else {
            current += ch;
        }
    }
    flush();
    return names;
}

ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base) {
    ExperimentConfig config = std::move(base);
    int line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key == "n") {
            config.n = parse_int<int>(value, key);
        } else if (key == "k") {
            config.k = parse_int<int>(value, key);
        } else if (key == "scales") {
            config.scales_grid = parse_scales_grid(value);
        } else if (key == "estimators") {
            config.estimators = parse_estimator_list(value);
        } else if (key == "reps" || key == "replications") {
            config.replications = parse_int<std::uint64_t>(value, key);
        } else if (key == "seed") {
            config.seed = parse_int<std::uint64_t>(value, key);
        } else if (key == "format") {
            config.format = parse_format(value);
        } else if (key == "alpha") {
            config.alpha = parse_double(value, key);
        } else if (key == "h_count") {
            config.h_count = parse_int<int>(value, key);
        } else if (key == "workers") {
            config.workers = parse_int<unsigned>(value, key);
        } else {
            throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" +
                                  key + "'");
        }
    }
    return config;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), std::move(base));
}

std::string to_config_text(const ExperimentConfig& config) {
    std::ostringstream os;
    os << "n = " << config.n << "\n";
    os << "k = " << config.k << "\n";
    os << "scales = " << format_scales_grid(config.scales_grid) << "\n";
    os << "estimators = ";
    for (std::size_t i = 0; i < config.estimators.size(); ++i) {
        os << (i > 0 ? "," : "") << config.estimators[i];
    }
    os << "\n";
    os << "reps = " << config.replications << "\n";
    os << "seed = " << config.seed << "\n";
    os << "format = " << to_string(config.format) << "\n";
    if (config.alpha) os << "alpha = " << format_number(*config.alpha) << "\n";
    if (config.h_count) os << "h_count = " << *config.h_count << "\n";
    os << "workers = " << config.workers << "\n";
    return os.str();
}

void validate(const ExperimentConfig& config) {
    if (config.n < 2) field_error("n", "must be at least 2, got " + std::to_string(config.n));
    if (config.k < 2) field_error("k", "must be at least 2, got " + std::to_string(config.k));
    if (config.replications < 1) field_error("reps", "must be at least 1");
    if (config.scales_grid.empty()) field_error("scales", "grid is empty");
    for (std::size_t g = 0; g < config.scales_grid.size(); ++g) {
        const auto& point = config.scales_grid[g];
        if (point.size() != static_cast<std::size_t>(config.k)) {
            field_error("scales", "grid point " + std::to_string(g + 1) + " has " +
                                      std::to_string(point.size()) + " values, expected k = " +
                                      std::to_string(config.k));
        }
        for (double s : point) {
            if (!(s > 0.0) || !std::isfinite(s)) {
                field_error("scales", "grid point " + std::to_string(g + 1) +
                                          " contains a non-positive scale");
            }
        }
    }
    if (config.estimators.empty()) field_error("estimators", "no estimators given");
    if (config.alpha && !(*config.alpha > 0.0)) field_error("alpha", "must be positive");
    if (config.h_count && (*config.h_count < 2 || *config.h_count > config.k)) {
        field_error("h_count", "must lie in [2, k]");
    }
    resolve_estimators(config);
}

EstimatorSpec resolve_estimator(std::string_view entry, const ExperimentConfig& config) {
    const std::string_view name = trim(entry);
    try {
        if (name == "ML") return EstimatorSpec::ml(config.n);
        if (name == "N1") return EstimatorSpec::n1(config.n);
        if (name == "N2") return EstimatorSpec::n2(config.n);
        if (name == "N2I") {
            return EstimatorSpec::n2_improved(config.n, config.k, config.alpha, config.h_count);
        }
        if (name == "MLI") {
            return EstimatorSpec::ml_improved(config.n, config.k, config.alpha, config.h_count);
        }
        if (name.starts_with("delta(") && name.ends_with(")")) {
            const std::string_view body = name.substr(6, name.size() - 7);
            std::optional<double> c;
            std::optional<double> alpha;
            std::optional<int> h;
            for (std::string_view kv : split(body, ',')) {
                const auto eq = kv.find('=');
                if (eq == std::string_view::npos) field_error("estimators", "bad entry '" + std::string(name) + "'");
                const std::string_view key = trim(kv.substr(0, eq));
                const std::string_view value = kv.substr(eq + 1);
                if (key == "c") {
                    c = parse_double(value, "estimators");
                } else if (key == "alpha") {
                    alpha = parse_double(value, "estimators");
                } else if (key == "h") {
                    h = parse_int<int>(value, "estimators");
                } else {
                    field_error("estimators", "unknown parameter '" + std::string(key) + "' in '" +
                                                  std::string(name) + "'");
                }
            }
            if (!c) field_error("estimators", "'" + std::string(name) + "' is missing c");
            if (!alpha && !h) {
                return EstimatorSpec::scale_inverse(*c, "c" + format_number(*c));
            }
            const int h_count = h.value_or(config.k);
            const double a = alpha.value_or(
                *c <= config.n && *c > 0 ? alpha_upper_bound(config.n, h_count, *c) : 0.0);
            std::ostringstream label;
            label << "c" << format_number(*c) << "_alpha" << format_number(a) << "_h" << h_count;
            auto spec = EstimatorSpec::improved(*c, a, h_count, label.str());
            validate(spec, config.n, config.k);
            return spec;
        }
    } catch (const ValidationError& e) {
        if (std::string_view(e.what()).starts_with("config field")) throw;
        field_error("estimators", e.what());
    } catch (const std::exception& e) {
        field_error("estimators", e.what());
    }
    field_error("estimators", "unknown estimator '" + std::string(name) +
                                  "' (expected ML, N1, N2, N2I, MLI or delta(...))");
}

std::vector<EstimatorSpec> resolve_estimators(const ExperimentConfig& config) {
    std::vector<EstimatorSpec> specs;
    specs.reserve(config.estimators.size());
    for (const auto& name : config.estimators) specs.push_back(resolve_estimator(name, config));
    return specs;
}

}  // namespace expsel::cli
