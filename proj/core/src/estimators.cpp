#include "expsel/estimators.hpp"

#include <cmath>
#include <sstream>

#include "expsel/errors.hpp"
#include "expsel/numerics.hpp"

namespace expsel {

namespace {

// Lets alpha sit exactly on a bound recomputed in a different order.
constexpr double kBoundSlack = 1e-12;

void require_n(int n, int minimum, const char* op) {
    if (n < minimum) {
        throw DomainError(std::string(op) + ": n must be at least " + std::to_string(minimum));
    }
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

EstimatorSpec EstimatorSpec::scale_inverse(double c, std::string name) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw ValidationError("estimator constant c must be positive, got " + format_double(c));
    }
    return {EstimatorKind::ScaleInverse, c, 0.0, 0, std::move(name)};
}

EstimatorSpec EstimatorSpec::improved(double c, double alpha, int h_count, std::string name) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw ValidationError("estimator constant c must be positive, got " + format_double(c));
    }
    return {EstimatorKind::Improved, c, alpha, h_count, std::move(name)};
}

EstimatorSpec EstimatorSpec::ml(int n) {
    require_n(n, 2, "ML");
    return scale_inverse(n, "ML");
}

EstimatorSpec EstimatorSpec::n1(int n) {
    // (n - 2) / Y_J must be positive for the entropy loss to be defined.
    if (n < 3) throw ValidationError("N1 requires n >= 3 so that c = n - 2 > 0");
    return scale_inverse(n - 2, "N1");
}

EstimatorSpec EstimatorSpec::n2(int n) {
    require_n(n, 2, "N2");
    return scale_inverse(n - 1, "N2");
}

EstimatorSpec EstimatorSpec::n2_improved(int n, int k, std::optional<double> alpha,
                                         std::optional<int> h_count) {
    require_n(n, 2, "N2I");
    const int h = h_count.value_or(k);
    const double c = n - 1;
    auto spec = improved(c, alpha.value_or(alpha_upper_bound(n, h, c)), h, "N2I");
    validate(spec, n, k);
    return spec;
}

EstimatorSpec EstimatorSpec::ml_improved(int n, int k, std::optional<double> alpha,
                                         std::optional<int> h_count) {
    require_n(n, 2, "MLI");
    const int h = h_count.value_or(k);
    const double c = n;
    auto spec = improved(c, alpha.value_or(alpha_upper_bound(n, h, c)), h, "MLI");
    validate(spec, n, k);
    return spec;
}

std::string EstimatorSpec::describe() const {
    std::ostringstream os;
    os.precision(10);
    if (kind == EstimatorKind::ScaleInverse) {
        os << "c/Y_J (c=" << c << ")";
    } else {
        os << "c/Y_J + alpha(nh-1)/(hX) (c=" << c << ", alpha=" << alpha << ", h=" << h_count
           << ")";
    }
    return os.str();
}

ImprovedValidation validate_improved(const EstimatorSpec& spec, int n, int k) {
    auto fail = [](ImprovedCondition cond, double bound, std::string msg) {
        return ImprovedValidation{Violation{cond, bound, std::move(msg)}};
    };
    if (spec.kind != EstimatorKind::Improved) {
        return fail(ImprovedCondition::NotImproved, 0.0, "estimator is not of improved form");
    }
    if (!(spec.c > 0.0)) {
        return fail(ImprovedCondition::CNotPositive, 0.0, "c must be positive");
    }
    if (spec.c > n) {
        return fail(ImprovedCondition::CExceedsN, n,
                    "c = " + format_double(spec.c) + " exceeds n = " + std::to_string(n));
    }
    if (spec.h_count < 2 || spec.h_count > k) {
        return fail(ImprovedCondition::HCountOutOfRange, k,
                    "h_count = " + std::to_string(spec.h_count) + " must lie in [2, " +
                        std::to_string(k) + "]");
    }
    if (!(spec.alpha > 0.0)) {
        return fail(ImprovedCondition::AlphaNotPositive, 0.0, "alpha must be positive");
    }
    const double bound = alpha_upper_bound(n, spec.h_count, spec.c);
    if (spec.alpha > bound * (1.0 + kBoundSlack)) {
        return fail(ImprovedCondition::AlphaAboveBound, bound,
                    "alpha = " + format_double(spec.alpha) + " exceeds the bound " +
                        format_double(bound));
    }
    return {};
}

void validate(const EstimatorSpec& spec, int n, int k) {
    if (n < 2) throw ValidationError("estimator validation: n must be at least 2");
    if (k < 2) throw ValidationError("estimator validation: k must be at least 2");
    if (!(spec.c > 0.0) || !std::isfinite(spec.c)) {
        throw ValidationError("estimator constant c must be positive");
    }
    if (spec.kind == EstimatorKind::Improved) {
        const auto result = validate_improved(spec, n, k);
        if (!result.ok()) {
            throw ValidationError("improved estimator " +
                                  (spec.name.empty() ? spec.describe() : spec.name) + ": " +
                                  result.violation->message);
        }
    }
}

double evaluate_unchecked(const EstimatorSpec& spec, std::span<const double> sums,
                          std::size_t selected, int n) {
    const double base = spec.c / sums[selected];
    if (spec.kind == EstimatorKind::ScaleInverse) return base;
    const int h = spec.h_count;
    const double x = geometric_mean_stat(sums, h);
    return base + spec.alpha * (static_cast<double>(n) * h - 1.0) / (h * x);
}

double evaluate(const EstimatorSpec& spec, const SelectionOutcome& outcome,
                const PopulationSet& pop) {
    pop.validate();
    validate(spec, pop.n, pop.k);
    if (outcome.sums.size() != static_cast<std::size_t>(pop.k) ||
        outcome.selected >= outcome.sums.size()) {
        throw ValidationError("evaluate: outcome does not belong to this population set");
    }
    return evaluate_unchecked(spec, outcome.sums, outcome.selected, pop.n);
}

AdmissibleRange admissible_range(int n) {
    require_n(n, 2, "admissible_range");
    const double upper = (n - 1.0) / (2.0 * reg_inc_beta(0.5, n, n - 1.0));
    return {n - 1.0, upper};
}

CClassification classify_c(int n, double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("classify_c: c must be positive");
    const AdmissibleRange range = admissible_range(n);
    if (c < range.c_lower) return {Admissibility::InadmissibleLow, range.c_lower};
    if (c > range.c_upper) return {Admissibility::InadmissibleHigh, range.c_upper};
    return {Admissibility::Admissible, std::nullopt};
}

std::string to_string(Admissibility a) {
    switch (a) {
        case Admissibility::InadmissibleLow: return "inadmissible_low";
        case Admissibility::Admissible: return "admissible";
        case Admissibility::InadmissibleHigh: return "inadmissible_high";
    }
    return "unknown";
}

double alpha_upper_bound(int n, int h_count, double c) {
    if (h_count < 2) throw DomainError("alpha_upper_bound: h_count must be at least 2");
    if (!(c > 0.0) || c > n) throw DomainError("alpha_upper_bound: requires 0 < c <= n");
    return ((n - c) * h_count + 1.0) / (static_cast<double>(n) * h_count + 1.0);
}

}  // namespace expsel
