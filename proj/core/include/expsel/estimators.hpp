#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "expsel/model.hpp"

namespace expsel {

enum class EstimatorKind { ScaleInverse, Improved };

/// Estimator of the selected hazard rate sigma_J.
///
/// ScaleInverse: c / Y_J.
/// Improved:     c / Y_J + alpha (n h - 1) / (h X), X the geometric mean of the
///               h largest sums. This is c / Y_J + n [w(X) + X w'(X) / (n h)]
///               with w(t) = alpha / t.
struct EstimatorSpec {
    EstimatorKind kind = EstimatorKind::ScaleInverse;
    double c = 1.0;
    double alpha = 0.0;  // Improved only
    int h_count = 0;     // Improved only
    std::string name;

    static EstimatorSpec scale_inverse(double c, std::string name = {});
    static EstimatorSpec improved(double c, double alpha, int h_count, std::string name = {});

    /// delta_ML = n / Y_J
    static EstimatorSpec ml(int n);
    /// delta_N1 = (n - 2) / Y_J, requires n >= 3
    static EstimatorSpec n1(int n);
    /// delta_N2 = (n - 1) / Y_J
    static EstimatorSpec n2(int n);
    /// Improved delta_N2. alpha and h default to the dominance bound and h = k.
    static EstimatorSpec n2_improved(int n, int k, std::optional<double> alpha = {},
                                     std::optional<int> h_count = {});
    /// Improved delta_ML, same defaults.
    static EstimatorSpec ml_improved(int n, int k, std::optional<double> alpha = {},
                                     std::optional<int> h_count = {});

    /// Human-readable description, e.g. "c/Y_J (c=4)".
    std::string describe() const;
};

/// Throws ValidationError if `spec` cannot be used with (n, k).
void validate(const EstimatorSpec& spec, int n, int k);

/// Evaluates the estimator on an outcome drawn from `pop`. Validates first.
double evaluate(const EstimatorSpec& spec, const SelectionOutcome& outcome,
                const PopulationSet& pop);

/// Unchecked evaluation for the simulation loop. `selected` indexes the max of `sums`.
double evaluate_unchecked(const EstimatorSpec& spec, std::span<const double> sums,
                          std::size_t selected, int n);

/// [c_lower, c_upper] = [c_*, c^*], the admissible constants within {c / Y_J} for k = 2.
struct AdmissibleRange {
    double c_lower = 0.0;
    double c_upper = 0.0;
};

/// c_* = n - 1 and c^* = (n - 1) / (2 I_{1/2}(n, n - 1)).
AdmissibleRange admissible_range(int n);

enum class Admissibility { InadmissibleLow, Admissible, InadmissibleHigh };

struct CClassification {
    Admissibility verdict = Admissibility::Admissible;
    /// Clamped constant whose estimator dominates c / Y_J; empty when admissible.
    std::optional<double> dominating_c;
};

CClassification classify_c(int n, double c);

std::string to_string(Admissibility a);

/// Largest alpha allowed for w(t) = alpha / t: ((n - c) h + 1) / (n h + 1), 0 < c <= n.
double alpha_upper_bound(int n, int h_count, double c);

enum class ImprovedCondition {
    NotImproved,
    CNotPositive,
    CExceedsN,
    HCountOutOfRange,
    AlphaNotPositive,
    AlphaAboveBound,
};

struct Violation {
    ImprovedCondition condition;
    /// The limit that was crossed (n for CExceedsN, the alpha bound, k for h, ...).
    double bound = 0.0;
    std::string message;
};

struct ImprovedValidation {
    std::optional<Violation> violation;

    bool ok() const noexcept { return !violation.has_value(); }
};

/// Checks the dominance conditions on an Improved spec. w(t) = alpha / t is
/// nonincreasing by construction, so only c, h and the alpha bound are checked.
ImprovedValidation validate_improved(const EstimatorSpec& spec, int n, int k);

}  // namespace expsel
