#pragma once

// Special functions and adaptive quadrature used by the closed-form risk
// formulas. Double precision throughout; every function is pure.

#include <functional>
#include <limits>

namespace expsel {

/// ln Gamma(a) for a > 0.
double ln_gamma(double a);

/// Psi(a) = d/da ln Gamma(a) for a > 0.
double digamma(double a);

/// Complete beta function B(a, b).
double beta_fn(double a, double b);

/// Regularized incomplete beta I_x(a, b).
///
/// Integer (a, b) with a + b - 1 <= 200 go through the binomial-tail sum;
/// everything else uses the Lentz continued fraction.
double reg_inc_beta(double x, double a, double b);

/// Regularized lower incomplete gamma P(a, x), general real a > 0.
double reg_lower_gamma(double a, double x);

/// P(Y <= y) for Y ~ Gamma(rate, shape) with integer shape (Erlang CDF).
double gamma_cdf(double y, double rate, int shape);

/// Density of Gamma(rate, shape): rate^shape y^(shape-1) e^(-rate y) / Gamma(shape).
double gamma_pdf(double y, double rate, int shape);

namespace detail {
// Exposed for cross-checking the two evaluation routes against each other.
double reg_inc_beta_continued_fraction(double x, double a, double b);
double reg_inc_beta_binomial(double x, int a, int b);
}  // namespace detail

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 200;

    void validate() const;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over (lo, hi).
/// hi may be kInfinity; the half-line is mapped onto (0, 1) with
/// t = lo + u / (1 - u). Throws ConvergenceError when the subdivision budget
/// runs out before the error estimate drops below
/// max(abs_tol, rel_tol * |value|).
QuadratureResult adaptive_quad_detailed(const std::function<double(double)>& f, double lo,
                                        double hi, const QuadratureSpec& spec = {});

inline double adaptive_quad(const std::function<double(double)>& f, double lo, double hi,
                            const QuadratureSpec& spec = {}) {
    return adaptive_quad_detailed(f, lo, hi, spec).value;
}

}  // namespace expsel
