#include <cmath>
#include <string>

#include "expsel/errors.hpp"
#include "expsel/numerics.hpp"
#include "expsel/risk.hpp"

namespace expsel {

double entropy_loss(double d, double sigma_selected) {
    if (!(d > 0.0) || !(sigma_selected > 0.0)) {
        throw DomainError("entropy_loss: estimate and rate must be positive");
    }
    const double ratio = d / sigma_selected;
    return ratio - std::log(ratio) - 1.0;
}

double h_of_q(double q, int n) {
    if (!(q >= 1.0)) throw DomainError("h_of_q: q must be >= 1");
    if (n < 2) throw DomainError("h_of_q: n must be at least 2");
    // With I_x(a, b) = P(Bin(a + b - 1, x) >= a) the two incomplete beta terms
    // I_{q/(1+q)}(n, n-1) + I_{1/(1+q)}(n, n-1) collapse to
    // 1 - C(2n-2, n-1) x^{n-1}, x = q / (1+q)^2. Summing the beta terms directly
    // loses monotonicity to rounding once h is within an ulp of 1/(n-1).
    const double b = n - 1.0;
    if (std::isinf(q)) return 1.0 / b;
    const double x = q / ((1.0 + q) * (1.0 + q));
    double mass = 1.0;
    for (int j = 1; j <= n - 1; ++j) mass *= (n - 1.0 + j) / j * x;
    return (1.0 - mass) / b;
}

double expected_log_selected_k2(const std::array<double, 2>& rates, int n,
                                const QuadratureSpec& quad) {
    if (n < 2) throw DomainError("expected_log_selected_k2: n must be at least 2");
    for (double r : rates) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw DomainError("expected_log_selected_k2: rates must be positive");
        }
    }
    // In t = sigma_i y: E[ln(sigma_J Y_J); J = i] = int ln t g(t; 1, n) F(t sigma_o / sigma_i; 1, n) dt
    double total = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double ratio = rates[1 - i] / rates[i];
        auto integrand = [n, ratio](double t) {
            if (t <= 0.0) return 0.0;
            const double density = gamma_pdf(t, 1.0, n);
            if (density == 0.0) return 0.0;
            return std::log(t) * density * gamma_cdf(t * ratio, 1.0, n);
        };
        total += adaptive_quad(integrand, 0.0, kInfinity, quad);
    }
    return total;
}

double exact_risk_scaleinv_k2(double c, const std::array<double, 2>& rates, int n,
                              const QuadratureSpec& quad) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw DomainError("exact_risk_scaleinv_k2: c must be positive");
    }
    const double q = std::max(rates[0], rates[1]) / std::min(rates[0], rates[1]);
    const double e_log = expected_log_selected_k2(rates, n, quad);
    return c * h_of_q(q, n) - std::log(c) + e_log - 1.0;
}

double gb_component_risk(int n) {
    if (n < 2) throw DomainError("gb_component_risk: n must be at least 2");
    return digamma(n) - std::log(n - 1.0);
}

double bayes_risk(int n, const BayesPrior& prior) {
    if (!(prior.shape > 0.0) || !(prior.rate > 0.0)) {
        throw DomainError("bayes_risk: prior shape and rate must be positive");
    }
    if (n < 1) throw DomainError("bayes_risk: n must be positive");
    const double total = n + prior.shape;
    if (!(total > 1.0)) throw DomainError("bayes_risk: requires n + shape > 1");
    return digamma(total) - std::log(total - 1.0);
}

double sup_risk_scaleinv(double c, int n) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("sup_risk_scaleinv: c must be positive");
    if (n < 2) throw DomainError("sup_risk_scaleinv: n must be at least 2");
    return c / (n - 1.0) - std::log(c) + digamma(n) - 1.0;
}

}  // namespace expsel
