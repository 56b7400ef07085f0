#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "expsel/errors.hpp"
#include "expsel/numerics.hpp"

namespace {

using namespace expsel;

constexpr double kEulerGamma = 0.57721566490153286060651209;

// ln((m-1)!) by direct summation.
long double ln_factorial_minus_one(int m) {
    long double acc = 0.0L;
    for (int j = 2; j < m; ++j) acc += std::log(static_cast<long double>(j));
    return acc;
}

// Psi(m) = -gamma + H_{m-1}
double harmonic_digamma(int m) {
    long double h = 0.0L;
    for (int j = 1; j < m; ++j) h += 1.0L / j;
    return static_cast<double>(h - kEulerGamma);
}

// sum_{j=a}^{a+b-1} C(a+b-1, j) x^j (1-x)^(a+b-1-j) with Pascal-triangle coefficients.
double binomial_tail(double x, int a, int b) {
    const int m = a + b - 1;
    std::vector<long double> row{1.0L};
    for (int r = 1; r <= m; ++r) {
        std::vector<long double> next(r + 1, 1.0L);
        for (int j = 1; j < r; ++j) next[j] = row[j - 1] + row[j];
        row = std::move(next);
    }
    long double sum = 0.0L;
    for (int j = a; j <= m; ++j) {
        sum += row[j] * std::pow(static_cast<long double>(x), j) *
               std::pow(1.0L - x, m - j);
    }
    return static_cast<double>(sum);
}

// Composite Simpson on [lo, hi], independent of the library quadrature.
template <typename F>
double simpson(F f, double lo, double hi, int panels) {
    const double h = (hi - lo) / panels;
    double sum = f(lo) + f(hi);
    for (int i = 1; i < panels; ++i) sum += f(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

TEST(LnGamma, KnownValues) {
    EXPECT_NEAR(ln_gamma(1.0), 0.0, 1e-14);
    EXPECT_NEAR(ln_gamma(2.0), 0.0, 1e-14);
    EXPECT_NEAR(ln_gamma(5.0), std::log(24.0), 1e-13);
    EXPECT_NEAR(ln_gamma(5.0), 3.17805383, 1e-8);
    EXPECT_NEAR(ln_gamma(0.5), 0.572364942924700087, 1e-13);
    EXPECT_NEAR(ln_gamma(3.7), 1.42807232666538792, 1e-13);
}

TEST(LnGamma, HalfMatchesGammaIntegralByQuadrature) {
    // Gamma(1/2) = int_0^inf t^{-1/2} e^{-t} dt = 2 int_0^inf e^{-s^2} ds
    const double gamma_half = 2.0 * simpson([](double s) { return std::exp(-s * s); }, 0.0, 12.0, 4000);
    EXPECT_NEAR(ln_gamma(0.5), std::log(gamma_half), 1e-12);
    EXPECT_NEAR(gamma_half, std::sqrt(std::numbers::pi), 1e-12);
}

TEST(LnGamma, FactorialOracle) {
    for (int m = 1; m <= 170; ++m) {
        const double expected = static_cast<double>(ln_factorial_minus_one(m));
        EXPECT_NEAR(ln_gamma(m), expected, 1e-12 * std::max(1.0, std::fabs(expected))) << m;
    }
}

TEST(LnGamma, LargeArgumentRelativeAccuracy) {
    // At 1e6 the value is ~1.3e7, where one ulp is ~2e-9.
    EXPECT_NEAR(ln_gamma(1e6), 12815504.569147611659976971785, 1e-14 * 12815504.57);
}

TEST(LnGamma, AgreesWithStdLgamma) {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(std::log(0.5), std::log(1e6));
    for (int i = 0; i < 2000; ++i) {
        const double a = std::exp(u(gen));
        const double ref = std::lgamma(a);
        EXPECT_NEAR(ln_gamma(a), ref, 1e-12 * std::max(1.0, std::fabs(ref))) << a;
    }
}

TEST(LnGamma, RejectsNonPositive) {
    EXPECT_THROW(ln_gamma(0.0), DomainError);
    EXPECT_THROW(ln_gamma(-1.5), DomainError);
    EXPECT_THROW(ln_gamma(std::nan("")), DomainError);
}

TEST(Digamma, KnownValues) {
    EXPECT_NEAR(digamma(1.0), -0.5772156649, 1e-10);
    EXPECT_NEAR(digamma(2.0), 0.4227843351, 1e-10);
    EXPECT_NEAR(digamma(5.0), 1.5061176684, 1e-10);
    EXPECT_NEAR(digamma(0.1), -10.423754940411076795, 1e-11);
    EXPECT_NEAR(digamma(1.4616), -0.0000311062512303516, 1e-12);
    EXPECT_NEAR(digamma(37.5), 3.610948344596338412, 1e-12);
}

TEST(Digamma, HarmonicOracleAtIntegers) {
    for (int m = 1; m <= 200; ++m) {
        EXPECT_NEAR(digamma(m), harmonic_digamma(m), 1e-11) << m;
    }
}

TEST(Digamma, MatchesDerivativeOfLgamma) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.2, 80.0);
    for (int i = 0; i < 500; ++i) {
        const double a = u(gen);
        const double step = 1e-5;
        const double fd = (std::lgamma(a + step) - std::lgamma(a - step)) / (2 * step);
        EXPECT_NEAR(digamma(a), fd, 1e-8 * std::max(1.0, std::fabs(fd))) << a;
    }
}

TEST(Digamma, RecurrenceProperty) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.1, 100.0);
    for (int i = 0; i < 5000; ++i) {
        const double a = u(gen);
        EXPECT_NEAR(digamma(a + 1.0) - digamma(a) - 1.0 / a, 0.0, 1e-10) << a;
    }
}

TEST(Digamma, RejectsNonPositive) {
    EXPECT_THROW(digamma(0.0), DomainError);
    EXPECT_THROW(digamma(-2.0), DomainError);
}

TEST(BetaFn, Values) {
    EXPECT_NEAR(beta_fn(1, 1), 1.0, 1e-14);
    EXPECT_NEAR(beta_fn(2, 1), 0.5, 1e-14);
    EXPECT_NEAR(beta_fn(5, 4), 1.0 / 280.0, 1e-15);
    EXPECT_THROW(beta_fn(0, 1), DomainError);
    EXPECT_THROW(beta_fn(1, -1), DomainError);
}

TEST(RegIncBeta, SpecValues) {
    for (double a : {0.3, 1.0, 2.5, 7.0, 40.0}) {
        EXPECT_NEAR(reg_inc_beta(0.5, a, a), 0.5, 1e-12) << a;
    }
    EXPECT_NEAR(reg_inc_beta(0.5, 5, 4), 93.0 / 256.0, 1e-14);
    EXPECT_DOUBLE_EQ(reg_inc_beta(1.0, 3, 7), 1.0);
    EXPECT_DOUBLE_EQ(reg_inc_beta(0.0, 3, 7), 0.0);
}

TEST(RegIncBeta, NonIntegerReferenceValues) {
    EXPECT_NEAR(reg_inc_beta(0.3, 2.5, 7.25), 0.66048227358190724830, 1e-12);
    EXPECT_NEAR(reg_inc_beta(0.9, 50.5, 0.5), 0.00113742478360778112, 1e-12);
}

TEST(RegIncBeta, BothRoutesMatchBinomialOracle) {
    std::mt19937_64 gen(23);
    std::uniform_int_distribution<int> shape(1, 40);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const int a = shape(gen);
        const int b = shape(gen);
        const double x = u(gen);
        const double oracle = binomial_tail(x, a, b);
        EXPECT_NEAR(reg_inc_beta(x, a, b), oracle, 1e-10) << x << " " << a << " " << b;
        EXPECT_NEAR(detail::reg_inc_beta_continued_fraction(x, a, b), oracle, 1e-10)
            << x << " " << a << " " << b;
    }
}

TEST(RegIncBeta, ComplementProperty) {
    std::mt19937_64 gen(29);
    std::uniform_real_distribution<double> shape(0.2, 60.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double a = shape(gen);
        const double b = shape(gen);
        const double x = u(gen);
        EXPECT_NEAR(reg_inc_beta(x, a, b) + reg_inc_beta(1.0 - x, b, a) - 1.0, 0.0, 1e-10);
    }
}

TEST(RegIncBeta, MonotoneInX) {
    for (double a : {0.5, 2.0, 9.5}) {
        for (double b : {0.7, 3.0, 12.0}) {
            double prev = 0.0;
            for (int i = 0; i <= 200; ++i) {
                const double value = reg_inc_beta(i / 200.0, a, b);
                EXPECT_GE(value, prev - 1e-15);
                prev = value;
            }
        }
    }
}

TEST(RegIncBeta, DomainErrors) {
    EXPECT_THROW(reg_inc_beta(-0.1, 2, 2), DomainError);
    EXPECT_THROW(reg_inc_beta(1.1, 2, 2), DomainError);
    EXPECT_THROW(reg_inc_beta(0.5, 0, 2), DomainError);
    EXPECT_THROW(reg_inc_beta(0.5, 2, -3), DomainError);
}

TEST(GammaCdf, SpecValues) {
    EXPECT_DOUBLE_EQ(gamma_cdf(0.0, 2.0, 3), 0.0);
    EXPECT_DOUBLE_EQ(gamma_cdf(kInfinity, 2.0, 3), 1.0);
    EXPECT_NEAR(gamma_cdf(1e4, 1.0, 5), 1.0, 1e-15);
    EXPECT_NEAR(gamma_cdf(1.0, 1.0, 2), 1.0 - 2.0 * std::exp(-1.0), 1e-15);
    EXPECT_NEAR(gamma_cdf(1.0, 1.0, 2), 0.26424112, 1e-8);
    EXPECT_NEAR(gamma_cdf(25.0, 1.0, 20), 0.866425165914349594, 1e-13);
}

TEST(GammaCdf, MatchesQuadratureOfDensity) {
    for (int n : {1, 2, 5, 8, 20}) {
        for (double rate : {0.3, 1.0, 4.0}) {
            for (double y : {0.05, 0.5, 1.0, 3.0, 10.0, 40.0}) {
                const double integral =
                    adaptive_quad([&](double t) { return gamma_pdf(t, rate, n); }, 0.0, y);
                EXPECT_NEAR(gamma_cdf(y, rate, n), integral, 1e-8)
                    << n << " " << rate << " " << y;
            }
        }
    }
}

TEST(GammaCdf, IntegerShapeAgreesWithGeneralLowerGamma) {
    EXPECT_NEAR(reg_lower_gamma(3.5, 2.0), 0.220222591524284079, 1e-13);
    for (int n = 1; n <= 30; ++n) {
        for (double x : {0.01, 0.7, 3.0, 12.0, 35.0, 80.0}) {
            EXPECT_NEAR(gamma_cdf(x, 1.0, n), reg_lower_gamma(n, x), 1e-12) << n << " " << x;
        }
    }
}

TEST(GammaCdf, DomainErrors) {
    EXPECT_THROW(gamma_cdf(-1.0, 1.0, 2), DomainError);
    EXPECT_THROW(gamma_cdf(1.0, 0.0, 2), DomainError);
    EXPECT_THROW(gamma_cdf(1.0, 1.0, 0), DomainError);
}

TEST(AdaptiveQuad, SpecValues) {
    EXPECT_NEAR(adaptive_quad([](double) { return 1.0; }, 0.0, 1.0), 1.0, 1e-14);
    EXPECT_NEAR(adaptive_quad([](double t) { return std::exp(-t); }, 0.0, kInfinity), 1.0, 1e-10);
    EXPECT_NEAR(adaptive_quad([](double t) { return std::log(t) * std::exp(-t); }, 0.0, kInfinity),
                digamma(1.0), 1e-9);
}

TEST(AdaptiveQuad, PolynomialsExact) {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> c(7);
        for (double& v : c) v = coef(gen);
        double exact = 0.0;
        for (int p = 0; p <= 6; ++p) exact += c[p] / (p + 1);
        auto poly = [&](double t) {
            double acc = 0.0;
            for (int p = 6; p >= 0; --p) acc = acc * t + c[p];
            return acc;
        };
        EXPECT_NEAR(adaptive_quad(poly, 0.0, 1.0), exact, 1e-12);
    }
}

TEST(AdaptiveQuad, ShiftedHalfLine) {
    // int_2^inf e^{-t} dt = e^{-2}
    EXPECT_NEAR(adaptive_quad([](double t) { return std::exp(-t); }, 2.0, kInfinity),
                std::exp(-2.0), 1e-11);
}

TEST(AdaptiveQuad, EmptyInterval) {
    EXPECT_EQ(adaptive_quad([](double) { return 5.0; }, 1.0, 1.0), 0.0);
}

TEST(AdaptiveQuad, NonConvergenceReported) {
    QuadratureSpec tight{1e-15, 1e-15, 3};
    try {
        adaptive_quad([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, tight);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_GT(e.error_estimate(), 1e-15);
        EXPECT_NEAR(e.estimate(), 2.0, 0.1);
    }
}

TEST(AdaptiveQuad, InvalidInputs) {
    auto one = [](double) { return 1.0; };
    EXPECT_THROW(adaptive_quad(one, 1.0, 0.0), DomainError);
    EXPECT_THROW(adaptive_quad(one, -kInfinity, 0.0), DomainError);
    EXPECT_THROW(adaptive_quad(one, 0.0, 1.0, QuadratureSpec{0.0, 1e-8, 10}), DomainError);
    EXPECT_THROW(adaptive_quad(one, 0.0, 1.0, QuadratureSpec{1e-8, 1e-8, 0}), DomainError);
    EXPECT_THROW(adaptive_quad([](double) { return std::nan(""); }, 0.0, 1.0), DomainError);
}

}  // namespace
