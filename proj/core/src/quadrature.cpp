#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "expsel/errors.hpp"
#include "expsel/numerics.hpp"

namespace expsel {

namespace {

// QUADPACK qk15 abscissae and weights. Gauss nodes are the odd entries.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename F>
Segment kronrod15(const F& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    const double f_center = f(center);
    double result_gauss = f_center * kWg[3];
    double result_kronrod = f_center * kWgk[7];
    double result_abs = std::fabs(result_kronrod);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};

    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double v1 = f(center - dx);
        const double v2 = f(center + dx);
        f1[j] = v1;
        f2[j] = v2;
        result_kronrod += kWgk[j] * (v1 + v2);
        result_abs += kWgk[j] * (std::fabs(v1) + std::fabs(v2));
        if (j % 2 == 1) {
            result_gauss += kWg[j / 2] * (v1 + v2);
        }
    }

    const double mean = 0.5 * result_kronrod;
    double result_asc = kWgk[7] * std::fabs(f_center - mean);
    for (int j = 0; j < 7; ++j) {
        result_asc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
    }

    const double scale = std::fabs(half);
    result_kronrod *= half;
    result_abs *= scale;
    result_asc *= scale;
    double error = std::fabs((result_kronrod - result_gauss * half));
    if (result_asc != 0.0 && error != 0.0) {
        error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
    }
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    if (result_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
        error = std::max(50.0 * kEps * result_abs, error);
    }
    return {lo, hi, result_kronrod, error};
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0)) throw DomainError("QuadratureSpec: abs_tol must be positive");
    if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be positive");
    if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
}

QuadratureResult adaptive_quad_detailed(const std::function<double(double)>& f, double lo,
                                        double hi, const QuadratureSpec& spec) {
    spec.validate();
    if (!std::isfinite(lo)) {
        throw DomainError("adaptive_quad: lower limit must be finite");
    }
    if (std::isnan(hi) || hi < lo) {
        throw DomainError("adaptive_quad: upper limit must be >= lower limit");
    }
    if (hi == lo) return {};

    const bool half_line = std::isinf(hi);
    auto integrand = [&](double x) {
        double value;
        double t = x;
        if (half_line) {
            const double one_minus = 1.0 - x;
            t = lo + x / one_minus;
            value = f(t) / (one_minus * one_minus);
        } else {
            value = f(x);
        }
        if (!std::isfinite(value)) {
            throw DomainError("adaptive_quad: integrand is not finite at t = " + std::to_string(t));
        }
        return value;
    };
    const double a = half_line ? 0.0 : lo;
    const double b = half_line ? 1.0 : hi;

    // Max-heap on error estimate.
    std::vector<Segment> heap;
    heap.reserve(2 * static_cast<std::size_t>(spec.max_subdivisions) + 1);
    heap.push_back(kronrod15(integrand, a, b));
    int subdivisions = 0;

    for (;;) {
        double value = 0.0;
        double error = 0.0;
        for (const Segment& s : heap) {
            value += s.value;
            error += s.error;
        }
        if (error <= std::max(spec.abs_tol, spec.rel_tol * std::fabs(value))) {
            return {value, error, subdivisions};
        }
        const Segment worst = heap.front();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const bool too_narrow = !(mid > worst.lo && mid < worst.hi);
        if (subdivisions >= spec.max_subdivisions || too_narrow) {
            throw ConvergenceError("adaptive_quad: tolerance not reached after " +
                                       std::to_string(subdivisions) + " subdivisions",
                                   value, error);
        }
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = kronrod15(integrand, worst.lo, mid);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(kronrod15(integrand, mid, worst.hi));
        std::push_heap(heap.begin(), heap.end());
        ++subdivisions;
    }
}

}  // namespace expsel
