#include "levypen/special.hpp"

#include <stdexcept>

#include "levypen/quadrature.hpp"

namespace levypen {

namespace {

// Lanczos g = 7, n = 9 (Godfrey's coefficients).
const double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

const double kPi = 3.14159265358979323846;
const double kLn_sqrt_2pi = 0.91893853320467274178;

}  // namespace

double lanczos_lgamma(double x) {
    if (!(x > 0.0)) {
        if (x <= 0.0 && x == static_cast<long long>(x))
            throw std::domain_error("lgamma: nonpositive integer argument");
    }
    if (x < 0.5) {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        return std::log(kPi / std::abs(std::sin(kPi * x))) -
               lanczos_lgamma(1.0 - x);
    }
    const double z = x - 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return kLn_sqrt_2pi + (z + 0.5) * std::log(t) - t + std::log(acc);
}

double gamma_fn(double x) {
    if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
    return std::exp(lanczos_lgamma(x));
}

double inv_tangent_integral(double x) {
    if (x < 0.0) return -inv_tangent_integral(-x);
    if (x == 0.0) return 0.0;
    if (x > 1.0) {
        // Ti2(x) = (pi/2) ln x + Ti2(1/x).
        return 0.5 * kPi * std::log(x) + inv_tangent_integral(1.0 / x);
    }
    if (x <= 0.6) {
        // sum (-1)^k x^{2k+1} / (2k+1)^2; terms shrink by at least 0.36.
        double term = x, acc = x;
        const double x2 = x * x;
        for (int k = 1; k < 60; ++k) {
            term *= -x2;
            const double add = term / ((2 * k + 1) * (2 * k + 1));
            acc += add;
            if (std::abs(add) < 1e-17 * std::abs(acc)) break;
        }
        return acc;
    }
    const auto q = integrate_gk(
        [](double u) { return u == 0.0 ? 1.0 : std::atan(u) / u; }, 0.0, x,
        1e-15, 1e-14);
    return q.value;
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] in long double (Newton on P_n).
struct GaussLegendreLd {
    std::vector<long double> node, weight;
    explicit GaussLegendreLd(int n) : node(n), weight(n) {
        const long double pi = 3.14159265358979323846264338L;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
            long double pp = 0.0L;
            for (int it = 0; it < 100; ++it) {
                long double p0 = 1.0L, p1 = 0.0L;
                for (int j = 0; j < n; ++j) {
                    const long double p2 = p1;
                    p1 = p0;
                    p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
                }
                pp = n * (x * p0 - p1) / (x * x - 1.0L);
                const long double dx = p0 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-21L) break;
            }
            node[i] = -x;
            node[n - 1 - i] = x;
            weight[i] = weight[n - 1 - i] = 2.0L / ((1.0L - x * x) * pp * pp);
        }
    }
};

long double ti2_series_ld(long double x) {
    long double term = x, acc = x;
    const long double x2 = x * x;
    for (int k = 1; k < 80; ++k) {
        term *= -x2;
        const long double add = term / ((2 * k + 1) * (2 * k + 1));
        acc += add;
        if (std::abs(add) < 1e-22L * std::abs(acc)) break;
    }
    return acc;
}

}  // namespace

long double inv_tangent_integral_ld(long double x) {
    static const long double pi_half = 1.57079632679489661923132169L;
    if (x < 0.0L) return -inv_tangent_integral_ld(-x);
    if (x == 0.0L) return 0.0L;
    if (x > 2.0L) return pi_half * std::log(x) + inv_tangent_integral_ld(1.0L / x);
    if (x <= 0.5L) return ti2_series_ld(x);
    // Analytic integrand on [0.5, 2]: fixed Gauss-Legendre tail from 0.5.
    static const GaussLegendreLd gl(32);
    static const long double ti2_half = ti2_series_ld(0.5L);
    const long double mid = 0.5L * (0.5L + x), half = 0.5L * (x - 0.5L);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < gl.node.size(); ++i) {
        const long double u = mid + half * gl.node[i];
        acc += gl.weight[i] * std::atan(u) / u;
    }
    return ti2_half + half * acc;
}

}  // namespace levypen
