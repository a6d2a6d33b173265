#include "levypen/gaver_stehfest.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace levypen {

namespace {

long double factorial(int n) {
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<long double> build_coefficients(int n) {
    const int m = n / 2;
    std::vector<long double> v(n + 1, 0.0L);
    for (int k = 1; k <= n; ++k) {
        long double acc = 0.0L;
        const int j_lo = (k + 1) / 2;
        const int j_hi = std::min(k, m);
        for (int j = j_lo; j <= j_hi; ++j) {
            long double term = std::pow(static_cast<long double>(j), m) *
                               factorial(2 * j);
            term /= factorial(m - j) * factorial(j) * factorial(j - 1) *
                    factorial(k - j) * factorial(2 * j - k);
            acc += term;
        }
        v[k] = ((k + m) % 2 == 0 ? acc : -acc);
    }
    return v;
}

}  // namespace

const std::vector<long double>& stehfest_coefficients(int n) {
    if (n < 2 || n % 2 != 0 || n > 24)
        throw std::invalid_argument("stehfest_coefficients: n must be even, 2..24");
    // Bundle evaluators run concurrently; guard the shared cache. References
    // stay valid because map nodes never move.
    static std::mutex mu;
    static std::map<int, std::vector<long double>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_coefficients(n)).first;
    return it->second;
}

double gs_invert(const std::function<long double(long double)>& transform,
                 double x, int n) {
    if (!(x > 0.0)) throw std::domain_error("gs_invert: x must be positive");
    const auto& c = stehfest_coefficients(n);
    const long double ln2_over_x = 0.6931471805599453094L / x;
    long double acc = 0.0L;
    for (int k = 1; k <= n; ++k) acc += c[k] * transform(k * ln2_over_x);
    return static_cast<double>(ln2_over_x * acc);
}

}  // namespace levypen
