#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "levypen/special.hpp"

using namespace levypen;

TEST_SUITE_BEGIN("special");

TEST_CASE("lanczos gamma hits reference values to 1e-12 relative") {
    // Reference values from the standard tables.
    const double sqrt_pi = 1.7724538509055160273;
    CHECK(gamma_fn(0.5) == doctest::Approx(sqrt_pi).epsilon(1e-13));
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gamma_fn(1.5) == doctest::Approx(0.5 * sqrt_pi).epsilon(1e-13));
    CHECK(gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    CHECK(gamma_fn(10.5) ==
          doctest::Approx(1133278.3889487893).epsilon(1e-12));
    CHECK(gamma_fn(0.1) == doctest::Approx(9.5135076986687318).epsilon(1e-12));
    // Contract check against the libm implementation on a sweep.
    for (double x = 0.05; x < 20.0; x += 0.173) {
        CHECK(lanczos_lgamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-12));
    }
}

TEST_CASE("normal cdf basics") {
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(norm_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
    CHECK(norm_sf(3.0) == doctest::Approx(1.0 - norm_cdf(3.0)).epsilon(1e-12));
    CHECK(half_normal_cdf(0.125) ==
          doctest::Approx(2.0 * norm_cdf(0.125) - 1.0).epsilon(1e-13));
}

TEST_CASE("inverse tangent integral: series, quadrature and reflection agree") {
    // Ti2(1) is Catalan's constant.
    CHECK(inv_tangent_integral(1.0) ==
          doctest::Approx(0.9159655941772190151).epsilon(1e-13));
    // Reflection formula Ti2(x) - Ti2(1/x) = (pi/2) ln x.
    for (double x : {1.5, 2.0, 7.0, 40.0}) {
        const double lhs =
            inv_tangent_integral(x) - inv_tangent_integral(1.0 / x);
        CHECK(lhs == doctest::Approx(0.5 * 3.14159265358979323846 * std::log(x))
                         .epsilon(1e-13));
    }
    // Double and long double evaluations agree across the branch points.
    for (double x : {0.3, 0.59, 0.61, 0.9, 1.0, 1.7, 5.0}) {
        CHECK(inv_tangent_integral(x) ==
              doctest::Approx(static_cast<double>(
                                  inv_tangent_integral_ld(x)))
                  .epsilon(1e-12));
    }
    CHECK(inv_tangent_integral(0.0) == 0.0);
}

TEST_SUITE_END();
