#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "levypen/quadrature.hpp"

using namespace levypen;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("gk adaptive on smooth integrands") {
    const auto r1 = integrate_gk([](double x) { return std::sin(x); }, 0.0,
                                 3.14159265358979323846);
    CHECK(r1.value == doctest::Approx(2.0).epsilon(1e-12));
    const auto r2 =
        integrate_gk([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
    CHECK(r2.value == doctest::Approx(1.7724538509055160273).epsilon(1e-12));
}

TEST_CASE("tanh-sinh eats endpoint singularities") {
    // int_0^1 1/sqrt(x) dx = 2
    const auto r1 = integrate_tanh_sinh(
        [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(r1.value == doctest::Approx(2.0).epsilon(1e-11));
    // int_0^1 ln x dx = -1
    const auto r2 =
        integrate_tanh_sinh([](double x) { return std::log(x); }, 0.0, 1.0);
    CHECK(r2.value == doctest::Approx(-1.0).epsilon(1e-11));
    // int_0^1 x^{-0.8} dx = 5 (close to the integrability boundary)
    const auto r3 = integrate_tanh_sinh(
        [](double x) { return std::pow(x, -0.8); }, 0.0, 1.0);
    CHECK(r3.value == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("semi-infinite integration reports its truncation point") {
    const auto r = integrate_upper(
        [](double x) { return std::exp(-2.0 * x); }, 0.0, 1e-13, 0.5);
    CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.truncated_at > 5.0);  // e^{-2x} tail below 1e-13 of the total
    const auto r2 = integrate_upper(
        [](double x) { return x * std::exp(-x); }, 0.0, 1e-13, 1.0);
    CHECK(r2.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gamma-type integral: tanh-sinh head plus geometric tail") {
    // int_0^inf x^{-1/2} e^{-x} dx = sqrt(pi)
    const auto head = integrate_tanh_sinh(
        [](double x) { return std::exp(-x) / std::sqrt(x); }, 0.0, 4.0);
    const auto tail = integrate_upper(
        [](double x) { return std::exp(-x) / std::sqrt(x); }, 4.0, 1e-13, 4.0);
    CHECK(head.value + tail.value ==
          doctest::Approx(1.7724538509055160273).epsilon(1e-10));
}

TEST_SUITE_END();
