#include <doctest.h>

#include <cmath>
#include <vector>

#include "levypen/mc_stats.hpp"
#include "levypen/rng.hpp"

using namespace levypen;

TEST_SUITE_BEGIN("rng");

TEST_CASE("streams are deterministic and keyed by (seed, replica, purpose)") {
    Rng a(42, 7, StreamPurpose::increments);
    Rng b(42, 7, StreamPurpose::increments);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng c(42, 7, StreamPurpose::bridge);
    Rng d(42, 8, StreamPurpose::increments);
    Rng e(43, 7, StreamPurpose::increments);
    Rng base(42, 7, StreamPurpose::increments);
    bool all_same_c = true, all_same_d = true, all_same_e = true;
    for (int i = 0; i < 16; ++i) {
        const auto v = base.next_u64();
        all_same_c &= (c.next_u64() == v);
        all_same_d &= (d.next_u64() == v);
        all_same_e &= (e.next_u64() == v);
    }
    CHECK_FALSE(all_same_c);
    CHECK_FALSE(all_same_d);
    CHECK_FALSE(all_same_e);
}

TEST_CASE("uniform01 lies in (0, 1] and passes a coarse KS check") {
    Rng r(123, 0, StreamPurpose::scratch);
    const int n = 100000;
    std::vector<double> u(n);
    for (auto& v : u) {
        v = r.uniform01();
        REQUIRE(v > 0.0);
        REQUIRE(v <= 1.0);
    }
    const auto e = WeightedEcdf::from(u);
    const double ks =
        ks_distance_exact(e, [](double x) { return std::min(std::max(x, 0.0), 1.0); });
    CHECK(ks < 0.0043);  // 1.358/sqrt(n) asymptotic 95% critical value
}

TEST_CASE("normal and exponential moments") {
    Rng r(7, 0, StreamPurpose::scratch);
    StreamingMoments mn, me;
    const int n = 200000;
    for (int i = 0; i < n; ++i) mn.add(r.normal());
    for (int i = 0; i < n; ++i) me.add(r.exponential());
    CHECK(std::abs(mn.mean) < 3.0 * mn.std_err());
    CHECK(mn.variance() == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(me.mean - 1.0) < 3.0 * me.std_err());
}

TEST_SUITE_END();
