#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <vector>

#include "levypen/errors.hpp"
#include "levypen/mc_stats.hpp"
#include "levypen/rng.hpp"

using namespace levypen;

TEST_SUITE_BEGIN("mc_stats");

TEST_CASE("streaming moments: merge agrees with one-pass accumulation") {
    Rng r(17, 0, StreamPurpose::scratch);
    std::vector<double> xs(5000);
    for (auto& x : xs) x = r.normal() * 3.0 + 1.0;

    StreamingMoments whole;
    for (double x : xs) whole.add(x);

    for (std::size_t cut : {std::size_t(1), std::size_t(137), std::size_t(2500),
                            std::size_t(4999)}) {
        StreamingMoments a, b;
        for (std::size_t i = 0; i < cut; ++i) a.add(xs[i]);
        for (std::size_t i = cut; i < xs.size(); ++i) b.add(xs[i]);
        StreamingMoments ab = a;
        ab.merge(b);
        CHECK(ab.n == whole.n);
        CHECK(ab.mean == doctest::Approx(whole.mean).epsilon(1e-12));
        CHECK(ab.m2 == doctest::Approx(whole.m2).epsilon(1e-12));
        // Opposite merge order.
        StreamingMoments ba = b;
        ba.merge(a);
        CHECK(ba.mean == doctest::Approx(ab.mean).epsilon(1e-12));
        CHECK(ba.m2 == doctest::Approx(ab.m2).epsilon(1e-12));
    }
    CHECK(whole.variance() >= 0.0);
}

TEST_CASE("paired moments: covariance and merge") {
    Rng r(18, 0, StreamPurpose::scratch);
    PairedMoments whole, a, b;
    for (int i = 0; i < 4000; ++i) {
        const double d = 1.0 + 0.2 * r.normal();
        const double n = 2.0 * d + 0.1 * r.normal();
        whole.add(n, d);
        (i < 1700 ? a : b).add(n, d);
    }
    PairedMoments ab = a;
    ab.merge(b);
    CHECK(ab.mean_n == doctest::Approx(whole.mean_n).epsilon(1e-12));
    CHECK(ab.m2_nd == doctest::Approx(whole.m2_nd).epsilon(1e-12));
    CHECK(whole.cov() > 0.0);
}

TEST_CASE("delta ratio: degenerate cases") {
    PairedMoments same;
    for (int i = 0; i < 100; ++i) {
        const double v = 0.5 + 0.01 * i;
        same.add(v, v);
    }
    const RatioEstimate r = delta_ratio_ci(same);
    CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.std_err == doctest::Approx(0.0));

    // Denominator constant: reduces to a plain mean CI over num/c.
    PairedMoments konst;
    StreamingMoments plain;
    Rng rr(19, 0, StreamPurpose::scratch);
    for (int i = 0; i < 2000; ++i) {
        const double n = 1.0 + rr.normal();
        konst.add(n, 2.0);
        plain.add(n / 2.0);
    }
    const RatioEstimate rc = delta_ratio_ci(konst);
    CHECK(rc.ratio == doctest::Approx(plain.mean).epsilon(1e-12));
    CHECK(rc.std_err == doctest::Approx(plain.std_err()).epsilon(1e-9));

    PairedMoments neg;
    neg.add(1.0, -1.0);
    neg.add(1.0, -0.5);
    CHECK_THROWS_AS(delta_ratio_ci(neg), degenerate_experiment);
}

TEST_CASE("delta ratio: coverage on synthetic correlated pairs") {
    // True ratio E[N]/E[D] = 2 with strong positive correlation.
    int covered = 0;
    for (int rep = 0; rep < 100; ++rep) {
        Rng r(1000 + rep, 0, StreamPurpose::scratch);
        PairedMoments pm;
        for (int i = 0; i < 2000; ++i) {
            const double d = 1.0 + 0.3 * r.normal();
            const double n = 2.0 * d + 0.5 * r.normal();
            pm.add(n, d);
        }
        const RatioEstimate est = delta_ratio_ci(pm);
        if (std::abs(est.ratio - 2.0) <= 1.96 * est.std_err) ++covered;
    }
    CHECK(covered >= 93);
}

TEST_CASE("bootstrap ratio agrees with the delta method") {
    Rng r(20, 0, StreamPurpose::scratch);
    PairedMoments pm;
    std::vector<double> num, den;
    for (int i = 0; i < 3000; ++i) {
        const double d = 1.0 + 0.3 * r.normal();
        const double n = 2.0 * d + 0.5 * r.normal();
        pm.add(n, d);
        num.push_back(n);
        den.push_back(d);
    }
    const RatioEstimate delta = delta_ratio_ci(pm);
    const RatioEstimate boot = bootstrap_ratio_ci(num, den, 400, 99);
    CHECK(boot.ratio == doctest::Approx(delta.ratio).epsilon(1e-12));
    CHECK(boot.std_err == doctest::Approx(delta.std_err).epsilon(0.2));
    // Deterministic for a fixed seed.
    const RatioEstimate boot2 = bootstrap_ratio_ci(num, den, 400, 99);
    CHECK(boot.std_err == boot2.std_err);
    CHECK_THROWS_AS(bootstrap_ratio_ci({1.0}, {1.0}, 100, 1), std::domain_error);
}

TEST_CASE("weighted ecdf and ks distance") {
    const auto a = WeightedEcdf::from({1.0, 2.0, 3.0});
    CHECK(a.cdf(0.5) == 0.0);
    CHECK(a.cdf(1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(a.cdf(2.5) == doctest::Approx(2.0 / 3.0));
    CHECK(a.cdf(9.0) == 1.0);

    CHECK(ks_distance(a, a) == 0.0);
    const auto zero = WeightedEcdf::from({0.0});
    const auto one = WeightedEcdf::from({1.0});
    CHECK(ks_distance(zero, one) == doctest::Approx(1.0));

    // Weight rescaling leaves every statistic unchanged.
    const auto w1 = WeightedEcdf::from({1.0, 2.0, 3.0}, {1.0, 2.0, 1.0});
    const auto w2 = WeightedEcdf::from({1.0, 2.0, 3.0}, {10.0, 20.0, 10.0});
    CHECK(ks_distance(w1, w2) == doctest::Approx(0.0));
    CHECK(w1.cdf(2.0) == doctest::Approx(0.75));

    CHECK_THROWS_AS(WeightedEcdf::from({}), std::domain_error);
    CHECK_THROWS_AS(WeightedEcdf::from({1.0}, {-1.0}), std::domain_error);
    CHECK_THROWS_AS(WeightedEcdf::from({1.0, 2.0}, {0.0, 0.0}),
                    std::domain_error);
}

TEST_CASE("ks symmetry and triangle inequality on random samples") {
    Rng r(23, 0, StreamPurpose::scratch);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> xs(50), ys(70), zs(30);
        for (auto& v : xs) v = r.normal();
        for (auto& v : ys) v = r.normal() + 0.3;
        for (auto& v : zs) v = 1.5 * r.normal();
        const auto a = WeightedEcdf::from(xs);
        const auto b = WeightedEcdf::from(ys);
        const auto c = WeightedEcdf::from(zs);
        const double ab = ks_distance(a, b);
        CHECK(ab == doctest::Approx(ks_distance(b, a)).epsilon(1e-14));
        CHECK(ab <= ks_distance(a, c) + ks_distance(c, b) + 1e-14);
    }
}

TEST_CASE("one-sample ks against the exact uniform CDF") {
    Rng r(29, 0, StreamPurpose::scratch);
    std::vector<double> u(100000);
    for (auto& v : u) v = r.uniform01();
    const double ks = ks_distance_exact(
        WeightedEcdf::from(u),
        [](double x) { return std::min(std::max(x, 0.0), 1.0); });
    CHECK(ks <= 0.0043);  // asymptotic 95% critical value 1.358/sqrt(n)
}

TEST_CASE("l1 distance: identical, disjoint, shifted-uniform oracle") {
    Rng r(31, 0, StreamPurpose::scratch);
    std::vector<double> u(20000), v(20000);
    for (auto& x : u) x = r.uniform01();
    for (auto& x : v) x = r.uniform01() + 0.5;
    const auto a = WeightedEcdf::from(u);
    const auto b = WeightedEcdf::from(v);
    CHECK(l1_distance(a, a, 50) == 0.0);
    // Disjoint supports.
    const auto lo = WeightedEcdf::from({0.0, 0.1, 0.2});
    const auto hi = WeightedEcdf::from({5.0, 5.1});
    CHECK(l1_distance(lo, hi, 10) == doctest::Approx(2.0));
    // Uniform vs uniform shifted by 1/2 overlaps in half its mass.
    CHECK(l1_distance(a, b, 60) == doctest::Approx(1.0).epsilon(0.05));
    CHECK_THROWS_AS(l1_distance(a, b, 5), std::domain_error);
}

TEST_SUITE_END();
