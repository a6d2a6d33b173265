#include "levypen/mc_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "levypen/errors.hpp"
#include "levypen/rng.hpp"

namespace levypen {

void StreamingMoments::add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
}

void StreamingMoments::merge(const StreamingMoments& o) {
    if (o.n == 0) return;
    if (n == 0) { *this = o; return; }
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    const double d = o.mean - mean;
    const double nt = na + nb;
    mean += d * nb / nt;
    m2 += o.m2 + d * d * na * nb / nt;
    n += o.n;
}

double StreamingMoments::variance() const {
    detail::require(n >= 2, "variance: need n >= 2");
    return m2 / static_cast<double>(n - 1);
}

double StreamingMoments::std_err() const {
    return std::sqrt(variance() / static_cast<double>(n));
}

void PairedMoments::add(double num, double den) {
    ++n;
    const double nn = static_cast<double>(n);
    const double dn = num - mean_n;
    const double dd = den - mean_d;
    mean_n += dn / nn;
    mean_d += dd / nn;
    m2_n += dn * (num - mean_n);
    m2_d += dd * (den - mean_d);
    m2_nd += dn * (den - mean_d);
}

void PairedMoments::merge(const PairedMoments& o) {
    if (o.n == 0) return;
    if (n == 0) { *this = o; return; }
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    const double nt = na + nb;
    const double dn = o.mean_n - mean_n;
    const double dd = o.mean_d - mean_d;
    m2_n += o.m2_n + dn * dn * na * nb / nt;
    m2_d += o.m2_d + dd * dd * na * nb / nt;
    m2_nd += o.m2_nd + dn * dd * na * nb / nt;
    mean_n += dn * nb / nt;
    mean_d += dd * nb / nt;
    n += o.n;
}

double PairedMoments::cov() const {
    detail::require(n >= 2, "cov: need n >= 2");
    return m2_nd / static_cast<double>(n - 1);
}

RatioEstimate delta_ratio_ci(const PairedMoments& p) {
    detail::require(p.n >= 2, "delta_ratio_ci: need n >= 2");
    if (!(p.mean_d > 0.0))
        throw degenerate_experiment(
            "ratio denominator estimates to nonpositive mass; increase the "
            "number of paths or choose a different weight");
    const double r = p.mean_n / p.mean_d;
    const double nn = static_cast<double>(p.n);
    const double var_n = p.m2_n / (nn - 1.0);
    const double var_d = p.m2_d / (nn - 1.0);
    const double cov = p.m2_nd / (nn - 1.0);
    const double v =
        (var_n - 2.0 * r * cov + r * r * var_d) / (p.mean_d * p.mean_d * nn);
    return {r, std::sqrt(std::max(v, 0.0))};
}

RatioEstimate bootstrap_ratio_ci(const std::vector<double>& num,
                                 const std::vector<double>& den,
                                 int resamples, std::uint64_t seed) {
    detail::require(num.size() == den.size() && num.size() >= 2,
                    "bootstrap_ratio_ci: need paired samples, n >= 2");
    detail::require(resamples >= 10, "bootstrap_ratio_ci: resamples >= 10");
    const std::size_t n = num.size();
    double sn = 0.0, sd = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sn += num[i];
        sd += den[i];
    }
    if (!(sd > 0.0))
        throw degenerate_experiment("bootstrap_ratio_ci: nonpositive denominator");
    Rng rng(seed, 0, StreamPurpose::scratch);
    StreamingMoments boot;
    for (int r = 0; r < resamples; ++r) {
        double bn = 0.0, bd = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto j = static_cast<std::size_t>(rng.next_u64() % n);
            bn += num[j];
            bd += den[j];
        }
        if (bd > 0.0) boot.add(bn / bd);
    }
    detail::require(boot.n >= 2, "bootstrap_ratio_ci: too few valid resamples");
    return {sn / sd, std::sqrt(boot.variance())};
}

WeightedEcdf WeightedEcdf::from(std::vector<double> values) {
    return from(std::move(values), {});
}

WeightedEcdf WeightedEcdf::from(std::vector<double> values,
                                std::vector<double> weights) {
    detail::require(!values.empty(), "WeightedEcdf: empty sample");
    const bool uw = weights.empty();
    detail::require(uw || weights.size() == values.size(),
                    "WeightedEcdf: weight/value size mismatch");
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    WeightedEcdf e;
    e.v_.reserve(values.size());
    e.c_.reserve(values.size());
    double total = 0.0;
    if (uw) total = static_cast<double>(values.size());
    else {
        for (double w : weights) {
            detail::require(w >= 0.0 && std::isfinite(w),
                            "WeightedEcdf: weights must be finite and >= 0");
            total += w;
        }
        detail::require(total > 0.0, "WeightedEcdf: all weights are zero");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        acc += uw ? 1.0 : weights[idx[k]];
        const double x = values[idx[k]];
        if (!e.v_.empty() && e.v_.back() == x) e.c_.back() = acc / total;
        else { e.v_.push_back(x); e.c_.push_back(acc / total); }
    }
    e.c_.back() = 1.0;
    return e;
}

double WeightedEcdf::cdf(double x) const {
    const auto it = std::upper_bound(v_.begin(), v_.end(), x);
    if (it == v_.begin()) return 0.0;
    return c_[static_cast<std::size_t>(it - v_.begin()) - 1];
}

double ks_distance(const WeightedEcdf& a, const WeightedEcdf& b) {
    double d = 0.0;
    for (double x : a.points()) d = std::max(d, std::abs(a.cdf(x) - b.cdf(x)));
    for (double x : b.points()) d = std::max(d, std::abs(a.cdf(x) - b.cdf(x)));
    return d;
}

double ks_distance_exact(const WeightedEcdf& a,
                         const std::function<double(double)>& cdf) {
    double d = 0.0;
    double prev = 0.0;
    const auto& v = a.points();
    const auto& c = a.cum();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = cdf(v[i]);
        d = std::max(d, std::max(std::abs(f - prev), std::abs(f - c[i])));
        prev = c[i];
    }
    return d;
}

double l1_distance(const WeightedEcdf& a, const WeightedEcdf& b, int bins) {
    detail::require(bins >= 10, "l1_distance: need bins >= 10");
    const double lo = std::min(a.points().front(), b.points().front());
    const double hi = std::max(a.points().back(), b.points().back());
    if (lo == hi) return 0.0;
    const double w = (hi - lo) / bins;
    double acc = 0.0;
    for (int i = 0; i < bins; ++i) {
        const double l = lo + i * w;
        const double r = (i + 1 == bins) ? hi : lo + (i + 1) * w;
        const double pa = a.cdf(r) - (i == 0 ? 0.0 : a.cdf(l));
        const double pb = b.cdf(r) - (i == 0 ? 0.0 : b.cdf(l));
        acc += std::abs(pa - pb);
    }
    return acc;
}

}  // namespace levypen
