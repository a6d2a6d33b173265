#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace levypen {

// Welford accumulator; merging is associative and order-insensitive to
// floating-point tolerance.
struct StreamingMoments {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;  // sum of squared deviations

    void add(double x);
    void merge(const StreamingMoments& o);
    double variance() const;  // sample variance, n >= 2
    double std_err() const;
};

// Paired accumulator for ratio-of-means estimators: tracks numerator and
// denominator moments plus their co-moment on the same draws.
struct PairedMoments {
    std::size_t n = 0;
    double mean_n = 0.0, mean_d = 0.0;
    double m2_n = 0.0, m2_d = 0.0, m2_nd = 0.0;

    void add(double num, double den);
    void merge(const PairedMoments& o);
    double cov() const;
};

struct RatioEstimate {
    double ratio = 0.0;
    double std_err = 0.0;
};

// Delta-method CI for mean(num)/mean(den); throws degenerate_experiment when
// the denominator mean is not positive.
RatioEstimate delta_ratio_ci(const PairedMoments& p);

// Audit alternative behind a flag: nonparametric bootstrap of the paired
// ratio. Deterministic for a fixed seed; the delta method remains the
// default estimator.
RatioEstimate bootstrap_ratio_ci(const std::vector<double>& num,
                                 const std::vector<double>& den,
                                 int resamples, std::uint64_t seed);

// Right-continuous weighted empirical CDF; weights normalized to sum to 1.
class WeightedEcdf {
public:
    static WeightedEcdf from(std::vector<double> values);
    static WeightedEcdf from(std::vector<double> values,
                             std::vector<double> weights);

    double cdf(double x) const;
    std::size_t size() const { return v_.size(); }
    const std::vector<double>& points() const { return v_; }
    const std::vector<double>& cum() const { return c_; }

private:
    std::vector<double> v_;  // sorted support points
    std::vector<double> c_;  // cumulative weights, ends at 1
};

// Two-sample sup distance evaluated at all jump points of both CDFs.
double ks_distance(const WeightedEcdf& a, const WeightedEcdf& b);

// One-sample sup distance against a continuous CDF.
double ks_distance_exact(const WeightedEcdf& a,
                         const std::function<double(double)>& cdf);

// Histogram L1 distance on the common support; lies in [0, 2].
double l1_distance(const WeightedEcdf& a, const WeightedEcdf& b, int bins);

}  // namespace levypen
