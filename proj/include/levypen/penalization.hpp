#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "levypen/azema_yor.hpp"
#include "levypen/levy_models.hpp"
#include "levypen/path_sim.hpp"

namespace levypen {

// Bounded F_t-measurable path functionals used in the penalization ratios.
// All catalog functionals are functions of the time-t state (X_t, S_t).
struct FunctionalSpec {
    enum class Kind { One, IndicatorXle, IndicatorSle, Logistic };
    Kind kind = Kind::One;
    double b = 0.0;

    static FunctionalSpec one() { return {Kind::One, 0.0}; }
    static FunctionalSpec indicator_x_le(double b);
    static FunctionalSpec indicator_s_le(double b);
    static FunctionalSpec logistic_x() { return {Kind::Logistic, 0.0}; }
    // "one" | "xle:b=<b>" | "sle:b=<b>" | "logistic"
    static FunctionalSpec parse(std::string_view spec);
    std::string name() const;

    double eval(double x_t, double s_t) const;
};

struct SimOpts {
    std::size_t n_paths = 10000;
    double dt = 1e-3;
    std::uint64_t seed = 1;
    int threads = 0;           // 0: LEVY_PENALIZE_THREADS env, then hardware
    bool refine = true;        // bridge-maximum refinement (Brownian)
    std::size_t blocks = 128;  // replica blocks; fixed so that results do not
                               // depend on the worker count
    int bootstrap_resamples = 0;  // > 0: audit the ratio SEs by bootstrap
                                  // instead of the delta method
};

struct McEstimate {
    double estimate = 0.0;
    double std_err = 0.0;
    std::size_t n = 0;
};

// lim_{q -> 0} P[F_t f(S_{e_q})] / P[f(S_{e_q})]: ratio of sample means over
// paths run to max(e_q, t), with a delta-method standard error.
McEstimate exp_clock_ratio(const WeightFn& f, const LevyModel& model,
                           const FunctionalSpec& F, double q, double t,
                           const SimOpts& opts);

// The limit object P^{(f)}[F_t] = P[F_t M_t^{(f)}] / M_0^{(f)} by plain
// Monte Carlo over paths on [0, t].
McEstimate penalized_target(const WeightFn& f, const LevyModel& model,
                            const FunctionalSpec& F, double t,
                            const SimOpts& opts);

// Constant-clock ratio P[F_t f(S_s)] / P[f(S_s)] over paths on [0, s], s > t.
// Brownian only: stable constant-clock experiments are out of catalog scope.
McEstimate const_clock_ratio(const WeightFn& f, const LevyModel& model,
                             const FunctionalSpec& F, double s, double t,
                             const SimOpts& opts);

// E[f(S_clock)] / kappa(q,0) resp. E[f(S_s)] / n(s < zeta), both in the
// h-anchored normalization so the limit is M_0^{(f)} for every model.
McEstimate normalized_mass(const WeightFn& f, const LevyModel& model,
                           const ClockSpec& clock, const SimOpts& opts);

// Importance sample of the penalized law on F_t: per-path (S_t, X_t) with
// weights M_t / M_0. Full paths are not retained; every consumer of the
// sampler reads time-t marginals.
struct WeightedSample {
    std::vector<double> s_t;
    std::vector<double> x_t;
    std::vector<double> w;
    double ess = 0.0;           // (sum w)^2 / sum w^2
    bool low_ess_warning = false;
    double mean_weight = 0.0;
};
WeightedSample importance_sample_penalized(const WeightFn& f,
                                           const LevyModel& model, double t,
                                           const SimOpts& opts);

// Explicit Brownian path decomposition of the penalized measure:
// S_inf ~ f(x) dx / int f, pre-maximum = Brownian motion stopped at its first
// hitting time of S_inf (cap-censored), post-maximum decrement = norm of a
// three-dimensional Brownian motion from 0.
struct PenalizedPathSample {
    bool censored = false;
    double s_inf = 0.0;
    double g = 0.0;                // time of the maximum (first-passage time)
    PathSample pre_max;
    std::vector<double> post_max;  // X_g - X_{g+u} on the dt grid, post_max[0]=0
};
PenalizedPathSample decompose_sample_brownian(const WeightFn& f, double u_max,
                                              double dt, double cap,
                                              std::uint64_t seed,
                                              std::uint64_t index);

// Draw S_inf from the density f / int f (inverse CDF).
double sample_sup_inf(const WeightFn& f, Rng& rng);

// Weighted KS distance between the importance-weighted law of X_t and the
// decomposition sampler's X_t (= S_inf - post_max(t - g) on {g <= t},
// censored otherwise).
struct CrosscheckResult {
    double ks = 0.0;
    double censored_fraction = 0.0;
    bool inconclusive = false;     // censored fraction > 5%
    std::size_t n_used = 0;
    double g_tail_report = 0.0;    // weighted frequency of S increasing after t/2
};
CrosscheckResult crosscheck_samplers(const WeightFn& f, const LevyModel& model,
                                     double t, const SimOpts& opts);

int resolve_threads(int requested);

}  // namespace levypen
