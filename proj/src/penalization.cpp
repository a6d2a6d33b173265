#include "levypen/penalization.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "levypen/errors.hpp"
#include "levypen/mc_stats.hpp"

namespace levypen {

FunctionalSpec FunctionalSpec::indicator_x_le(double b) {
    detail::require_arg(std::isfinite(b), "functional xle: b must be finite");
    return {Kind::IndicatorXle, b};
}

FunctionalSpec FunctionalSpec::indicator_s_le(double b) {
    detail::require_arg(std::isfinite(b) && b > 0.0,
                        "functional sle: b must be positive");
    return {Kind::IndicatorSle, b};
}

FunctionalSpec FunctionalSpec::parse(std::string_view spec) {
    if (spec == "one") return one();
    if (spec == "logistic") return logistic_x();
    auto num_after = [&](std::string_view pre) {
        return std::stod(std::string(spec.substr(pre.size())));
    };
    if (spec.rfind("xle:b=", 0) == 0) return indicator_x_le(num_after("xle:b="));
    if (spec.rfind("sle:b=", 0) == 0) return indicator_s_le(num_after("sle:b="));
    throw std::invalid_argument(
        "functional spec: expected one | xle:b=<b> | sle:b=<b> | logistic");
}

std::string FunctionalSpec::name() const {
    switch (kind) {
        case Kind::One: return "one";
        case Kind::IndicatorXle: return "xle:b=" + std::to_string(b);
        case Kind::IndicatorSle: return "sle:b=" + std::to_string(b);
        case Kind::Logistic: return "logistic";
    }
    return "one";
}

double FunctionalSpec::eval(double x_t, double s_t) const {
    switch (kind) {
        case Kind::One: return 1.0;
        case Kind::IndicatorXle: return x_t <= b ? 1.0 : 0.0;
        case Kind::IndicatorSle: return s_t <= b ? 1.0 : 0.0;
        case Kind::Logistic: return 1.0 / (1.0 + std::exp(-x_t));
    }
    return 1.0;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LEVY_PENALIZE_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

namespace {

void validate_opts(const SimOpts& opts) {
    detail::require(opts.n_paths >= 2, "experiment: need at least 2 paths");
    detail::require(std::isfinite(opts.dt) && opts.dt > 0.0,
                    "experiment: dt must be positive");
}

// Runs `body(block_index, n_paths_in_block, offset, acc)` over a fixed block
// decomposition and merges the per-block accumulators in block order, so the
// result is independent of the worker count.
template <class Acc, class Body>
Acc run_blocks(const SimOpts& opts, const Body& body) {
    const std::size_t nblocks = std::max<std::size_t>(
        1, std::min(opts.blocks, opts.n_paths));
    const std::size_t base = opts.n_paths / nblocks;
    const std::size_t rem = opts.n_paths % nblocks;
    std::vector<Acc> accs(nblocks);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            const std::size_t len = base + (b < rem ? 1 : 0);
            std::size_t offset = b * base + std::min(b, rem);
            body(b, len, offset, accs[b]);
        }
    };
    const int nthreads =
        std::min<int>(resolve_threads(opts.threads), static_cast<int>(nblocks));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    Acc total;
    for (const auto& a : accs) total.merge(a);
    return total;
}

struct SampleSink {
    // No-op accumulator for experiments writing directly into shared arrays.
    void merge(const SampleSink&) {}
};

// Paired accumulator that optionally retains the raw pairs for the bootstrap
// audit path.
struct RatioAcc {
    PairedMoments pm;
    std::vector<double> num, den;
    void add(double n, double d, bool keep) {
        pm.add(n, d);
        if (keep) {
            num.push_back(n);
            den.push_back(d);
        }
    }
    void merge(const RatioAcc& o) {
        pm.merge(o.pm);
        num.insert(num.end(), o.num.begin(), o.num.end());
        den.insert(den.end(), o.den.begin(), o.den.end());
    }
};

McEstimate finish_ratio(const RatioAcc& acc, const SimOpts& opts) {
    if (opts.bootstrap_resamples > 0) {
        const RatioEstimate r = bootstrap_ratio_ci(
            acc.num, acc.den, opts.bootstrap_resamples, opts.seed ^ 0xb00757ull);
        return {r.ratio, r.std_err, acc.pm.n};
    }
    const RatioEstimate r = delta_ratio_ci(acc.pm);
    return {r.ratio, r.std_err, acc.pm.n};
}

}  // namespace

McEstimate exp_clock_ratio(const WeightFn& f, const LevyModel& model,
                           const FunctionalSpec& F, double q, double t,
                           const SimOpts& opts) {
    detail::require(std::isfinite(q) && q > 0.0, "exp_clock_ratio: q > 0");
    detail::require(std::isfinite(t) && t >= 0.0, "exp_clock_ratio: t >= 0");
    validate_opts(opts);
    m0(f, model);  // reject inadmissible pairs up front
    const bool keep = opts.bootstrap_resamples > 0;
    const RatioAcc acc = run_blocks<RatioAcc>(
        opts, [&](std::size_t block, std::size_t len, std::size_t, RatioAcc& acc) {
            Rng incr(opts.seed, block, StreamPurpose::increments);
            Rng bridge(opts.seed, block, StreamPurpose::bridge);
            Rng clock(opts.seed, block, StreamPurpose::clock);
            for (std::size_t i = 0; i < len; ++i) {
                const double e = clock.exponential() / q;
                SupWalker w(model, opts.refine, incr, bridge);
                double f_se = 0.0, ft = 0.0;
                if (e <= t) {
                    w.advance_to(e, opts.dt);
                    f_se = f(w.sup());
                    w.advance_to(t, opts.dt);
                    ft = F.eval(w.x(), w.sup());
                } else {
                    w.advance_to(t, opts.dt);
                    ft = F.eval(w.x(), w.sup());
                    w.advance_to(e, opts.dt);
                    f_se = f(w.sup());
                }
                acc.add(ft * f_se, f_se, keep);
            }
        });
    return finish_ratio(acc, opts);
}

McEstimate penalized_target(const WeightFn& f, const LevyModel& model,
                            const FunctionalSpec& F, double t,
                            const SimOpts& opts) {
    detail::require(std::isfinite(t) && t >= 0.0, "penalized_target: t >= 0");
    validate_opts(opts);
    const double norm = m0(f, model);
    const StreamingMoments sm = run_blocks<StreamingMoments>(
        opts, [&](std::size_t block, std::size_t len, std::size_t, StreamingMoments& acc) {
            Rng incr(opts.seed, block, StreamPurpose::increments);
            Rng bridge(opts.seed, block, StreamPurpose::bridge);
            for (std::size_t i = 0; i < len; ++i) {
                SupWalker w(model, opts.refine, incr, bridge);
                w.advance_to(t, opts.dt);
                const MartingaleState st{t, w.sup(), w.x()};
                acc.add(F.eval(w.x(), w.sup()) * ay_eval(f, model, st) / norm);
            }
        });
    return {sm.mean, sm.n >= 2 ? sm.std_err() : 0.0, sm.n};
}

McEstimate const_clock_ratio(const WeightFn& f, const LevyModel& model,
                             const FunctionalSpec& F, double s, double t,
                             const SimOpts& opts) {
    if (!model.is_brownian())
        throw unsupported_capability(
            "const_clock_ratio: stable constant-clock experiments are out of "
            "scope (no closed-form supremum density)");
    detail::require(std::isfinite(s) && std::isfinite(t) && s > t && t >= 0.0,
                    "const_clock_ratio: need s > t >= 0");
    validate_opts(opts);
    m0(f, model);
    const bool keep = opts.bootstrap_resamples > 0;
    const RatioAcc acc = run_blocks<RatioAcc>(
        opts, [&](std::size_t block, std::size_t len, std::size_t, RatioAcc& acc) {
            Rng incr(opts.seed, block, StreamPurpose::increments);
            Rng bridge(opts.seed, block, StreamPurpose::bridge);
            for (std::size_t i = 0; i < len; ++i) {
                SupWalker w(model, opts.refine, incr, bridge);
                w.advance_to(t, opts.dt);
                const double ft = F.eval(w.x(), w.sup());
                w.advance_to(s, opts.dt);
                acc.add(ft * f(w.sup()), f(w.sup()), keep);
            }
        });
    return finish_ratio(acc, opts);
}

McEstimate normalized_mass(const WeightFn& f, const LevyModel& model,
                           const ClockSpec& clock, const SimOpts& opts) {
    validate_opts(opts);
    m0(f, model);
    const double norm = clock.kind == ClockSpec::Kind::Exponential
                            ? model.kappa_h(clock.param, 0.0)
                            : model.n_tail_h(clock.param);
    const StreamingMoments sm = run_blocks<StreamingMoments>(
        opts, [&](std::size_t block, std::size_t len, std::size_t, StreamingMoments& acc) {
            Rng incr(opts.seed, block, StreamPurpose::increments);
            Rng bridge(opts.seed, block, StreamPurpose::bridge);
            Rng clk(opts.seed, block, StreamPurpose::clock);
            for (std::size_t i = 0; i < len; ++i) {
                const double horizon = sample_clock(clock, clk);
                SupWalker w(model, opts.refine, incr, bridge);
                w.advance_to(horizon, opts.dt);
                acc.add(f(w.sup()));
            }
        });
    return {sm.mean / norm, (sm.n >= 2 ? sm.std_err() : 0.0) / norm, sm.n};
}

WeightedSample importance_sample_penalized(const WeightFn& f,
                                           const LevyModel& model, double t,
                                           const SimOpts& opts) {
    detail::require(std::isfinite(t) && t >= 0.0,
                    "importance_sample_penalized: t >= 0");
    validate_opts(opts);
    const double norm = m0(f, model);
    WeightedSample out;
    out.s_t.resize(opts.n_paths);
    out.x_t.resize(opts.n_paths);
    out.w.resize(opts.n_paths);
    run_blocks<SampleSink>(
        opts, [&](std::size_t block, std::size_t len, std::size_t offset, SampleSink&) {
            Rng incr(opts.seed, block, StreamPurpose::increments);
            Rng bridge(opts.seed, block, StreamPurpose::bridge);
            for (std::size_t i = 0; i < len; ++i) {
                SupWalker w(model, opts.refine, incr, bridge);
                w.advance_to(t, opts.dt);
                const MartingaleState st{t, w.sup(), w.x()};
                out.s_t[offset + i] = w.sup();
                out.x_t[offset + i] = w.x();
                out.w[offset + i] = ay_eval(f, model, st) / norm;
            }
        });
    double sw = 0.0, sw2 = 0.0;
    for (double wi : out.w) { sw += wi; sw2 += wi * wi; }
    out.mean_weight = sw / static_cast<double>(opts.n_paths);
    out.ess = sw2 > 0.0 ? sw * sw / sw2 : 0.0;
    out.low_ess_warning = out.ess < 0.01 * static_cast<double>(opts.n_paths);
    return out;
}

double sample_sup_inf(const WeightFn& f, Rng& rng) {
    switch (f.shape()) {
        case WeightFn::Shape::Indicator:
            return f.param() * rng.uniform01();
        case WeightFn::Shape::ExpDecay:
            return rng.exponential() / f.param();
        case WeightFn::Shape::Table: {
            // Piecewise-linear density: quadratic CDF per knot interval.
            const auto& ks = f.knots();
            std::vector<double> mass(ks.size() - 1);
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
                mass[i] = 0.5 * (ks[i].second + ks[i + 1].second) *
                          (ks[i + 1].first - ks[i].first);
                total += mass[i];
            }
            detail::require(total > 0.0, "sample_sup_inf: zero-mass table weight");
            double u = rng.uniform01() * total;
            std::size_t i = 0;
            while (i + 1 < mass.size() && u > mass[i]) u -= mass[i++];
            const double x0 = ks[i].first, x1 = ks[i + 1].first;
            const double f0 = ks[i].second, f1 = ks[i + 1].second;
            const double len = x1 - x0;
            if (std::abs(f1 - f0) < 1e-14 * (f0 + f1)) {
                return x0 + len * u / std::max(mass[i], 1e-300);
            }
            const double a = 0.5 * (f1 - f0) / len;
            // Solve a d^2 + f0 d = u for d in [0, len].
            const double d =
                (-f0 + std::sqrt(f0 * f0 + 4.0 * a * u)) / (2.0 * a);
            return x0 + std::min(std::max(d, 0.0), len);
        }
    }
    return 0.0;
}

PenalizedPathSample decompose_sample_brownian(const WeightFn& f, double u_max,
                                              double dt, double cap,
                                              std::uint64_t seed,
                                              std::uint64_t index) {
    detail::require(std::isfinite(u_max) && u_max > 0.0,
                    "decompose_sample_brownian: u_max > 0");
    const LevyModel bm = LevyModel::brownian();
    Rng sup_rng(seed, index, StreamPurpose::sup_law);
    Rng incr(seed, index, StreamPurpose::increments);
    Rng post_rng(seed, index, StreamPurpose::post_max);

    PenalizedPathSample out;
    out.s_inf = sample_sup_inf(f, sup_rng);

    // Pre-maximum: Brownian motion stopped at its first hitting time of s_inf.
    // first_passage interleaves its bridge draws on the increment stream.
    FirstPassageResult fp = first_passage(bm, out.s_inf, dt, cap, incr);
    out.censored = fp.censored;
    out.g = fp.time;
    out.pre_max = std::move(fp.path);
    out.pre_max.seed_path = index;
    if (out.censored) return out;

    // Post-maximum decrement: norm of a 3-d Brownian motion on the dt grid.
    const auto m = static_cast<std::size_t>(std::llround(u_max / dt));
    out.post_max.resize(m + 1);
    out.post_max[0] = 0.0;
    double w1 = 0.0, w2 = 0.0, w3 = 0.0;
    const double sd = std::sqrt(dt);
    for (std::size_t i = 1; i <= m; ++i) {
        w1 += sd * post_rng.normal();
        w2 += sd * post_rng.normal();
        w3 += sd * post_rng.normal();
        out.post_max[i] = std::sqrt(w1 * w1 + w2 * w2 + w3 * w3);
    }
    return out;
}

CrosscheckResult crosscheck_samplers(const WeightFn& f, const LevyModel& model,
                                     double t, const SimOpts& opts) {
    if (!model.is_brownian())
        throw unsupported_capability(
            "crosscheck_samplers: the decomposition sampler is Brownian-only");
    detail::require(std::isfinite(t) && t >= 0.0, "crosscheck_samplers: t >= 0");
    validate_opts(opts);
    CrosscheckResult out;

    if (t == 0.0) {
        out.n_used = opts.n_paths;
        return out;  // both laws are the Dirac mass at 0
    }

    // (a) importance-weighted law of X_t, plus the g <= t proxy report:
    // weighted frequency of the supremum still increasing after t/2.
    const double norm = m0(f, model);
    struct ImpAcc {
        std::vector<double> x, w;
        double w_inc = 0.0, w_tot = 0.0;
        void merge(const ImpAcc& o) {
            x.insert(x.end(), o.x.begin(), o.x.end());
            w.insert(w.end(), o.w.begin(), o.w.end());
            w_inc += o.w_inc;
            w_tot += o.w_tot;
        }
    };
    ImpAcc imp = run_blocks<ImpAcc>(
        opts, [&](std::size_t block, std::size_t len, std::size_t, ImpAcc& acc) {
            Rng incr(opts.seed, block, StreamPurpose::increments);
            Rng bridge(opts.seed, block, StreamPurpose::bridge);
            acc.x.reserve(acc.x.size() + len);
            acc.w.reserve(acc.w.size() + len);
            for (std::size_t i = 0; i < len; ++i) {
                SupWalker w(model, opts.refine, incr, bridge);
                w.advance_to(0.5 * t, opts.dt);
                const double s_half = w.sup();
                w.advance_to(t, opts.dt);
                const MartingaleState st{t, w.sup(), w.x()};
                const double wi = ay_eval(f, model, st) / norm;
                acc.x.push_back(w.x());
                acc.w.push_back(wi);
                acc.w_tot += wi;
                if (w.sup() > s_half) acc.w_inc += wi;
            }
        });
    out.g_tail_report = imp.w_tot > 0.0 ? imp.w_inc / imp.w_tot : 0.0;

    // (b) decomposition sampler: X_t = s_inf - post(t - g) on {g <= t}.
    struct DecAcc {
        std::vector<double> x;
        std::size_t censored = 0;
        void merge(const DecAcc& o) {
            x.insert(x.end(), o.x.begin(), o.x.end());
            censored += o.censored;
        }
    };
    DecAcc dec = run_blocks<DecAcc>(
        opts, [&](std::size_t block, std::size_t len, std::size_t, DecAcc& acc) {
            Rng sup_rng(opts.seed, block + 1000003, StreamPurpose::sup_law);
            Rng incr(opts.seed, block + 1000003, StreamPurpose::increments);
            Rng post_rng(opts.seed, block + 1000003, StreamPurpose::post_max);
            const LevyModel bm = LevyModel::brownian();
            for (std::size_t i = 0; i < len; ++i) {
                const double s_inf = sample_sup_inf(f, sup_rng);
                // First-passage time only; cap at t since later crossings are
                // censored for this marginal anyway.
                double x = 0.0, sup = 0.0, g = -1.0;
                const auto cells =
                    static_cast<std::size_t>(std::llround(t / opts.dt));
                for (std::size_t c = 1; c <= cells; ++c) {
                    const double a = x;
                    const double b = a + bm.sample_increment(opts.dt, incr);
                    const double d = b - a;
                    const double u = incr.uniform01();
                    const double mcell = 0.5 * (a + b + std::sqrt(d * d - 2.0 * opts.dt * std::log(u)));
                    x = b;
                    if (mcell > sup) sup = mcell;
                    if (sup > s_inf) { g = opts.dt * static_cast<double>(c); break; }
                }
                if (g < 0.0) {
                    ++acc.censored;
                    continue;
                }
                const double tau = t - g;
                double xt = s_inf;
                if (tau > 0.0) {
                    const double sd = std::sqrt(tau);
                    const double b1 = sd * post_rng.normal();
                    const double b2 = sd * post_rng.normal();
                    const double b3 = sd * post_rng.normal();
                    xt = s_inf - std::sqrt(b1 * b1 + b2 * b2 + b3 * b3);
                }
                acc.x.push_back(xt);
            }
        });

    out.censored_fraction =
        static_cast<double>(dec.censored) / static_cast<double>(opts.n_paths);
    out.inconclusive = out.censored_fraction > 0.05;
    out.n_used = dec.x.size();
    if (dec.x.empty())
        throw degenerate_experiment("crosscheck_samplers: every path censored");
    const WeightedEcdf ea = WeightedEcdf::from(imp.x, imp.w);
    const WeightedEcdf eb = WeightedEcdf::from(dec.x);
    out.ks = ks_distance(ea, eb);
    return out;
}

}  // namespace levypen
