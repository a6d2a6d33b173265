#include "levypen/path_sim.hpp"

#include <algorithm>
#include <cmath>

#include "levypen/errors.hpp"

namespace levypen {

std::vector<double> PathSample::times() const {
    std::vector<double> t(x.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = time(i);
    return t;
}

ClockSpec ClockSpec::exponential(double q) {
    detail::require_arg(std::isfinite(q) && q > 0.0,
                        "ClockSpec: exponential rate q must be positive");
    return ClockSpec{Kind::Exponential, q};
}

ClockSpec ClockSpec::constant(double s) {
    detail::require_arg(std::isfinite(s) && s > 0.0,
                        "ClockSpec: constant horizon must be positive");
    return ClockSpec{Kind::Constant, s};
}

double sample_clock(const ClockSpec& spec, Rng& rng) {
    if (spec.kind == ClockSpec::Kind::Constant) return spec.param;
    return rng.exponential() / spec.param;
}

double sample_increment(const LevyModel& model, double dt, Rng& rng) {
    return model.sample_increment(dt, rng);
}

PathSample simulate_path(const LevyModel& model, double horizon, double dt,
                         Rng& rng) {
    detail::require(std::isfinite(horizon) && std::isfinite(dt) && dt > 0.0 &&
                        horizon >= dt,
                    "simulate_path: need horizon >= dt > 0");
    const auto n = static_cast<std::size_t>(std::llround(horizon / dt));
    PathSample p;
    p.dt = dt;
    p.origin = model.kind();
    p.x.resize(n + 1);
    p.s.resize(n + 1);
    p.x[0] = 0.0;
    p.s[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        p.x[i] = p.x[i - 1] + model.sample_increment(dt, rng);
        p.s[i] = std::max(p.s[i - 1], p.x[i]);
    }
    return p;
}

namespace {

// Maximum of a Brownian bridge over a cell of length dt with endpoint values
// a, b: (a + b + sqrt((b-a)^2 - 2 dt ln U)) / 2. U -> 1 degenerates to the
// endpoint maximum; the draw dominates max(a, b) for every U in (0, 1).
inline double bridge_cell_max(double a, double b, double dt, double u) {
    const double d = b - a;
    return 0.5 * (a + b + std::sqrt(d * d - 2.0 * dt * std::log(u)));
}

}  // namespace

PathSample refine_supremum_brownian(PathSample path, Rng& rng) {
    if (path.origin != ModelKind::BrownianStd)
        throw unsupported_capability(
            "refine_supremum_brownian: bridge-maximum law is Brownian-only");
    detail::require(!path.refined, "refine_supremum_brownian: already refined");
    for (std::size_t i = 1; i < path.x.size(); ++i) {
        const double m =
            bridge_cell_max(path.x[i - 1], path.x[i], path.dt, rng.uniform01());
        path.s[i] = std::max(path.s[i - 1], m);
    }
    path.refined = true;
    return path;
}

FirstPassageResult first_passage(const LevyModel& model, double level,
                                 double dt, double cap, Rng& rng) {
    detail::require(std::isfinite(level) && level > 0.0,
                    "first_passage: level must be positive");
    detail::require(std::isfinite(dt) && dt > 0.0 && cap >= dt,
                    "first_passage: need cap >= dt > 0");
    const bool refine = model.is_brownian();
    FirstPassageResult out;
    PathSample& p = out.path;
    p.dt = dt;
    p.origin = model.kind();
    p.refined = refine;
    p.x.push_back(0.0);
    p.s.push_back(0.0);
    const auto max_cells = static_cast<std::size_t>(std::llround(cap / dt));
    for (std::size_t i = 1; i <= max_cells; ++i) {
        const double a = p.x.back();
        const double b = a + model.sample_increment(dt, rng);
        double m = b;
        if (refine) m = bridge_cell_max(a, b, dt, rng.uniform01());
        p.x.push_back(b);
        p.s.push_back(std::max(p.s.back(), m));
        if (p.s.back() > level) {
            out.time = p.time(i);
            return out;
        }
    }
    out.censored = true;
    out.time = cap;
    return out;
}

void SupWalker::step(double dt) {
    const double a = x_;
    const double b = a + model_->sample_increment(dt, *incr_);
    double m = b;
    if (refine_) {
        const double d = b - a;
        const double u = bridge_->uniform01();
        m = 0.5 * (a + b + std::sqrt(d * d - 2.0 * dt * std::log(u)));
    }
    x_ = b;
    if (m > sup_) sup_ = m;
    t_ += dt;
}

void SupWalker::advance_to(double target, double dt) {
    while (t_ + dt <= target * (1.0 + 1e-15)) step(dt);
    const double rem = target - t_;
    if (rem > 1e-12 * dt) step(rem);
    t_ = target;  // kill accumulated rounding
}

}  // namespace levypen
