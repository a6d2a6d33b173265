#include "levypen/azema_yor.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "levypen/errors.hpp"
#include "levypen/quadrature.hpp"
#include "levypen/special.hpp"

namespace levypen {

namespace {
const double kInf = std::numeric_limits<double>::infinity();

// Composite Simpson over [a, b] with interval halving until the change is
// below 1e-8 (relative); the contract for Table-shape weights.
double simpson_refine(const Integrand& g, double a, double b) {
    if (b <= a) return 0.0;
    int n = 16;
    auto pass = [&](int m) {
        const double h = (b - a) / m;
        double acc = g(a) + g(b);
        for (int i = 1; i < m; ++i) acc += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
        return acc * h / 3.0;
    };
    double prev = pass(n);
    for (int it = 0; it < 14; ++it) {
        n *= 2;
        const double cur = pass(n);
        if (std::abs(cur - prev) <= 1e-8 * (std::abs(cur) + 1.0)) return cur;
        prev = cur;
    }
    throw numerics_error("table weight quadrature did not settle",
                         std::abs(prev));
}
}  // namespace

WeightFn WeightFn::indicator(double a) {
    detail::require_arg(std::isfinite(a) && a > 0.0,
                        "indicator weight: a must be positive");
    return WeightFn(Shape::Indicator, a);
}

WeightFn WeightFn::exp_decay(double c) {
    detail::require_arg(std::isfinite(c) && c > 0.0,
                        "expdecay weight: c must be positive");
    return WeightFn(Shape::ExpDecay, c);
}

WeightFn WeightFn::table(std::vector<std::pair<double, double>> knots) {
    detail::require_arg(knots.size() >= 2, "table weight: need >= 2 knots");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        detail::require_arg(std::isfinite(knots[i].first) &&
                                std::isfinite(knots[i].second) &&
                                knots[i].second >= 0.0 && knots[i].first >= 0.0,
                            "table weight: knots must be finite, x >= 0, f >= 0");
        if (i > 0)
            detail::require_arg(knots[i].first > knots[i - 1].first,
                                "table weight: x knots must increase");
    }
    WeightFn w(Shape::Table, 0.0);
    w.knots_ = std::move(knots);
    return w;
}

WeightFn WeightFn::parse(std::string_view spec) {
    auto num_after = [&](std::string_view pre) {
        return std::stod(std::string(spec.substr(pre.size())));
    };
    if (spec.rfind("indicator:a=", 0) == 0) return indicator(num_after("indicator:a="));
    if (spec.rfind("expdecay:c=", 0) == 0) return exp_decay(num_after("expdecay:c="));
    if (spec.rfind("table:", 0) == 0) {
        const std::string path(spec.substr(6));
        std::ifstream in(path);
        detail::require_arg(in.good(), "table weight: cannot open csv file");
        std::vector<std::pair<double, double>> knots;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("x,", 0) == 0) continue;
            std::istringstream ls(line);
            double x, f;
            char comma;
            if (ls >> x >> comma >> f) knots.emplace_back(x, f);
        }
        return table(std::move(knots));
    }
    throw std::invalid_argument(
        "weight spec: expected indicator:a=<a> | expdecay:c=<c> | table:<csv>");
}

double WeightFn::operator()(double x) const {
    switch (shape_) {
        case Shape::Indicator:
            return (x >= 0.0 && x <= param_) ? 1.0 : 0.0;
        case Shape::ExpDecay:
            return x >= 0.0 ? std::exp(-param_ * x) : 0.0;
        case Shape::Table: {
            if (x <= knots_.front().first || x >= knots_.back().first) {
                if (x == knots_.front().first) return knots_.front().second;
                if (x == knots_.back().first) return knots_.back().second;
                return 0.0;
            }
            auto it = std::lower_bound(
                knots_.begin(), knots_.end(), x,
                [](const auto& k, double v) { return k.first < v; });
            const auto hi = it;
            const auto lo = it - 1;
            const double t = (x - lo->first) / (hi->first - lo->first);
            return lo->second + t * (hi->second - lo->second);
        }
    }
    return 0.0;
}

double WeightFn::support_end() const {
    switch (shape_) {
        case Shape::Indicator: return param_;
        case Shape::ExpDecay: return kInf;
        case Shape::Table: return knots_.back().first;
    }
    return kInf;
}

double WeightFn::sup_norm() const {
    switch (shape_) {
        case Shape::Indicator: return 1.0;
        case Shape::ExpDecay: return 1.0;
        case Shape::Table: {
            double m = 0.0;
            for (const auto& k : knots_) m = std::max(m, k.second);
            return m;
        }
    }
    return 1.0;
}

std::string WeightFn::name() const {
    std::ostringstream os;
    switch (shape_) {
        case Shape::Indicator: os << "indicator:a=" << param_; break;
        case Shape::ExpDecay: os << "expdecay:c=" << param_; break;
        case Shape::Table: os << "table[" << knots_.size() << "]"; break;
    }
    return os.str();
}

void MartingaleState::validate() const {
    detail::require(std::isfinite(t) && t >= 0.0 && std::isfinite(s) &&
                        std::isfinite(x) && s >= x && s >= 0.0,
                    "MartingaleState: need t >= 0 and s >= max(x, 0)");
}

double weight_tail_integral(const WeightFn& f, const LevyModel& model,
                            double s_in, double y) {
    detail::require(std::isfinite(s_in) && s_in >= 0.0 && std::isfinite(y),
                    "weight_tail_integral: need finite y and s >= 0");
    // The ladder density vanishes on negative arguments, so the integral
    // effectively starts at max(s, y); callers always have y = X_t <= s.
    const double s = std::max(s_in, y);
    switch (f.shape()) {
        case WeightFn::Shape::Indicator: {
            const double a = f.param();
            if (a <= s) return 0.0;
            return model.h(a - y) - model.h(s - y);
        }
        case WeightFn::Shape::ExpDecay: {
            const double c = f.param();
            if (model.is_brownian()) return std::exp(-c * s) / c;
            // u = x - y; integrand e^{-c(u+y)} h'(u) has an integrable power
            // singularity when s = y.
            const double u0 = s - y;
            const auto g = [&](double u) {
                return u <= 0.0 ? 0.0 : std::exp(-c * (u + y)) * model.h_prime(u);
            };
            const QuadResult head =
                integrate_tanh_sinh(g, u0, u0 + 4.0 / c, 1e-12);
            const QuadResult tail =
                integrate_upper(g, u0 + 4.0 / c, 1e-13, 4.0 / c);
            return head.value + tail.value;
        }
        case WeightFn::Shape::Table: {
            const auto& ks = f.knots();
            const double lo = std::max(s, ks.front().first);
            const double hi = ks.back().first;
            if (lo >= hi) return f(s) == 0.0 ? 0.0 : 0.0;
            // Composite Simpson knot interval by knot interval. A singular
            // first interval (stable h', x -> y) is handled exactly for the
            // linear piece by integration by parts.
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
                double a = std::max(lo, ks[i].first);
                double b = ks[i + 1].first;
                if (b <= a) continue;
                if (!model.is_brownian() && a - y < 1e-10 * (b - a)) {
                    // f linear on [a, b]: int f h' = [f h] - f' int h.
                    const double fa = f(a), fb = f(b);
                    const double slope = (fb - fa) / (b - a);
                    const double c1 = model.alpha() * model.rho() + 1.0;
                    const double ih = (std::pow(b - y, c1) - std::pow(a - y, c1)) / c1;
                    acc += fb * model.h(b - y) - fa * model.h(a - y) - slope * ih;
                } else {
                    acc += simpson_refine(
                        [&](double x) {
                            return x <= y ? 0.0 : f(x) * model.h_prime(x - y);
                        },
                        a, b);
                }
            }
            return acc;
        }
    }
    return 0.0;
}

double m0(const WeightFn& f, const LevyModel& model) {
    const double v = weight_tail_integral(f, model, 0.0, 0.0);
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(
            "weight/model pair inadmissible: int f h' must be positive and "
            "finite");
    return v;
}

double ay_eval(const WeightFn& f, const LevyModel& model,
               const MartingaleState& st) {
    st.validate();
    const double r = st.s - st.x;
    const double first = r > 0.0 ? f(st.s) * model.h(r) : 0.0;
    return first + weight_tail_integral(f, model, st.s, st.x);
}

namespace detail {

double weight_tail_integral_hq(const WeightFn& f, const LevyModel& model,
                               double q, double s, double y) {
    if (q == 0.0) return weight_tail_integral(f, model, s, y);
    if (model.is_brownian()) {
        const double r = std::sqrt(2.0 * q);
        switch (f.shape()) {
            case WeightFn::Shape::Indicator: {
                const double a = f.param();
                if (a <= s) return 0.0;
                return (std::exp(-r * (s - y)) - std::exp(-r * (a - y))) / r;
            }
            case WeightFn::Shape::ExpDecay: {
                const double c = f.param();
                return std::exp(r * y - (c + r) * s) / (c + r);
            }
            case WeightFn::Shape::Table:
                return simpson_refine(
                    [&](double x) {
                        return x <= y ? 0.0 : f(x) * std::exp(-r * (x - y));
                    },
                    std::max(s, f.knots().front().first), f.support_end());
        }
    }
    // Stable: h_q' from the Laplace-inversion bundle; integrable singularity
    // at x = y when s = y.
    const double u0 = s - y;
    const auto g = [&](double u) {
        return u <= 0.0 ? 0.0 : f(u + y) * model.hq_prime(q, u);
    };
    const double end = f.support_end();
    if (std::isfinite(end)) {
        if (end - y <= u0) return 0.0;
        return integrate_tanh_sinh(g, u0, end - y, 1e-10).value;
    }
    const QuadResult head = integrate_tanh_sinh(g, u0, u0 + 4.0, 1e-10);
    const QuadResult tail = integrate_upper(g, u0 + 4.0, 1e-12, 4.0, 1e-10);
    return head.value + tail.value;
}

double weight_tail_integral_phi(const WeightFn& f, const LevyModel& model,
                                double tau, double s, double y) {
    if (!model.is_brownian())
        throw unsupported_capability(
            "constant-clock tail integral needs the Brownian supremum density");
    const double sd = std::sqrt(tau);
    switch (f.shape()) {
        case WeightFn::Shape::Indicator: {
            const double a = f.param();
            if (a <= s) return 0.0;
            return 2.0 * (norm_cdf((a - y) / sd) - norm_cdf((s - y) / sd));
        }
        case WeightFn::Shape::ExpDecay: {
            // 2 int_s^inf e^{-cx} N(x; y, tau) dx, Gaussian tilt.
            const double c = f.param();
            return 2.0 * std::exp(-c * y + 0.5 * c * c * tau) *
                   norm_sf((s - y + c * tau) / sd);
        }
        case WeightFn::Shape::Table:
            return simpson_refine(
                [&](double x) {
                    return x <= y ? 0.0 : f(x) * model.sup_density(tau, x - y);
                },
                std::max(s, f.knots().front().first), f.support_end());
    }
    return 0.0;
}

}  // namespace detail

double n_qf_eval(const WeightFn& f, const LevyModel& model, double q,
                 const MartingaleState& st) {
    detail::require(std::isfinite(q) && q > 0.0, "n_qf_eval: q must be positive");
    st.validate();
    const double r = st.s - st.x;
    const double first = r > 0.0 ? f(st.s) * model.h_q(q, r) : 0.0;
    const double tail = detail::weight_tail_integral_hq(f, model, q, st.s, st.x);
    return std::exp(-q * st.t) * (first + tail);
}

double m_qf_eval(const WeightFn& f, const LevyModel& model, double q,
                 const PathSample& path, double t) {
    detail::require(std::isfinite(t) && t >= 0.0, "m_qf_eval: t >= 0 required");
    const auto it = static_cast<std::size_t>(std::llround(t / path.dt));
    detail::require(it < path.size() && std::abs(path.time(it) - t) <= 1e-9,
                    "m_qf_eval: t must be a grid time covered by the path");
    const MartingaleState st{t, path.s[it], path.x[it]};
    // Trapezoid of e^{-qs} f(S_s) on the grid.
    double integral = 0.0;
    if (it > 0) {
        double prev = f(path.s[0]);  // e^{0} = 1
        for (std::size_t i = 1; i <= it; ++i) {
            const double cur = std::exp(-q * path.time(i)) * f(path.s[i]);
            integral += 0.5 * (prev + cur) * path.dt;
            prev = cur;
        }
    }
    return n_qf_eval(f, model, q, st) +
           q / model.kappa_h(q, 0.0) * integral;
}

double m_sf_eval(const WeightFn& f, const LevyModel& model, double s_horizon,
                 const MartingaleState& st) {
    if (!model.is_brownian())
        throw unsupported_capability(
            "m_sf_eval: constant-clock evaluator needs the Brownian supremum "
            "density");
    st.validate();
    detail::require(std::isfinite(s_horizon) && s_horizon > st.t,
                    "m_sf_eval: horizon must exceed the state time");
    const double tau = s_horizon - st.t;
    const double r = st.s - st.x;
    const double first =
        r > 0.0 ? f(st.s) * half_normal_cdf(r / std::sqrt(tau)) : 0.0;
    const double tail =
        detail::weight_tail_integral_phi(f, model, tau, st.s, st.x);
    return (first + tail) / model.n_tail(s_horizon);
}

}  // namespace levypen
