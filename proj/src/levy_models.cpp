#include "levypen/levy_models.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "levypen/errors.hpp"
#include "levypen/gaver_stehfest.hpp"
#include "levypen/quadrature.hpp"
#include "levypen/special.hpp"

namespace levypen {

namespace {
const double kPi = 3.14159265358979323846;

// Cauchy ladder exponent in long double; accuracy here feeds straight into
// the Gaver-Stehfest inversion, whose coefficients amplify transform noise.
long double kappa_cauchy_ld(long double q, long double lam) {
    static const long double pi = 3.14159265358979323846264338L;
    if (q == 0.0L && lam == 0.0L) return 0.0L;
    if (lam == 0.0L) return std::sqrt(q);
    if (q == 0.0L) return std::sqrt(lam);
    const long double r = q / lam;
    const long double e =
        (inv_tangent_integral_ld(r) - std::atan(r) * std::log(r)) / pi;
    return std::pow(q * q + lam * lam, 0.25L) * std::exp(e);
}

double parse_kv(std::string_view body, std::string_view key) {
    const std::string pat = std::string(key) + "=";
    const auto pos = body.find(pat);
    detail::require_arg(pos != std::string_view::npos,
                        "model spec: missing parameter");
    const auto val = body.substr(pos + pat.size());
    return std::stod(std::string(val.substr(0, val.find(','))));
}
}  // namespace

LevyModel::LevyModel(ModelKind kind, double alpha, double rho)
    : kind_(kind), alpha_(alpha), rho_(rho), cms_shift_(0.0), cms_scale_(1.0) {
    if (kind_ == ModelKind::Stable) {
        const double c = kPi * (rho_ - 0.5);
        cms_shift_ = std::tan(c);
        cms_scale_ = std::pow(std::cos(alpha_ * c), -1.0 / alpha_);
    }
}

LevyModel LevyModel::brownian() {
    return LevyModel(ModelKind::BrownianStd, 2.0, 0.5);
}

LevyModel LevyModel::stable(double alpha, double rho) {
    detail::require_arg(std::isfinite(alpha) && alpha > 0.0 && alpha < 2.0,
                        "stable: alpha must lie in (0, 2)");
    detail::require_arg(std::isfinite(rho) && rho > 0.0 && rho < 1.0,
                        "stable: rho must lie in (0, 1)");
    // Positivity range of strictly stable laws.
    const double lo = std::max(0.0, 1.0 - 1.0 / alpha);
    const double hi = std::min(1.0, 1.0 / alpha);
    detail::require_arg(rho >= lo && rho <= hi,
                        "stable: rho outside [1 - 1/alpha, 1/alpha]");
    return LevyModel(ModelKind::Stable, alpha, rho);
}

LevyModel LevyModel::parse(std::string_view spec) {
    if (spec == "brownian") return brownian();
    const std::string_view pre = "stable:";
    detail::require_arg(spec.substr(0, pre.size()) == pre,
                        "model spec: expected 'brownian' or 'stable:alpha=<a>,rho=<r>'");
    const auto body = spec.substr(pre.size());
    return stable(parse_kv(body, "alpha"), parse_kv(body, "rho"));
}

bool LevyModel::is_symmetric_stable() const {
    return kind_ == ModelKind::Stable && std::abs(rho_ - 0.5) < 1e-12;
}

std::string LevyModel::name() const {
    if (is_brownian()) return "brownian";
    std::ostringstream os;
    os << "stable:alpha=" << alpha_ << ",rho=" << rho_;
    return os.str();
}

std::string LevyModel::char_triplet() const {
    if (is_brownian()) return "gamma=0, sigma2=1, levy_measure=none";
    std::ostringstream os;
    os << "gamma=0, sigma2=0, levy_measure=stable(alpha=" << alpha_
       << ",rho=" << rho_ << ")";
    return os.str();
}

double LevyModel::ladder_scale() const {
    if (is_brownian()) return 1.0;
    return gamma_fn(1.0 + alpha_ * rho_);
}

double LevyModel::h(double x) const {
    detail::require(std::isfinite(x) && x >= 0.0, "h: x must be finite and >= 0");
    if (is_brownian()) return x;
    return std::pow(x, alpha_ * rho_);
}

double LevyModel::h_prime(double x) const {
    detail::require(std::isfinite(x) && x > 0.0, "h_prime: x must be positive");
    if (is_brownian()) return 1.0;
    const double c = alpha_ * rho_;
    return c * std::pow(x, c - 1.0);
}

double LevyModel::kappa(double q, double lam) const {
    detail::require(std::isfinite(q) && q >= 0.0 && std::isfinite(lam) && lam >= 0.0,
                    "kappa: arguments must be finite and >= 0");
    if (is_brownian()) return std::sqrt(2.0 * q) + lam;
    if (q == 0.0 && lam == 0.0) return 0.0;
    if (lam == 0.0) return std::pow(q, rho_);
    if (q == 0.0) return std::pow(lam, alpha_ * rho_);
    return kappa_joint(q, lam);
}

double LevyModel::kappa_h(double q, double lam) const {
    return kappa(q, lam) / ladder_scale();
}

double LevyModel::kappa_joint(double q, double lam) const {
    if (is_brownian()) return std::sqrt(2.0 * q) + lam;
    if (!is_symmetric_stable())
        throw unsupported_capability(
            "kappa: joint (q, lambda) values are available for Brownian and "
            "symmetric stable models only");
    if (std::abs(alpha_ - 1.0) < 1e-12) {
        // Symmetric Cauchy: the outer factor of q + |theta| evaluates in
        // closed form through the inverse tangent integral,
        //   kappa(q,lam) = (q^2 + lam^2)^{1/4}
        //                  * exp[(Ti2(r) - arctan(r) ln r)/pi], r = q/lam.
        return static_cast<double>(kappa_cauchy_ld(q, lam));
    }
    // General symmetric stable: Poisson-kernel factorization of q + psi(theta)
    // with psi(theta) = theta^alpha, written over v = pi/2 - u so the log
    // singularity sits at v = 0:
    //   ln kappa = (1/pi) int_0^{pi/2} ln(q + (lam cot v)^alpha) dv.
    const double a = alpha_, la = std::log(lam), lq = std::log(q);
    const auto integrand = [a, la, lq, q](double v) -> double {
        double ln_cot;
        if (v < 1e-8) ln_cot = -std::log(v) - v * v / 3.0;
        else ln_cot = -std::log(std::tan(v));
        const double w = a * (la + ln_cot);
        if (w > 700.0) return w;
        if (w < -700.0) return lq;
        const double y = std::exp(w);
        return std::log(q + y);
    };
    const QuadResult r = integrate_tanh_sinh(integrand, 0.0, 0.5 * kPi, 1e-13);
    if (!r.converged)
        throw numerics_error("kappa_joint: factorization integral", r.abs_err);
    return std::exp(r.value / kPi);
}

double LevyModel::h_q(double q, double x) const {
    detail::require(std::isfinite(q) && q >= 0.0 && std::isfinite(x) && x >= 0.0,
                    "h_q: arguments must be finite and >= 0");
    if (x == 0.0) return 0.0;
    if (q == 0.0) return h(x);
    if (is_brownian()) {
        const double r = std::sqrt(2.0 * q);
        return -std::expm1(-r * x) / r;
    }
    // Numerical Laplace inversion of the transform pair
    //   int_0^inf e^{-lam x} h_q(x) dx = 1 / (lam * kappa_h(q, lam)).
    if (!is_symmetric_stable())
        throw unsupported_capability(
            "h_q: inversion needs the joint ladder exponent, available for "
            "symmetric stable models only");
    const long double scale = ladder_scale();
    if (std::abs(alpha_ - 1.0) < 1e-12) {
        return gs_invert(
            [q, scale](long double lam) {
                return scale / (lam * kappa_cauchy_ld(q, lam));
            },
            x, 18);
    }
    // Quadrature-backed transform is double-accurate; keep the term count low
    // so rounding is not amplified past the truncation error.
    return gs_invert(
        [this, q, scale](long double lam) {
            return scale /
                   (lam * static_cast<long double>(
                              kappa_joint(q, static_cast<double>(lam))));
        },
        x, 14);
}

double LevyModel::hq_prime(double q, double x) const {
    detail::require(std::isfinite(q) && q >= 0.0 && std::isfinite(x) && x > 0.0,
                    "hq_prime: q >= 0 and x > 0 required");
    if (q == 0.0) return h_prime(x);
    if (is_brownian()) return std::exp(-std::sqrt(2.0 * q) * x);
    if (!is_symmetric_stable())
        throw unsupported_capability(
            "hq_prime: inversion needs the joint ladder exponent, available "
            "for symmetric stable models only");
    const long double scale = ladder_scale();
    if (std::abs(alpha_ - 1.0) < 1e-12) {
        return gs_invert(
            [q, scale](long double lam) {
                return scale / kappa_cauchy_ld(q, lam);
            },
            x, 18);
    }
    return gs_invert(
        [this, q, scale](long double lam) {
            return scale / static_cast<long double>(
                               kappa_joint(q, static_cast<double>(lam)));
        },
        x, 14);
}

double LevyModel::n_tail(double s) const {
    detail::require(std::isfinite(s) && s > 0.0, "n_tail: s must be positive");
    if (is_brownian()) return std::sqrt(2.0 / (kPi * s));
    return std::pow(s, -rho_) / gamma_fn(1.0 - rho_);
}

double LevyModel::sup_density(double t, double x) const {
    detail::require(std::isfinite(t) && t > 0.0 && std::isfinite(x) && x > 0.0,
                    "sup_density: t > 0 and x > 0 required");
    if (!is_brownian())
        throw unsupported_capability(
            "sup_density: no closed-form supremum density in the catalog for "
            "stable models");
    return std::sqrt(2.0 / (kPi * t)) * std::exp(-x * x / (2.0 * t));
}

double LevyModel::sup_cdf(double t, double x) const {
    detail::require(std::isfinite(t) && t > 0.0 && std::isfinite(x) && x >= 0.0,
                    "sup_cdf: t > 0 and x >= 0 required");
    if (!is_brownian())
        throw unsupported_capability("sup_cdf: closed form is Brownian-only");
    return half_normal_cdf(x / std::sqrt(t));
}

CheckResult LevyModel::check_laplace_hq(double q, double lam) const {
    detail::require(std::isfinite(q) && q > 0.0 && std::isfinite(lam) && lam > 0.0,
                    "check_laplace_hq: q > 0 and lambda > 0 required");
    // Closed-form h_q is smooth to machine precision; the inverted stable
    // h_q carries ~1e-9 inversion noise, so demanding more from the
    // quadrature only burns subdivisions.
    const double tol = is_brownian() ? 1e-13 : 1e-9;
    const QuadResult r = integrate_upper(
        [this, q, lam](double x) {
            return x == 0.0 ? 0.0 : std::exp(-lam * x) * h_q(q, x);
        },
        0.0, 1e-13, 1.0 / lam, tol);
    CheckResult out;
    out.quad_err = r.abs_err;
    out.truncated_at = r.truncated_at;
    out.residual = std::abs(lam * r.value * kappa_h(q, lam) - 1.0);
    return out;
}

CheckResult LevyModel::check_convolution_identity(double t, double x) const {
    detail::require(std::isfinite(t) && t > 0.0 && std::isfinite(x) && x > 0.0,
                    "check_convolution_identity: t > 0 and x > 0 required");
    if (!is_brownian())
        throw unsupported_capability(
            "check_convolution_identity: needs the Brownian closed-form "
            "supremum density");
    // V(ds, dx)/dx sections for Brownian are the first-passage law of level x.
    const auto integrand = [this, t, x](double s) -> double {
        if (s <= 0.0 || s >= t) return 0.0;
        const double rho_x =
            x * std::exp(-x * x / (2.0 * s)) / std::sqrt(2.0 * kPi * s * s * s);
        return n_tail(t - s) * rho_x;
    };
    const QuadResult r = integrate_tanh_sinh(integrand, 0.0, t, 1e-13);
    if (!r.converged)
        throw numerics_error("check_convolution_identity: quadrature", r.abs_err);
    const double phi = sup_density(t, x);
    CheckResult out;
    out.quad_err = r.abs_err;
    out.truncated_at = t;
    out.residual = std::abs(r.value - phi) / phi;
    return out;
}

double LevyModel::sample_increment(double dt, Rng& rng) const {
    detail::require(std::isfinite(dt) && dt > 0.0, "sample_increment: dt > 0");
    if (is_brownian()) return std::sqrt(dt) * rng.normal();
    // Chambers-Mallows-Stuck in the rho-parametrized form: continuous in
    // alpha across 1, where it degenerates to Cauchy plus drift tan(pi(rho-1/2)).
    const double v = kPi * (rng.uniform01() - 0.5);
    if (std::abs(alpha_ - 1.0) < 1e-12) {
        return dt * (std::tan(v) + cms_shift_);
    }
    double w;
    do { w = rng.exponential(); } while (w == 0.0);
    const double c = kPi * (rho_ - 0.5);
    const double av_c = alpha_ * (v + c);
    const double draw = cms_scale_ * std::sin(av_c) /
                        std::pow(std::cos(v), 1.0 / alpha_) *
                        std::pow(std::cos(v - av_c) / w, (1.0 - alpha_) / alpha_);
    return std::pow(dt, 1.0 / alpha_) * draw;
}

HqTable::HqTable(const LevyModel& model, double q, double x_max, int points)
    : q_(q), x_max_(x_max) {
    detail::require_arg(points >= 8 && x_max > 0.0 && q > 0.0,
                        "HqTable: need q > 0, x_max > 0, points >= 8");
    dx_ = x_max / (points - 1);
    val_.resize(points);
    slope_.resize(points);
    val_[0] = 0.0;
    for (int i = 1; i < points; ++i) val_[i] = model.h_q(q, i * dx_);
    // Fritsch-Carlson monotone slopes.
    std::vector<double> d(points - 1);
    for (int i = 0; i + 1 < points; ++i) d[i] = (val_[i + 1] - val_[i]) / dx_;
    slope_[0] = d[0];
    slope_[points - 1] = d[points - 2];
    for (int i = 1; i + 1 < points; ++i) {
        if (d[i - 1] * d[i] <= 0.0) slope_[i] = 0.0;
        else slope_[i] = 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]);
    }
}

double HqTable::operator()(double x) const {
    detail::require(std::isfinite(x) && x >= 0.0, "HqTable: x >= 0 required");
    if (x >= x_max_) return val_.back();
    const int i = static_cast<int>(x / dx_);
    const double t = (x - i * dx_) / dx_;
    const double va = val_[i], vb = val_[i + 1];
    const double ma = slope_[i] * dx_, mb = slope_[i + 1] * dx_;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * va + (t3 - 2 * t2 + t) * ma +
           (-2 * t3 + 3 * t2) * vb + (t3 - t2) * mb;
}

}  // namespace levypen
