#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "levypen/rng.hpp"

namespace levypen {

enum class ModelKind { BrownianStd, Stable };

// Residual of a self-consistency identity together with the quadrature
// diagnostics behind it.
struct CheckResult {
    double residual = 0.0;
    double quad_err = 0.0;
    double truncated_at = 0.0;
};

// Catalog entry for a one-dimensional oscillating process together with its
// analytic ladder bundle: renewal function h, resolvent-weighted h_q, ladder
// exponent kappa, excursion lifetime tail n(s < zeta) and (where available)
// the supremum density phi_t.
//
// Normalization. The renewal function is anchored to the constant-free forms
//   h(x) = x            (Brownian)
//   h(x) = x^{alpha rho} (strictly stable),
// and kappa / n_tail follow the standard strictly-stable slice convention
//   kappa(q,0) = q^rho, kappa(0,lambda) = lambda^{alpha rho},
//   n_tail(s) = s^{-rho} / Gamma(1 - rho).
// For Brownian motion the two conventions coincide (kappa = sqrt(2q)+lambda).
// For stable models they differ by the constant Gamma(1 + alpha rho) =
// ladder_scale(); h_q and every quantity that must converge to h use the
// h-anchored normalization, i.e. the transform partner of h_q is
// kappa(q,lambda)/ladder_scale(). Penalization ratios are invariant to this
// constant by construction.
class LevyModel {
public:
    static LevyModel brownian();
    static LevyModel stable(double alpha, double rho);
    // "brownian" | "stable:alpha=<a>,rho=<r>"
    static LevyModel parse(std::string_view spec);

    ModelKind kind() const { return kind_; }
    bool is_brownian() const { return kind_ == ModelKind::BrownianStd; }
    // Index/positivity in the unified scaling sense; Brownian reports
    // alpha = 2, rho = 1/2.
    double alpha() const { return alpha_; }
    double rho() const { return rho_; }
    bool is_symmetric_stable() const;
    std::string name() const;
    // Documentary characteristic-triplet descriptor (drift, Gaussian part,
    // jump-measure tag); surfaced in report manifests only.
    std::string char_triplet() const;

    // --- ladder bundle ---------------------------------------------------
    double h(double x) const;
    double h_prime(double x) const;
    double h_q(double q, double x) const;
    double hq_prime(double q, double x) const;
    double kappa(double q, double lam) const;
    double n_tail(double s) const;
    bool has_sup_density() const { return is_brownian(); }
    double sup_density(double t, double x) const;
    // P(S_t <= x); closed form exists for Brownian only.
    double sup_cdf(double t, double x) const;
    double gamma_H() const { return is_brownian() ? 1.0 : 0.0; }
    // Gamma(1 + alpha rho): converts between the slice convention of kappa /
    // n_tail and the h-anchored normalization (1 for Brownian).
    double ladder_scale() const;
    // kappa in the h-anchored normalization: kappa(q,lam)/ladder_scale().
    double kappa_h(double q, double lam) const;
    double n_tail_h(double s) const { return n_tail(s) / ladder_scale(); }

    // --- identity checkers -----------------------------------------------
    // | lambda * int_0^inf e^{-lambda x} h_q(x) dx * kappa_h(q,lambda) - 1 |
    CheckResult check_laplace_hq(double q, double lam) const;
    // Brownian only: relative residual of
    // int_0^t n(t-s < zeta) rho_x(s) ds = phi_t(x), where rho_x is the
    // stable-1/2 first-passage density of the ladder section.
    CheckResult check_convolution_identity(double t, double x) const;

    // --- sampling ---------------------------------------------------------
    // Exact transition draw over a step of length dt.
    double sample_increment(double dt, Rng& rng) const;

private:
    LevyModel(ModelKind kind, double alpha, double rho);

    // Joint ladder exponent kappa(q, lambda), q > 0, lambda > 0, in the slice
    // normalization; available for Brownian and symmetric stable models.
    double kappa_joint(double q, double lam) const;

    ModelKind kind_;
    double alpha_;
    double rho_;
    double cms_shift_;  // tan(pi (rho - 1/2)) term of the rho-form CMS sampler
    double cms_scale_;  // (cos(pi alpha (rho - 1/2)))^{-1/alpha}
};

// Immutable per-q cache of h_q on a uniform x grid with monotone cubic
// interpolation; built once (before any sharing across workers) where h_q is
// evaluated in bulk for a stable model.
class HqTable {
public:
    HqTable(const LevyModel& model, double q, double x_max, int points = 1024);
    double operator()(double x) const;
    double q() const { return q_; }

private:
    double q_, x_max_, dx_;
    std::vector<double> val_, slope_;
};

}  // namespace levypen
