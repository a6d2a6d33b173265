#include "levypen/quadrature.hpp"

#include <cmath>
#include <vector>

#include "levypen/errors.hpp"

namespace levypen {

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1, 1] (embedded 7-point Gauss).
const double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

const double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Gk15 {
    double kronrod, err;
    int evals;
};

Gk15 gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    Gk15 r;
    r.kronrod = resk * h;
    r.err = std::abs((resk - resg) * h);
    // Sharpen the raw (K-G) difference the usual way.
    if (r.err != 0.0) {
        const double scale = std::pow(200.0 * r.err / std::abs(resk * h + 1e-300), 1.5);
        if (scale < 1.0) r.err = std::abs(resk * h) * scale + 1e-300;
    }
    r.evals = 15;
    return r;
}

void gk_adaptive(const Integrand& f, double a, double b, double abs_tol,
                 double rel_tol, int depth, int max_depth, QuadResult& out) {
    const Gk15 r = gk15(f, a, b);
    out.evals += r.evals;
    if (depth >= max_depth ||
        r.err <= abs_tol + rel_tol * std::abs(r.kronrod)) {
        out.value += r.kronrod;
        out.abs_err += r.err;
        if (depth >= max_depth && r.err > abs_tol + rel_tol * std::abs(r.kronrod))
            out.converged = false;
        return;
    }
    const double c = 0.5 * (a + b);
    gk_adaptive(f, a, c, 0.5 * abs_tol, rel_tol, depth + 1, max_depth, out);
    gk_adaptive(f, c, b, 0.5 * abs_tol, rel_tol, depth + 1, max_depth, out);
}

}  // namespace

QuadResult integrate_gk(const Integrand& f, double a, double b, double abs_tol,
                        double rel_tol, int max_depth) {
    QuadResult out;
    if (a == b) return out;
    gk_adaptive(f, a, b, abs_tol, rel_tol, 0, max_depth, out);
    out.truncated_at = b;
    return out;
}

QuadResult integrate_tanh_sinh(const Integrand& f, double a, double b,
                               double tol, int max_level) {
    QuadResult out;
    if (a == b) return out;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double pi_half = 1.5707963267948966;

    // Level 0: trapezoid in t with h = 1 over |t| <= t_max.
    const double t_max = 6.5;
    double h = 1.0;
    (void)mid;
    // Nodes are taken as stable offsets from the nearer endpoint so that
    // integrable endpoint singularities keep their mass: with
    // s = (pi/2) sinh t, 1 -+ tanh(s) = 2 e^{-+2s} / (1 + e^{-+2s}) without
    // cancellation, and the offset survives down to the underflow threshold
    // when the singular endpoint sits at zero.
    auto eval = [&](double t) -> double {
        const double s = pi_half * std::sinh(t);
        const double e2 = std::exp(-2.0 * std::abs(s));
        const double delta = half * 2.0 * e2 / (1.0 + e2);
        const double x = (t <= 0.0) ? a + delta : b - delta;
        if (delta <= 0.0 || x <= a || x >= b) return 0.0;
        // 1/cosh^2(s) = 4 e^{-2|s|} / (1 + e^{-2|s|})^2
        const double w =
            half * pi_half * std::cosh(t) * 4.0 * e2 / ((1.0 + e2) * (1.0 + e2));
        const double v = f(x);
        return std::isfinite(v) ? w * v : 0.0;
    };

    double sum = eval(0.0);
    for (double t = h; t <= t_max; t += h) sum += eval(t) + eval(-t);
    double prev = sum * h;
    double prev_diff = std::numeric_limits<double>::infinity();

    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (double t = h; t <= t_max; t += 2.0 * h) add += eval(t) + eval(-t);
        sum += add;
        const double cur = sum * h;
        out.evals += static_cast<int>(2.0 * t_max / h / 2.0) + 1;
        const double diff = std::abs(cur - prev);
        // Accept on reaching the tolerance, or on a rounding plateau where
        // refinement no longer improves an already-small difference.
        const bool at_tol = diff <= tol * (std::abs(cur) + 1e-300);
        const bool plateau = diff <= 1e-10 * (std::abs(cur) + 1e-300) &&
                             diff >= 0.25 * prev_diff;
        if (level >= 3 && (at_tol || plateau)) {
            out.value = cur;
            out.abs_err = diff;
            out.truncated_at = b;
            return out;
        }
        prev = cur;
        prev_diff = diff;
    }
    out.value = prev;
    out.abs_err = prev_diff;
    out.truncated_at = b;
    // Genuine failure only when the refinement still moved the estimate.
    out.converged = prev_diff <= 1e-9 * (std::abs(prev) + 1e-300);
    return out;
}

QuadResult integrate_upper(const Integrand& f, double a, double tail_frac,
                           double first_block, double tol, int max_blocks) {
    QuadResult out;
    double lo = a;
    double len = first_block;
    double acc = 0.0, err = 0.0;
    int quiet = 0;
    for (int k = 0; k < max_blocks; ++k) {
        const QuadResult blk = integrate_gk(f, lo, lo + len, tol, tol, 24);
        acc += blk.value;
        err += blk.abs_err;
        out.evals += blk.evals;
        lo += len;
        len *= 2.0;
        if (std::abs(blk.value) <= tail_frac * std::abs(acc) + 1e-300) {
            if (++quiet >= 2) {
                out.value = acc;
                out.abs_err = err;
                out.truncated_at = lo;
                return out;
            }
        } else {
            quiet = 0;
        }
    }
    throw numerics_error("integrate_upper: tail did not decay", err);
}

}  // namespace levypen
