#pragma once

#include <functional>

namespace levypen {

struct QuadResult {
    double value = 0.0;
    double abs_err = 0.0;      // estimated absolute error
    int evals = 0;
    double truncated_at = 0.0;  // upper limit actually used (semi-infinite only)
    bool converged = true;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod 15(7) on a finite interval. Subdivides until the
// local error estimate satisfies abs_tol + rel_tol * |I|.
QuadResult integrate_gk(const Integrand& f, double a, double b,
                        double abs_tol = 1e-12, double rel_tol = 1e-10,
                        int max_depth = 30);

// Tanh-sinh (double exponential) rule on a finite interval. Robust to
// integrable endpoint singularities (log or power with exponent > -1).
QuadResult integrate_tanh_sinh(const Integrand& f, double a, double b,
                               double tol = 1e-12, int max_level = 12);

// Semi-infinite integral over [a, inf) for integrands with decaying tails.
// Accumulates geometrically growing blocks until a block contributes less
// than tail_frac of the running total; the truncation point is reported.
QuadResult integrate_upper(const Integrand& f, double a,
                           double tail_frac = 1e-12, double first_block = 1.0,
                           double tol = 1e-12, int max_blocks = 128);

}  // namespace levypen
