#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "levypen/levy_models.hpp"
#include "levypen/path_sim.hpp"

namespace levypen {

// Penalization weight f >= 0. Admissibility against a model
// (0 < int f h' < inf) is validated when the pair is first used.
class WeightFn {
public:
    enum class Shape { Indicator, ExpDecay, Table };

    static WeightFn indicator(double a);
    static WeightFn exp_decay(double c);
    // Knots (x, f(x)), x strictly increasing, f >= 0, compact support;
    // evaluated by linear interpolation, zero outside [x_front, x_back].
    static WeightFn table(std::vector<std::pair<double, double>> knots);
    // "indicator:a=<a>" | "expdecay:c=<c>" | "table:<csv path>"
    static WeightFn parse(std::string_view spec);

    double operator()(double x) const;
    Shape shape() const { return shape_; }
    double param() const { return param_; }
    const std::vector<std::pair<double, double>>& knots() const { return knots_; }
    // Smallest u with f = 0 on (u, inf); infinity for ExpDecay.
    double support_end() const;
    double sup_norm() const;
    std::string name() const;

private:
    WeightFn(Shape s, double p) : shape_(s), param_(p) {}
    Shape shape_;
    double param_ = 0.0;
    std::vector<std::pair<double, double>> knots_;
};

// Pair (t, S_t, X_t) with S_t >= max(X_t, 0).
struct MartingaleState {
    double t = 0.0;
    double s = 0.0;
    double x = 0.0;
    void validate() const;
};

// int_s^inf f(x) h'(x - y) dx. Closed form for Indicator on every catalog
// model and for ExpDecay on Brownian; quadrature otherwise.
double weight_tail_integral(const WeightFn& f, const LevyModel& model,
                            double s, double y);

// Normalizer M_0^{(f)} = int_0^inf f(x) h'(x) dx; throws if the pair is
// inadmissible (zero or divergent).
double m0(const WeightFn& f, const LevyModel& model);

// M_t^{(f)} = f(S_t) h(S_t - X_t) + int_{S_t}^inf f(x) h'(x - X_t) dx.
double ay_eval(const WeightFn& f, const LevyModel& model,
               const MartingaleState& st);

// Exponential-clock conditional object
//   N_t^{(q,f)} = e^{-qt} [ f(S_t) h_q(S_t - X_t)
//                           + int_{S_t}^inf f(x) h_q'(x - X_t) dx ],
// already normalized by kappa(q,0) through the h_q normalization.
double n_qf_eval(const WeightFn& f, const LevyModel& model, double q,
                 const MartingaleState& st);

// M_t^{(q,f)} = N_t^{(q,f)} + (q / kappa(q,0)) int_0^t e^{-qs} f(S_s) ds,
// the time integral taken by the trapezoid rule on the path grid.
double m_qf_eval(const WeightFn& f, const LevyModel& model, double q,
                 const PathSample& path, double t);

// Constant-clock conditional object (Brownian only; needs phi closed form):
//   M_t^{(s,f)} = [ f(S_t) P(S_{s-t} <= S_t - X_t)
//                   + int_{S_t}^inf f(x) phi_{s-t}(x - X_t) dx ] / n(s < zeta).
double m_sf_eval(const WeightFn& f, const LevyModel& model, double s_horizon,
                 const MartingaleState& st);

namespace detail {
// int_s^inf f(x) h_q'(x - y) dx (exponential-clock tail).
double weight_tail_integral_hq(const WeightFn& f, const LevyModel& model,
                               double q, double s, double y);
// int_s^inf f(x) phi_tau(x - y) dx (Brownian constant-clock tail).
double weight_tail_integral_phi(const WeightFn& f, const LevyModel& model,
                                double tau, double s, double y);
}  // namespace detail

}  // namespace levypen
