#pragma once

#include <cstdint>
#include <vector>

#include "levypen/levy_models.hpp"
#include "levypen/rng.hpp"

namespace levypen {

// Discretized trajectory on the fixed grid t_i = i * dt together with its
// running supremum. Grid times are implicit (time(i) = i * dt exactly).
struct PathSample {
    double dt = 0.0;
    std::vector<double> x;  // x[0] = 0
    std::vector<double> s;  // running supremum, s[0] = 0, nondecreasing
    bool refined = false;   // bridge-maximum correction applied
    std::uint64_t seed_path = 0;  // replica identifier
    ModelKind origin = ModelKind::BrownianStd;

    std::size_t size() const { return x.size(); }
    double time(std::size_t i) const { return dt * static_cast<double>(i); }
    std::vector<double> times() const;
    double reflected(std::size_t i) const { return s[i] - x[i]; }
};

struct ClockSpec {
    enum class Kind { Exponential, Constant };
    Kind kind;
    double param;  // q for Exponential, horizon s for Constant

    static ClockSpec exponential(double q);
    static ClockSpec constant(double s);
};

double sample_clock(const ClockSpec& spec, Rng& rng);

// One exact transition draw of the model over dt (delegates to the catalog).
double sample_increment(const LevyModel& model, double dt, Rng& rng);

// Path on [0, horizon] with the grid running maximum (unrefined).
PathSample simulate_path(const LevyModel& model, double horizon, double dt,
                         Rng& rng);

// Replaces each cell's endpoint maximum with a draw of the Brownian bridge
// maximum, removing the supremum discretization bias entirely: the refined
// running supremum has exactly the law of S_t given the grid skeleton.
PathSample refine_supremum_brownian(PathSample path, Rng& rng);

struct FirstPassageResult {
    bool censored = false;
    double time = 0.0;  // crossing time (grid resolution) or the cap
    PathSample path;    // stopped at the crossing cell (or at the cap)
};

// Simulates until the (refined, for Brownian) supremum exceeds `level`, or
// returns a censored result at `cap`. E[T] = inf for oscillating models, so
// censoring is an expected outcome, not an error.
FirstPassageResult first_passage(const LevyModel& model, double level,
                                 double dt, double cap, Rng& rng);

// Incremental cell-by-cell walker used by the Monte Carlo experiments; keeps
// only (t, x, sup) and supports cells of varying length so clocks and
// evaluation times can be hit exactly.
class SupWalker {
public:
    SupWalker(const LevyModel& model, bool refine, Rng& increments, Rng& bridge)
        : model_(&model), refine_(refine && model.is_brownian()),
          incr_(&increments), bridge_(&bridge) {}

    void step(double dt);
    // Advance from the current time to `target` in cells of at most `dt`.
    void advance_to(double target, double dt);

    double t() const { return t_; }
    double x() const { return x_; }
    double sup() const { return sup_; }
    bool refined() const { return refine_; }

private:
    const LevyModel* model_;
    bool refine_;
    Rng* incr_;
    Rng* bridge_;
    double t_ = 0.0, x_ = 0.0, sup_ = 0.0;
};

}  // namespace levypen
