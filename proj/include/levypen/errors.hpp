#pragma once

#include <stdexcept>
#include <string>

namespace levypen {

// Thrown when a quantity is requested from a model that does not provide it
// (e.g. a closed-form supremum density for a stable model), as opposed to a
// silent fallback.
class unsupported_capability : public std::runtime_error {
public:
    explicit unsupported_capability(const std::string& what)
        : std::runtime_error(what) {}
};

// Thrown when a numerical routine fails to reach its requested tolerance.
// Carries the tolerance actually achieved.
class numerics_error : public std::runtime_error {
public:
    numerics_error(const std::string& what, double achieved_tol)
        : std::runtime_error(what + " (achieved tolerance " +
                             std::to_string(achieved_tol) + ")"),
          achieved(achieved_tol) {}
    double achieved;
};

// Thrown when a Monte Carlo experiment degenerates (e.g. the denominator of a
// penalization ratio estimates to zero mass).
class degenerate_experiment : public std::runtime_error {
public:
    explicit degenerate_experiment(const std::string& what)
        : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::domain_error(msg);
}

inline void require_arg(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace detail

}  // namespace levypen
