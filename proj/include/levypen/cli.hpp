#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "levypen/report.hpp"

namespace levypen {

// Flat experiment configuration; mirrored one-to-one by CLI flags and by the
// key=value config file format ([section] headers scope keys to one suite).
struct RunConfig {
    std::string suite;
    std::string model = "brownian";
    std::string weight = "indicator:a=1";
    std::string functional = "xle:b=0";
    std::string clock_kind = "exp";  // mass suite: "exp" or "const"
    std::vector<double> clock_grid;  // q values, s values, or t grid
    double t = 0.25;
    double dt = 1e-3;
    std::size_t n_paths = 10000;
    std::uint64_t seed = 1;
    std::string out;  // CSV path; empty = print only
    bool refine = true;
    int threads = 0;
    double u_max = 1.0;   // decompose: post-maximum window
    double cap = 256.0;   // decompose: first-passage censoring cap
    int bootstrap = 0;    // > 0: bootstrap-resample ratio standard errors
    // Per-suite pass tolerances; defaults follow the module contracts.
    std::map<std::string, double> tol;

    std::map<std::string, std::string> to_map() const;
    static RunConfig from_map(const std::map<std::string, std::string>& m);
    double tol_or(const std::string& key, double fallback) const;
};

// key=value file with optional [suite] sections; later keys win.
RunConfig load_config_file(const std::string& path,
                           const std::string& suite_hint = "");
std::vector<double> parse_grid(const std::string& csv_list);

// Executes the configured suite, prints rows, writes CSV + manifest when
// `out` is set. Returns the report; exit code should be 0 iff all rows pass.
ExperimentReport run_suite(const RunConfig& config);

}  // namespace levypen
