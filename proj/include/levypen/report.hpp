#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace levypen {

// One convergence-table row of a penalization experiment.
struct ExperimentRow {
    std::string experiment;
    std::string model;
    std::string weight;
    std::string functional;
    double clock_param = 0.0;
    double estimate = 0.0;
    double std_err = 0.0;
    double target = 0.0;
    double abs_err = 0.0;
    std::size_t n_paths = 0;
    double dt = 0.0;
    std::uint64_t seed = 0;
    bool pass = true;
};

struct IdentityRow {
    std::string model;
    std::string check;
    double param_q = 0.0;
    double param_lambda_or_x = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct ExperimentReport {
    std::vector<ExperimentRow> rows;
    std::vector<IdentityRow> identity_rows;

    bool all_pass() const;
    // CSV bodies with the fixed column schemas. Formatting is deterministic,
    // so identical (config, seed, build) reproduce byte-identical files.
    std::string to_csv() const;
    void write_csv(const std::string& path) const;
};

// Deterministic numeric formatting used by every report column.
std::string format_num(double v);

// Manifest JSON accompanying each CSV: full config, seed, build id, wall time.
std::string manifest_json(const std::map<std::string, std::string>& config,
                          std::uint64_t seed, double wall_time_sec);
void write_manifest(const std::string& csv_path,
                    const std::map<std::string, std::string>& config,
                    std::uint64_t seed, double wall_time_sec);
std::map<std::string, std::string> parse_manifest_config(
    const std::string& json_text);

const char* build_id();

}  // namespace levypen
