#include "levypen/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "levypen/errors.hpp"

#ifndef LEVYPEN_BUILD_ID
#define LEVYPEN_BUILD_ID "unversioned"
#endif

namespace levypen {

std::string format_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {
// Quote fields that would break the comma-separated schema (the stable model
// spec string contains commas).
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}
}  // namespace

bool ExperimentReport::all_pass() const {
    for (const auto& r : rows)
        if (!r.pass) return false;
    for (const auto& r : identity_rows)
        if (!r.pass) return false;
    return true;
}

std::string ExperimentReport::to_csv() const {
    std::ostringstream os;
    if (!identity_rows.empty()) {
        os << "model,check,param_q,param_lambda_or_x,residual,tolerance,pass\n";
        for (const auto& r : identity_rows) {
            os << csv_field(r.model) << ',' << r.check << ','
               << format_num(r.param_q)
               << ',' << format_num(r.param_lambda_or_x) << ','
               << format_num(r.residual) << ',' << format_num(r.tolerance)
               << ',' << (r.pass ? "true" : "false") << '\n';
        }
    }
    if (!rows.empty()) {
        os << "experiment,model,weight,functional,clock_param,estimate,"
              "std_err,target,abs_err,n_paths,dt,seed,pass\n";
        for (const auto& r : rows) {
            os << r.experiment << ',' << csv_field(r.model) << ','
               << csv_field(r.weight) << ',' << csv_field(r.functional) << ','
               << format_num(r.clock_param) << ','
               << format_num(r.estimate) << ',' << format_num(r.std_err) << ','
               << format_num(r.target) << ',' << format_num(r.abs_err) << ','
               << r.n_paths << ',' << format_num(r.dt) << ',' << r.seed << ','
               << (r.pass ? "true" : "false") << '\n';
        }
    }
    return os.str();
}

void ExperimentReport::write_csv(const std::string& path) const {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out.good())
        throw std::runtime_error("cannot open report file: " + path);
    out << to_csv();
}

std::string manifest_json(const std::map<std::string, std::string>& config,
                          std::uint64_t seed, double wall_time_sec) {
    nlohmann::json j;
    j["config"] = config;
    j["seed"] = seed;
    j["build_id"] = build_id();
    j["wall_time_sec"] = wall_time_sec;
    return j.dump(2) + "\n";
}

void write_manifest(const std::string& csv_path,
                    const std::map<std::string, std::string>& config,
                    std::uint64_t seed, double wall_time_sec) {
    const std::string path = csv_path + ".manifest.json";
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out.good())
        throw std::runtime_error("cannot open manifest file: " + path);
    out << manifest_json(config, seed, wall_time_sec);
}

std::map<std::string, std::string> parse_manifest_config(
    const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : j.at("config").items())
        out[k] = v.get<std::string>();
    return out;
}

const char* build_id() { return LEVYPEN_BUILD_ID; }

}  // namespace levypen
