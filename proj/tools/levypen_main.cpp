#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "levypen/cli.hpp"
#include "levypen/path_sim.hpp"
#include "levypen/penalization.hpp"

namespace {

// Little-endian binary path dump: dt (f64), n (u64, number of grid points),
// x[0..n-1] (f64), s[0..n-1] (f64).
void dump_path(const levypen::PathSample& p, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw std::runtime_error("cannot open dump file: " + path);
    const std::uint64_t n = p.size();
    out.write(reinterpret_cast<const char*>(&p.dt), sizeof(double));
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    out.write(reinterpret_cast<const char*>(p.x.data()),
              static_cast<std::streamsize>(n * sizeof(double)));
    out.write(reinterpret_cast<const char*>(p.s.data()),
              static_cast<std::streamsize>(n * sizeof(double)));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "levypen: supremum-penalization experiments for Levy processes"};
    app.require_subcommand(1);

    levypen::RunConfig cfg;
    std::string config_file;
    std::string clock_list;
    std::string refine_str = "on";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_file, "key=value config file");
        sub->add_option("--model", cfg.model,
                        "brownian | stable:alpha=<a>,rho=<r>");
        sub->add_option("--weight", cfg.weight,
                        "indicator:a=<a> | expdecay:c=<c> | table:<csv>");
        sub->add_option("--functional", cfg.functional,
                        "one | xle:b=<b> | sle:b=<b> | logistic");
        sub->add_option("--clock", clock_list,
                        "comma-separated clock grid (q, s, or t values)");
        sub->add_option("--t", cfg.t, "evaluation time t");
        sub->add_option("--dt", cfg.dt, "grid step");
        sub->add_option("--paths", cfg.n_paths, "number of Monte Carlo paths");
        sub->add_option("--seed", cfg.seed, "master seed");
        sub->add_option("--out", cfg.out, "CSV output path (+ manifest)");
        sub->add_option("--refine", refine_str,
                        "bridge-maximum refinement: on | off");
        sub->add_option("--threads", cfg.threads,
                        "worker cap (0 = LEVY_PENALIZE_THREADS or hardware)");
        sub->add_option("--bootstrap", cfg.bootstrap,
                        "audit ratio standard errors by bootstrap (resamples)");
        return sub;
    };

    auto* identities = add_common(app.add_subcommand(
        "identities", "ladder/Laplace self-consistency residuals"));
    auto* exp_clock = add_common(app.add_subcommand(
        "exp-clock", "exponential-clock penalization ratios vs the limit"));
    auto* const_clock = add_common(app.add_subcommand(
        "const-clock", "constant-clock penalization ratios vs the limit"));
    auto* mass = add_common(app.add_subcommand(
        "mass", "normalized weight mass E[f(S_clock)] / normalizer"));
    mass->add_option("--clock-kind", cfg.clock_kind, "exp | const");
    auto* pensample = add_common(app.add_subcommand(
        "penalized-sample",
        "importance-weighted law of S_t vs the penalized S_inf law"));
    auto* decompose = add_common(app.add_subcommand(
        "decompose", "explicit path-decomposition sampler diagnostics"));
    decompose->add_option("--u-max", cfg.u_max, "post-maximum window");
    decompose->add_option("--cap", cfg.cap, "first-passage censoring cap");
    auto* crosscheck = add_common(app.add_subcommand(
        "crosscheck", "importance vs decomposition X_t marginals"));
    auto* debug_dump = add_common(app.add_subcommand(
        "debug-dump", "simulate one path and write the binary dump"));
    double horizon = 1.0;
    std::string dump_file = "path.bin";
    debug_dump->add_option("--horizon", horizon, "simulation horizon");
    debug_dump->add_option("--file", dump_file, "output file");

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!config_file.empty()) {
            levypen::RunConfig file_cfg =
                levypen::load_config_file(config_file, sub->get_name());
            // Flags given explicitly on the command line override the file.
            static const std::pair<const char*, const char*> kFlagOf[] = {
                {"model", "--model"},       {"weight", "--weight"},
                {"functional", "--functional"}, {"t", "--t"},
                {"dt", "--dt"},             {"paths", "--paths"},
                {"seed", "--seed"},         {"out", "--out"},
                {"threads", "--threads"},   {"clock_kind", "--clock-kind"},
                {"u_max", "--u-max"},       {"cap", "--cap"}};
            auto merged = file_cfg.to_map();
            const auto flags = cfg.to_map();
            for (const auto& [key, flag] : kFlagOf) {
                const auto* opt = sub->get_option_no_throw(flag);
                if (opt != nullptr && opt->count() > 0) merged[key] = flags.at(key);
            }
            if (!clock_list.empty()) merged["clock"] = clock_list;
            const auto* refine_opt = sub->get_option_no_throw("--refine");
            if (refine_opt != nullptr && refine_opt->count() > 0)
                merged["refine"] = refine_str;
            cfg = levypen::RunConfig::from_map(merged);
            refine_str = merged.count("refine") ? merged["refine"] : refine_str;
        } else {
            cfg.clock_grid = levypen::parse_grid(clock_list);
        }
        cfg.refine = (refine_str != "off" && refine_str != "false");
        cfg.suite = sub->get_name();

        if (sub == debug_dump) {
            levypen::Rng rng(cfg.seed, 0, levypen::StreamPurpose::increments);
            levypen::Rng brg(cfg.seed, 0, levypen::StreamPurpose::bridge);
            const auto model = levypen::LevyModel::parse(cfg.model);
            auto path = levypen::simulate_path(model, horizon, cfg.dt, rng);
            if (cfg.refine && model.is_brownian())
                path = levypen::refine_supremum_brownian(std::move(path), brg);
            dump_path(path, dump_file);
            std::cout << "wrote " << path.size() << " points to " << dump_file
                      << "\n";
            return 0;
        }

        (void)identities; (void)exp_clock; (void)const_clock; (void)mass;
        (void)pensample; (void)decompose; (void)crosscheck;
        const levypen::ExperimentReport rep = levypen::run_suite(cfg);
        return rep.all_pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
