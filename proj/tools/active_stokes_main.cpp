// active-stokes: experiment runner CLI.
//
//   active-stokes run <spec-file>   run experiments from a structured-text spec
//   active-stokes check             identity suite with defaults
//   active-stokes export-config     sample a configuration and write a snapshot
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "activestokes/experiments.hpp"
#include "activestokes/io.hpp"
#include "activestokes/parallel.hpp"
#include "activestokes/suspension.hpp"

namespace {

void print_summary(const astk::RunSummary& summary) {
    for (const auto& r : summary.results) {
        int failed = 0;
        for (const auto& c : r.checks)
            if (!c.passed) ++failed;
        std::printf("[%s] %s: %zu checks, %d failed (%s, %s)\n", r.passed ? "PASS" : "FAIL",
                    r.id.c_str(), r.checks.size(), failed, r.csv_path.c_str(),
                    r.meta_path.c_str());
        for (const auto& c : r.checks)
            if (!c.passed)
                std::printf("       FAIL %s: measured %.6g, threshold %.6g\n", c.name.c_str(),
                            c.measured, c.threshold);
    }
    std::printf("%d/%d experiments passed\n", summary.total - summary.failed, summary.total);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"active-stokes: dilute active-suspension experiments"};
    app.require_subcommand(1);

    std::string spec_path, out_dir = "out";
    std::uint64_t seed = 0;
    int threads = 0;
    double tolerance_scale = 1.0;
    app.add_option("--seed", seed, "master seed override");
    app.add_option("--threads", threads, "worker thread count (0 = default)");
    app.add_option("--out-dir", out_dir, "output directory");
    app.add_option("--tolerance-scale", tolerance_scale, "scale all check tolerances");

    auto* run_cmd = app.add_subcommand("run", "run experiments from a spec file");
    run_cmd->add_option("spec", spec_path, "structured-text experiment spec")->required();

    auto* check_cmd = app.add_subcommand("check", "identity suite with default parameters");

    auto* export_cmd = app.add_subcommand("export-config", "sample and save a configuration");
    long ex_n = 1000;
    double ex_lambda = 0.01, ex_c = 1.0, ex_beta = 2.0;
    std::string ex_density = "uniform", ex_path = "config.txt", ex_mode = "strict";
    export_cmd->add_option("--n", ex_n, "particle count");
    export_cmd->add_option("--lambda", ex_lambda, "volume fraction");
    export_cmd->add_option("--sep-c", ex_c, "separation constant c");
    export_cmd->add_option("--beta", ex_beta, "force offset factor beta");
    export_cmd->add_option("--density", ex_density, "uniform | dirac | vmf:<kappa>");
    export_cmd->add_option("--mode", ex_mode, "strict | relaxed");
    export_cmd->add_option("--out", ex_path, "snapshot path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (threads > 0) astk::set_thread_count(threads);

        if (run_cmd->parsed() || check_cmd->parsed()) {
            std::vector<astk::ExperimentSpec> specs;
            if (check_cmd->parsed()) {
                specs.push_back(astk::default_spec("identity_checks"));
            } else {
                specs = astk::parse_spec_file(spec_path);
            }
            for (auto& s : specs) {
                if (seed != 0) s.seed = seed;
                if (threads > 0) s.threads = threads;
                if (out_dir != "out" || s.out_dir.empty()) s.out_dir = out_dir;
                s.tolerance_scale *= tolerance_scale;
            }
            astk::RunSummary summary = astk::run_all(specs);
            print_summary(summary);
            return summary.exit_code();
        }

        if (export_cmd->parsed()) {
            astk::OrientationDensity density = astk::OrientationDensity::uniform();
            if (ex_density == "dirac") {
                density = astk::OrientationDensity::dirac_aligned({0, 0, 1});
            } else if (ex_density.rfind("vmf:", 0) == 0) {
                density = astk::OrientationDensity::axisymmetric_smooth(
                    {0, 0, 1}, std::stod(ex_density.substr(4)));
            } else if (ex_density != "uniform") {
                std::fprintf(stderr, "unknown density family '%s'\n", ex_density.c_str());
                return 2;
            }
            auto mode = ex_mode == "relaxed" ? astk::SampleMode::relaxed : astk::SampleMode::strict;
            astk::SuspensionConfig cfg = astk::sample_configuration(
                density, ex_n, ex_lambda, ex_c, ex_beta, seed ? seed : 20240817, mode);
            astk::save_config(cfg, ex_path);
            std::printf("wrote %s (N=%ld, a=%.6g, min gap=%.6g)\n", ex_path.c_str(), cfg.N, cfg.a,
                        cfg.min_center_gap());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
