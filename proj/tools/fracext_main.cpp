// Command-line driver for the dyadic extension pipeline: geometry selection,
// Whitney decomposition, thickness certification, fattening, extension and
// norm reports. Exit codes: 0 success, 2 contract violation, 3 config error.

#include <CLI11.hpp>
#include <iostream>

#include "fracext/parallel.hpp"
#include "fracext/report.hpp"

namespace {

using fracext::RunConfig;

void add_common(CLI::App* app, RunConfig& cfg) {
    app->add_option("--geometry", cfg.geometry,
                    "halfplane | disk | cusp_touching_halfplane | exp_whitney_cusp | "
                    "interval_with_endpoint_D");
    app->add_option("--geometry-param", cfg.geometry_params,
                    "geometry parameter overrides, e.g. radius=0.5");
    app->add_option("--geometry-config", cfg.geometry_config,
                    "JSON file {name, resolution_level, parameters}; flags override");
    app->add_option("--level", cfg.level, "finest dyadic resolution level")
        ->check(CLI::Range(3, 14));
    app->add_option("--s", cfg.s, "fractional order, 0 < s < 1");
    app->add_option("--p", cfg.p, "integrability exponent, 0 < p < inf");
    app->add_option("--seed", cfg.seed, "global RNG seed");
    app->add_option("--mc-samples", cfg.mc_samples, "Monte-Carlo samples per ball");
    app->add_option("--centers", cfg.centers, "thickness check: number of centers");
    app->add_option("--radii", cfg.radii, "thickness check: radii per center");
    app->add_option("--threshold", cfg.threshold, "thickness pass threshold");
    app->add_option("--fat-threshold", cfg.fat_threshold,
                    "pass threshold for the fattened set");
    app->add_flag("--bias-tip", cfg.bias_tip, "bias centers toward the accumulation point");
    app->add_option("--expect", cfg.expect, "none | pass | fail (nonzero exit on mismatch)")
        ->check(CLI::IsMember({"none", "pass", "fail"}));
    app->add_option("--out", cfg.out_dir, "output directory");
    app->add_option("--threads", cfg.threads, "worker thread cap (0 = hardware)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical pipeline for weighted fractional Sobolev extension experiments"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* decompose = app.add_subcommand("decompose", "Whitney decomposition of bbox \\ cl(N)");
    add_common(decompose, cfg);
    decompose->add_flag("--adjacency", cfg.adjacency, "also export cube adjacency pairs");

    auto* check = app.add_subcommand("check-itc", "interior thickness certification");
    add_common(check, cfg);
    check->add_option("--centers-on", cfg.centers_on, "n | boundary | interior")
        ->check(CLI::IsMember({"n", "boundary", "interior"}));

    auto* degen = app.add_subcommand("check-degenerate",
                                     "degenerate thickness check (radii capped by dist to D)");
    add_common(degen, cfg);

    auto* fatten = app.add_subcommand("fatten", "build the fattened domain and verify it");
    add_common(fatten, cfg);

    auto* norms = app.add_subcommand("norms", "seminorm / L^p / weighted-norm quadrature");
    add_common(norms, cfg);
    norms->add_option("--family", cfg.family,
                      "hardy_power | smooth_bump | random_trig | indicator_negative_control");
    norms->add_option("--input", cfg.input_csv, "grid-function CSV to evaluate instead");

    auto* extend = app.add_subcommand("extend", "run the extension on one corpus function");
    add_common(extend, cfg);
    extend->add_option("--family", cfg.family, "corpus family");

    auto* report = app.add_subcommand("report", "full pipeline run with a corpus sweep");
    add_common(report, cfg);
    report->add_option("--levels", cfg.levels, "resolution levels to sweep");
    report->add_option("--p-list", cfg.p_list, "integrability exponents to sweep");
    report->add_option("--corpus-per-p", cfg.corpus_per_p, "corpus functions per exponent");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    if (cfg.threads > 0) fracext::set_max_threads(cfg.threads);

    try {
        fracext::apply_geometry_config(cfg);
        if (decompose->parsed()) {
            cfg.command = "decompose";
            return fracext::cmd_decompose(cfg);
        }
        if (check->parsed()) {
            cfg.command = "check-itc";
            return fracext::cmd_check_itc(cfg);
        }
        if (degen->parsed()) {
            cfg.command = "check-degenerate";
            return fracext::cmd_check_degenerate(cfg);
        }
        if (fatten->parsed()) {
            cfg.command = "fatten";
            return fracext::cmd_fatten(cfg);
        }
        if (norms->parsed()) {
            cfg.command = "norms";
            return fracext::cmd_norms(cfg);
        }
        if (extend->parsed()) {
            cfg.command = "extend";
            return fracext::cmd_extend(cfg);
        }
        cfg.command = "report";
        return fracext::run_report(cfg).exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "{\"error\":\"config\",\"message\":\"" << e.what() << "\"}\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"contract\",\"message\":\"" << e.what() << "\"}\n";
        return 2;
    }
}
