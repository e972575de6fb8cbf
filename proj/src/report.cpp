#include "fracext/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>

#include "fracext/corpus.hpp"
#include "fracext/extension.hpp"
#include "fracext/parallel.hpp"

namespace fracext {

namespace {

// wall-clock phase logging to stderr, opt-in via FRACEXT_TIMING=1; artifacts
// stay byte-stable
struct PhaseTimer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    bool on = std::getenv("FRACEXT_TIMING") != nullptr;
    void lap(const std::string& what) {
        const auto t1 = std::chrono::steady_clock::now();
        if (on)
            std::cerr << "[timing] " << what << " "
                      << std::chrono::duration<double>(t1 - t0).count() << "s\n";
        t0 = t1;
    }
};

constexpr int kExitContract = 2;

ThicknessProtocol protocol_of(const RunConfig& cfg) {
    ThicknessProtocol tp;
    tp.centers = cfg.centers;
    tp.radii = cfg.radii;
    tp.mc_samples = cfg.mc_samples;
    tp.seed = cfg.seed;
    tp.bias_to_accumulation = cfg.bias_tip;
    return tp;
}

RegionSpec region_of(const RunConfig& cfg, int level) {
    return builtin_geometry(cfg.geometry, level, cfg.geometry_params);
}

}  // namespace

// {"name": ..., "resolution_level": ..., "parameters": {...}}; flags override
void apply_geometry_config(RunConfig& cfg) {
    if (cfg.geometry_config.empty()) return;
    ojson j;
    try {
        j = ojson::parse(read_file(cfg.geometry_config));
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("geometry config: ") + e.what());
    }
    if (!j.contains("name")) throw std::invalid_argument("geometry config: missing 'name'");
    cfg.geometry = j.at("name").get<std::string>();
    if (j.contains("resolution_level")) cfg.level = j.at("resolution_level").get<int>();
    if (j.contains("parameters"))
        for (const auto& [k, v] : j.at("parameters").items())
            cfg.geometry_params[k] = v.get<double>();
}

namespace {

std::string cfg_comment(const RunConfig& cfg) { return cfg.to_json().dump(); }

int check_expectation(const RunConfig& cfg, bool pass, ojson& j) {
    j["verdict"] = pass ? "PASS" : "FAIL";
    if (cfg.expect == "pass" && !pass) {
        j["error"] = "expected PASS but the check failed";
        return kExitContract;
    }
    if (cfg.expect == "fail" && pass) {
        j["error"] = "expected FAIL but the check passed";
        return kExitContract;
    }
    return 0;
}

std::vector<CorpusSpec> corpus_for(const RunConfig& cfg, double p, const RegionSpec& region) {
    FractionalParams params{cfg.s, p, region.dim};
    std::vector<CorpusSpec> specs;
    for (int i = 0; i < cfg.corpus_per_p; ++i) {
        CorpusSpec cs;
        cs.params = params;
        cs.region = region.name;
        const bool has_d = !region.cloud_D.empty();
        if (i == 0 && has_d) {
            cs.family = CorpusFamily::hardy_power;
            cs.alpha = cfg.s + 0.1;
        } else if (i <= 1) {
            cs.family = CorpusFamily::random_trig;
            cs.seed = 101 + static_cast<std::uint64_t>(i);
        } else if (i == 2) {
            cs.family = CorpusFamily::smooth_bump;
        } else {
            cs.family = CorpusFamily::random_trig;
            cs.seed = 100 + static_cast<std::uint64_t>(i);
        }
        specs.push_back(cs);
    }
    return specs;
}

}  // namespace

ojson RunConfig::to_json() const {
    ojson j;
    j["command"] = command;
    j["geometry"] = geometry;
    if (!geometry_params.empty()) j["geometry_params"] = geometry_params;
    j["level"] = level;
    j["levels"] = levels;
    j["s"] = s;
    j["p"] = p;
    j["p_list"] = p_list;
    j["seed"] = seed;
    j["mc_samples"] = mc_samples;
    j["centers"] = centers;
    j["radii"] = radii;
    j["threshold"] = threshold;
    j["fat_threshold"] = fat_threshold;
    j["bias_tip"] = bias_tip;
    j["corpus_per_p"] = corpus_per_p;
    j["family"] = family;
    j["centers_on"] = centers_on;
    j["expect"] = expect;
    if (!input_csv.empty()) j["input_csv"] = input_csv;
    j["out_dir"] = out_dir;
    j["threads"] = threads;
    return j;
}

int cmd_decompose(const RunConfig& cfg) {
    const RegionSpec region = region_of(cfg, cfg.level);
    const WhitneyDecomposition w = whitney_decompose(region.cloud_N, region.bbox, cfg.level);
    const WhitneyReport rep = verify_whitney(w);
    ensure_dir(cfg.out_dir);
    write_file(cfg.out_dir + "/whitney_cubes.csv",
               cubes_to_csv(w.cubes, region.dim, cfg_comment(cfg)));
    if (cfg.adjacency) {
        std::string adj = "# " + cfg_comment(cfg) + "\ncube_a,cube_b\n";
        for (std::size_t i = 0; i < w.cubes.size(); ++i)
            for (std::size_t j = i + 1; j < w.cubes.size(); ++j)
                if (cubes_touch(w.cubes[i], w.cubes[j]))
                    adj += std::to_string(i) + "," + std::to_string(j) + "\n";
        write_file(cfg.out_dir + "/whitney_adjacency.csv", adj);
    }
    ojson j;
    j["config"] = cfg.to_json();
    j["cubes"] = rep.cube_count;
    j["disjoint"] = rep.disjoint;
    j["ratio_min"] = rep.ratio_min;
    j["ratio_max"] = rep.ratio_max;
    j["cover_defect_volume"] = rep.cover_defect_volume;
    j["collar_ok"] = rep.collar_ok;
    j["dist_tolerance"] = rep.dist_tolerance;
    write_file(cfg.out_dir + "/whitney_summary.json", j.dump(2) + "\n");
    const bool ok = rep.disjoint && rep.ratio_min >= 1.0 && rep.ratio_max <= 4.0;
    return ok ? 0 : kExitContract;
}

int cmd_check_itc(const RunConfig& cfg) {
    const RegionSpec region = region_of(cfg, cfg.level);
    const ThicknessProtocol tp = protocol_of(cfg);
    ThicknessReport rep;
    const Pt* tip =
        region.accumulation_point ? &*region.accumulation_point : nullptr;
    if (cfg.centers_on == "interior") {
        rep = check_itc(view_of(region), tp);
    } else if (cfg.centers_on == "boundary") {
        rep = check_itc_in(view_of(region), region.cloud_boundary, tp, tip);
    } else {
        rep = check_itc_in(view_of(region), region.cloud_itc_N, tp, tip);
    }
    ensure_dir(cfg.out_dir);
    write_file(cfg.out_dir + "/itc_samples.csv",
               thickness_to_csv(rep, region.dim, cfg_comment(cfg)));
    ojson j;
    j["config"] = cfg.to_json();
    j["report"] = thickness_to_json(rep, region.dim);
    j["threshold"] = cfg.threshold;
    const int code = check_expectation(cfg, rep.pass(cfg.threshold), j);
    write_file(cfg.out_dir + "/itc_summary.json", j.dump(2) + "\n");
    return code;
}

int cmd_check_degenerate(const RunConfig& cfg) {
    const RegionSpec region = region_of(cfg, cfg.level);
    const ThicknessProtocol tp = protocol_of(cfg);
    const ThicknessReport plain =
        check_itc_in(view_of(region), region.cloud_itc_N, tp, nullptr);
    const ThicknessReport degen =
        check_degenerate_itc(view_of(region), region.cloud_itc_N, region.cloud_D_fine, tp);
    ensure_dir(cfg.out_dir);
    write_file(cfg.out_dir + "/degenerate_samples.csv",
               thickness_to_csv(degen, region.dim, cfg_comment(cfg)));
    ojson j;
    j["config"] = cfg.to_json();
    j["plain_itc_in_n"] = thickness_to_json(plain, region.dim);
    j["degenerate"] = thickness_to_json(degen, region.dim);
    j["threshold"] = cfg.threshold;
    j["plain_verdict"] = plain.pass(cfg.threshold) ? "PASS" : "FAIL";
    const int code = check_expectation(cfg, degen.pass(cfg.threshold), j);
    write_file(cfg.out_dir + "/degenerate_summary.json", j.dump(2) + "\n");
    return code;
}

int cmd_fatten(const RunConfig& cfg) {
    const RegionSpec region = region_of(cfg, cfg.level);
    const WhitneyDecomposition w = whitney_decompose(region.cloud_N, region.bbox, cfg.level);
    const FattenedDomain fat = fatten(region, w);
    const Lemma31Report l31 = lemma31_ratio(fat, 100000, cfg.seed);
    const ThicknessReport fat_itc =
        check_itc_in(fat.view(), fat.boundary_cloud, protocol_of(cfg));
    ensure_dir(cfg.out_dir);
    write_file(cfg.out_dir + "/sigma_cubes.csv",
               cubes_to_csv(fat.sigma, region.dim, cfg_comment(cfg)));
    if (region.dim == 2) {
        FractionalParams params{cfg.s, cfg.p, region.dim};
        const GridFunction m =
            build_grid(fat.view(), std::min(cfg.level, 9), params, [](const Pt&) { return 0.0; });
        write_file(cfg.out_dir + "/fattened_mask.pgm", mask_to_pgm(m));
    }
    ojson j;
    j["config"] = cfg.to_json();
    j["sigma_cubes"] = fat.sigma.size();
    j["lemma31"] = {{"min_ratio", l31.vacuous ? ojson() : ojson(l31.min_ratio)},
                    {"pairs_used", l31.pairs_used},
                    {"vacuous", l31.vacuous}};
    j["fattened_itc"] = thickness_to_json(fat_itc, region.dim);
    j["fat_threshold"] = cfg.fat_threshold;
    const int code = check_expectation(cfg, fat_itc.pass(cfg.fat_threshold), j);
    write_file(cfg.out_dir + "/fatten_summary.json", j.dump(2) + "\n");
    return code;
}

int cmd_norms(const RunConfig& cfg) {
    const RegionSpec region = region_of(cfg, cfg.level);
    FractionalParams params{cfg.s, cfg.p, region.dim};
    GridFunction f;
    if (!cfg.input_csv.empty()) {
        f = grid_from_csv(read_file(cfg.input_csv));
    } else {
        CorpusSpec cs;
        cs.family = corpus_family_from(cfg.family);
        cs.alpha = cfg.s + 0.1;
        cs.seed = cfg.seed;
        cs.params = params;
        cs.region = region.name;
        f = generate(cs, view_of(region), region.cloud_D_fine, region.cloud_boundary);
    }
    const double sem = seminorm_wsp(f);
    const double lp = lp_norm(f);
    const HardyResult hardy = hardy_norm(f, region.cloud_D_fine);
    ensure_dir(cfg.out_dir);
    write_file(cfg.out_dir + "/function.csv", grid_to_csv(f, {{"config", cfg.to_json()}}));
    ojson j;
    j["config"] = cfg.to_json();
    j["seminorm_wsp"] = sem;
    j["lp_norm"] = lp;
    j["hardy_norm"] = hardy.norm;
    j["hardy_divergence_suspected"] = hardy.divergence_suspected;
    j["hardy_cells_below_resolution"] = hardy.cells_below_resolution;
    write_file(cfg.out_dir + "/norms_summary.json", j.dump(2) + "\n");
    return 0;
}

int cmd_extend(const RunConfig& cfg) {
    PhaseTimer timer;
    const RegionSpec region = region_of(cfg, cfg.level);
    timer.lap("region");
    FractionalParams params{cfg.s, cfg.p, region.dim};
    const WhitneyDecomposition w = whitney_decompose(region.cloud_N, region.bbox, cfg.level);
    timer.lap("whitney");
    const FattenedDomain fat = fatten(region, w);
    timer.lap("fatten");
    const ThicknessReport fat_itc =
        check_itc_in(fat.view(), fat.boundary_cloud, protocol_of(cfg));
    timer.lap("fat_itc");
    ensure_dir(cfg.out_dir);
    ojson j;
    j["config"] = cfg.to_json();
    j["fattened_itc"] = thickness_to_json(fat_itc, region.dim);
    if (!fat_itc.pass(cfg.fat_threshold)) {
        j["error"] = "fattened set failed the thickness check; extension preconditions absent";
        write_file(cfg.out_dir + "/extend_summary.json", j.dump(2) + "\n");
        return kExitContract;
    }
    CorpusSpec cs;
    cs.family = corpus_family_from(cfg.family);
    cs.alpha = cfg.s + 0.1;
    cs.seed = cfg.seed;
    cs.params = params;
    cs.region = region.name;
    const GridFunction f =
        generate(cs, view_of(region), region.cloud_D_fine, region.cloud_boundary);
    timer.lap("generate");
    const ExtensionAssembly as = build_extension_assembly(fat, cfg.level);
    timer.lap("assembly");
    const ExtensionResult res = extend_full(f, fat, as);
    timer.lap("extend_full");
    write_file(cfg.out_dir + "/input.csv", grid_to_csv(f, {{"role", "input"}}));
    const GridFunction g0 = zero_extend(f, as);
    write_file(cfg.out_dir + "/zero_extended.csv", grid_to_csv(g0, {{"role", "zero_extended"}}));
    write_file(cfg.out_dir + "/output.csv", grid_to_csv(res.output, {{"role", "output"}}));
    if (region.dim == 2) write_file(cfg.out_dir + "/output.pgm", values_to_pgm(res.output));
    j["input_norms"] = {{"seminorm", res.in_seminorm},
                        {"lp", res.in_lp},
                        {"hardy", res.in_hardy},
                        {"hardy_divergent", res.in_hardy_divergent}};
    j["output_norms"] = {{"seminorm", res.out_seminorm}, {"lp", res.out_lp}};
    j["ratio"] = res.ratio;
    j["trivial"] = res.trivial;
    j["uncovered_cells"] = as.uncovered_cells;
    write_file(cfg.out_dir + "/extend_summary.json", j.dump(2) + "\n");
    return 0;
}

ReportOutcome run_report(const RunConfig& cfg) {
    ReportOutcome out;
    ensure_dir(cfg.out_dir);
    write_file(cfg.out_dir + "/config.json", cfg.to_json().dump(2) + "\n");

    ojson levels_json = ojson::array();
    // ratios[p][family] per level, for the cross-level stability table
    std::map<double, std::map<std::string, std::vector<double>>> ratios;
    bool any_contract_violation = false;

    for (const int L : cfg.levels) {
        const RegionSpec region = region_of(cfg, L);
        const std::string ldir = cfg.out_dir + "/L" + std::to_string(L);
        ensure_dir(ldir);
        ojson lj;
        lj["level"] = L;

        const WhitneyDecomposition w = whitney_decompose(region.cloud_N, region.bbox, L);
        const WhitneyReport wrep = verify_whitney(w);
        lj["whitney"] = {{"cubes", wrep.cube_count},
                         {"disjoint", wrep.disjoint},
                         {"ratio_min", wrep.ratio_min},
                         {"ratio_max", wrep.ratio_max},
                         {"cover_defect_volume", wrep.cover_defect_volume}};
        write_file(ldir + "/whitney_cubes.csv",
                   cubes_to_csv(w.cubes, region.dim, cfg_comment(cfg)));

        ThicknessProtocol tp = protocol_of(cfg);
        const ThicknessReport itc_n =
            check_itc_in(view_of(region), region.cloud_itc_N, tp, nullptr);
        out.itc_n_pass = itc_n.pass(cfg.threshold);
        lj["itc_in_n"] = thickness_to_json(itc_n, region.dim);
        lj["itc_in_n"]["verdict"] = out.itc_n_pass ? "PASS" : "FAIL";
        write_file(ldir + "/itc_n_samples.csv",
                   thickness_to_csv(itc_n, region.dim, cfg_comment(cfg)));

        const FattenedDomain fat = fatten(region, w);
        write_file(ldir + "/sigma_cubes.csv",
                   cubes_to_csv(fat.sigma, region.dim, cfg_comment(cfg)));
        const Lemma31Report l31 = lemma31_ratio(fat, 100000, cfg.seed);
        lj["lemma31"] = {{"min_ratio", l31.vacuous ? ojson() : ojson(l31.min_ratio)},
                         {"vacuous", l31.vacuous},
                         {"pairs_used", l31.pairs_used}};

        const ThicknessReport fat_itc = check_itc_in(fat.view(), fat.boundary_cloud, tp);
        out.fat_itc_pass = fat_itc.pass(cfg.fat_threshold);
        lj["fattened_itc"] = thickness_to_json(fat_itc, region.dim);
        lj["fattened_itc"]["verdict"] = out.fat_itc_pass ? "PASS" : "FAIL";
        write_file(ldir + "/fat_itc_samples.csv",
                   thickness_to_csv(fat_itc, region.dim, cfg_comment(cfg)));

        if (!out.fat_itc_pass) {
            lj["extension"] = "skipped: fattened set failed the thickness check";
            any_contract_violation = true;
            levels_json.push_back(lj);
            continue;
        }

        if (region.dim == 2) {
            FractionalParams mp{cfg.s, 2.0, 2};
            const GridFunction m = build_grid(fat.view(), std::min(L, 9), mp,
                                              [](const Pt&) { return 0.0; });
            write_file(ldir + "/fattened_mask.pgm", mask_to_pgm(m));
        }

        ojson runs = ojson::array();
        const ExtensionAssembly as = build_extension_assembly(fat, L);
        for (const double p : cfg.p_list) {
            for (const CorpusSpec& cs : corpus_for(cfg, p, region)) {
                const GridFunction f =
                    generate(cs, view_of(region), region.cloud_D_fine, region.cloud_boundary);
                const ExtensionResult res = extend_full(f, fat, as);
                ojson rj;
                rj["family"] = cs.label();
                rj["p"] = p;
                rj["input"] = {{"seminorm", res.in_seminorm},
                               {"lp", res.in_lp},
                               {"hardy", res.in_hardy},
                               {"hardy_divergent", res.in_hardy_divergent}};
                rj["output"] = {{"seminorm", res.out_seminorm}, {"lp", res.out_lp}};
                rj["ratio"] = res.ratio;
                rj["trivial"] = res.trivial;
                runs.push_back(rj);
                if (!res.trivial && !res.in_hardy_divergent)
                    ratios[p][cs.label()].push_back(res.ratio);
                write_file(ldir + "/corpus_" + cs.label() + "_p" + fmt_double(p) + ".csv",
                           grid_to_csv(f, {{"config", cfg.to_json()}}));
            }
        }
        lj["corpus_runs"] = runs;
        levels_json.push_back(lj);
    }

    ojson stability = ojson::array();
    double worst_factor = 1.0;
    double max_ratio_global = 0.0;
    for (const auto& [p, fams] : ratios) {
        std::vector<double> per_level_max;
        for (std::size_t li = 0; li < cfg.levels.size(); ++li) {
            double mx = 0.0;
            for (const auto& [fam, rs] : fams)
                if (li < rs.size()) mx = std::max(mx, rs[li]);
            per_level_max.push_back(mx);
            max_ratio_global = std::max(max_ratio_global, mx);
        }
        ojson sj;
        sj["p"] = p;
        sj["max_ratio_per_level"] = per_level_max;
        for (std::size_t li = 1; li < per_level_max.size(); ++li) {
            if (per_level_max[li - 1] > 0 && per_level_max[li] > 0) {
                const double fac = per_level_max[li] / per_level_max[li - 1];
                worst_factor = std::max({worst_factor, fac, 1.0 / fac});
            }
        }
        stability.push_back(sj);
    }

    out.summary["config"] = cfg.to_json();
    out.summary["levels"] = levels_json;
    out.summary["stability"] = stability;
    out.summary["worst_cross_level_factor"] = worst_factor;
    out.summary["max_ratio"] = max_ratio_global;
    out.max_ratio_per_level_min = worst_factor;
    out.exit_code = any_contract_violation ? kExitContract : 0;
    out.summary["exit_code"] = out.exit_code;
    write_file(cfg.out_dir + "/report.json", out.summary.dump(2) + "\n");
    return out;
}

}  // namespace fracext
