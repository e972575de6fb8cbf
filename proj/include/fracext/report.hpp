#pragma once

#include <map>
#include <string>
#include <vector>

#include "fracext/io.hpp"

namespace fracext {

// Full configuration of a run; serialized into every artifact so outputs are
// reproducible byte-for-byte from the config alone.
struct RunConfig {
    std::string command = "report";
    std::string geometry = "cusp_touching_halfplane";
    std::map<std::string, double> geometry_params;
    std::string geometry_config;  // JSON file: {name, resolution_level, parameters}
    bool adjacency = false;       // decompose: also export cube adjacency
    int level = 8;
    std::vector<int> levels = {7, 8};  // report runs every listed level
    double s = 0.5;
    double p = 2.0;
    std::vector<double> p_list = {0.5, 1.0, 2.0};
    std::uint64_t seed = 12022;
    std::int64_t mc_samples = 10000;
    int centers = 200;
    int radii = 20;
    double threshold = 0.05;      // thickness pass threshold (CLI-supplied)
    double fat_threshold = 0.02;  // pass threshold for the fattened set
    bool bias_tip = false;
    int corpus_per_p = 2;
    std::string family = "hardy_power";
    std::string centers_on = "n";  // n | boundary | interior
    std::string expect = "none";   // none | pass | fail
    std::string input_csv;
    std::string out_dir = "out";
    int threads = 0;

    ojson to_json() const;
};

struct ReportOutcome {
    bool itc_n_pass = false;
    bool fat_itc_pass = false;
    double max_ratio_per_level_min = 0.0;
    ojson summary;
    int exit_code = 0;
};

// end-to-end pipeline: certify thickness in N, fatten, verify the fattened
// set, push the corpus through the extension, tabulate norm ratios
ReportOutcome run_report(const RunConfig& cfg);

// loads cfg.geometry_config (JSON) into the geometry fields, if set
void apply_geometry_config(RunConfig& cfg);

int cmd_decompose(const RunConfig& cfg);
int cmd_check_itc(const RunConfig& cfg);
int cmd_check_degenerate(const RunConfig& cfg);
int cmd_fatten(const RunConfig& cfg);
int cmd_norms(const RunConfig& cfg);
int cmd_extend(const RunConfig& cfg);

}  // namespace fracext
