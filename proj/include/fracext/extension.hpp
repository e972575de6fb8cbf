#pragma once

#include "fracext/fatten.hpp"
#include "fracext/gridfn.hpp"
#include "fracext/norms.hpp"
#include "fracext/whitney.hpp"

namespace fracext {

// Geometry-dependent scaffolding for the exterior extension, built once per
// (fattened domain, level) and reused across functions: the Whitney
// decomposition of the exterior, the fattened-set cell mask, and the
// partition of unity over dilated exterior cubes.
struct ExtensionAssembly {
    int level = 8;
    double reflection_factor = 6.0;  // averaging ball radius, in cube diameters
    double pou_dilation = 1.1;
    double far_cutoff_diam = 1.0;  // cubes larger than this carry the value 0

    WhitneyDecomposition exterior;
    std::vector<DyadicCube> ext_cubes;  // exterior cubes, canonical order
    GridFunction fat_mask;              // mask = cells of the fattened set

    struct PouEntry {
        std::uint32_t cube;
        double weight;
    };
    std::vector<std::int64_t> pou_start;   // CSR over all grid cells
    std::vector<PouEntry> pou_entries;
    std::int64_t uncovered_cells = 0;  // exterior collar cells that receive 0

    std::string fat_id;
    std::string base_id;
};

ExtensionAssembly build_extension_assembly(const FattenedDomain& fat, int level);

// values on O copied, cells of the fattened set outside O set to 0; the L^p
// norm is preserved exactly (identical summands plus zeros)
GridFunction zero_extend(const GridFunction& f, const FattenedDomain& fat);
GridFunction zero_extend(const GridFunction& f, const ExtensionAssembly& assembly);

// Whitney-average (p >= 1) / Whitney p-median (p < 1) extension of g from
// the fattened set to the whole bbox. Throws if some exterior cube within
// the cutoff has no domain cells to average over.
GridFunction whitney_extend(const GridFunction& g, const ExtensionAssembly& assembly);

struct ExtensionResult {
    GridFunction output;  // on the full bbox
    double in_seminorm = 0, in_lp = 0, in_hardy = 0;
    bool in_hardy_divergent = false;
    double out_seminorm = 0, out_lp = 0;
    double in_combined = 0, out_combined = 0;
    double ratio = 0;      // out_combined / in_combined
    bool trivial = false;  // identically zero input
};

ExtensionResult extend_full(const GridFunction& f, const FattenedDomain& fat,
                            const ExtensionAssembly& assembly);

// max |output - f| over the cells of f's mask; 0 by construction
double restriction_check(const ExtensionResult& res, const GridFunction& f);

// p-median over a sample: minimizer of c -> sum |g_i - c|^p among the sample
// values plus their mean (ties break to the smaller candidate)
double p_median(const std::vector<double>& values, double p);

}  // namespace fracext
