#pragma once

#include <vector>

#include "fracext/cloud.hpp"
#include "fracext/geom.hpp"

namespace fracext {

// Whitney decomposition of bbox \ cl(N): disjoint open dyadic cubes with
// diam(Q) <= dist(Q, N) <= 4 diam(Q), built by canonical top-down dyadic
// refinement. Cells still violating the size rule at `finest_level` are
// dropped; they tile a collar of width <= 2 sqrt(d) 2^-finest around N and
// their total volume is the cover defect.
struct WhitneyDecomposition {
    std::vector<DyadicCube> cubes;    // canonical order: level-major, lex index
    std::vector<DyadicCube> dropped;  // truncated collar cells
    PointCloudSet generator;          // the closed set being avoided
    Box bbox;
    int coarsest_level = 0;
    int finest_level = 0;
    double dropped_volume = 0.0;

    bool contains(const DyadicCube& q) const;
};

struct WhitneyReport {
    bool disjoint = false;
    double cover_defect_volume = 0.0;  // total dropped volume
    double ratio_min = 0.0;            // min over cubes of dist(Q,N)/diam(Q)
    double ratio_max = 0.0;
    bool collar_ok = false;  // every dropped cell within 2 sqrt(d) 2^-finest of N
    double dist_tolerance = 0.0;  // cloud sampling tolerance, for downstream use
    std::size_t cube_count = 0;
};

WhitneyDecomposition whitney_decompose(const PointCloudSet& generator, const Box& bbox,
                                       int finest_level);

WhitneyReport verify_whitney(const WhitneyDecomposition& w);

// cubes of w whose closures touch cl(q); includes q itself; exact in integer
// arithmetic. Throws if q is not a member.
std::vector<DyadicCube> cube_neighbors(const WhitneyDecomposition& w, const DyadicCube& q);

// exact closure-touch test on the common refinement lattice
bool cubes_touch(const DyadicCube& a, const DyadicCube& b);

}  // namespace fracext
