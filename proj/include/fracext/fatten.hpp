#pragma once

#include <memory>

#include "fracext/region.hpp"
#include "fracext/whitney.hpp"

namespace fracext {

namespace detail {
struct SigmaIndex;
}

// The enlarged domain: base O joined with every Whitney cube of the
// complement of cl(N) whose closure touches cl(O), minus D. Membership is a
// derived predicate; the open set is materialized inside the base bbox only.
struct FattenedDomain {
    RegionSpec base;
    WhitneyDecomposition whitney;
    std::vector<DyadicCube> sigma;
    PointCloudSet boundary_cloud;  // samples of bd(fattened), for thickness checks

    std::shared_ptr<const detail::SigmaIndex> index;

    bool is_inside(const Pt& x) const;
    DomainView view() const;
    std::string id() const { return base.name + ":fattened"; }
};

// Sigma selection: a Whitney cube joins when its center lies in O or the
// sampled boundary passes within sqrt(d) 2^-L of its closure (conservative:
// borderline cubes are included). Throws if w was generated from a different
// N than the region's.
FattenedDomain fatten(const RegionSpec& region, const WhitneyDecomposition& w);

// assembles the derived predicate and boundary cloud from explicit parts;
// fixture entry point for tests (no sigma validation)
FattenedDomain assemble_fattened(RegionSpec base, WhitneyDecomposition w,
                                 std::vector<DyadicCube> sigma);

struct Lemma31Report {
    double min_ratio = std::numeric_limits<double>::infinity();
    Pt argmin_x{0, 0, 0};
    Pt argmin_y{0, 0, 0};
    std::int64_t pairs_used = 0;
    bool vacuous = false;  // the added region is empty (e.g. D = {})
};

// samples x in O, y in the added region, and reports the minimum of
// |x-y| / dist_D(x); the construction forces min >= 1/2 up to sampling
// tolerance
Lemma31Report lemma31_ratio(const FattenedDomain& fat, std::int64_t n_pairs,
                            std::uint64_t seed);

}  // namespace fracext
