#pragma once

#include <cstdint>
#include <vector>

#include "fracext/cloud.hpp"
#include "fracext/region.hpp"

namespace fracext {

struct ThicknessSample {
    Pt center{0, 0, 0};
    double radius = 0.0;
    double density = 0.0;  // |B(x,r) cap E| / |B(x,r)|, Monte-Carlo estimate
};

struct ThicknessProtocol {
    int centers = 200;
    int radii = 20;
    std::int64_t mc_samples = 10000;
    std::uint64_t seed = 12022;
    double r_min = 0.0;  // 0 selects the default 2^-(level-2)
    double r_max = 1.0;
    bool bias_to_accumulation = false;  // log-spread centers toward a tip

    void validate() const {
        if (centers < 1 || radii < 1) throw std::invalid_argument("thickness: need counts >= 1");
        if (mc_samples < 1000)
            throw std::invalid_argument("thickness: need at least 10^3 MC samples");
    }
};

struct ThicknessReport {
    std::vector<ThicknessSample> samples;
    double inf_density = 1.0;
    ThicknessProtocol protocol;
    double resolved_r_min = 0.0;
    int skipped_centers = 0;  // degenerate variant: centers with no admissible radius
    std::string domain_id;

    bool pass(double threshold) const { return inf_density >= threshold; }
};

// MC estimate of |B(x,r) cap E| / |B(x,r)| with standard error <= 1/(2 sqrt(n))
double measure_density(const DomainView& E, const Pt& x, double r, std::int64_t n_mc,
                       std::uint64_t stream_seed);

// density samples for centers drawn from F (a boundary portion) and
// log-uniform radii in [r_min, r_max]
ThicknessReport check_itc_in(const DomainView& E, const PointCloudSet& F,
                             const ThicknessProtocol& tp,
                             const Pt* accumulation_point = nullptr);

// same protocol with centers drawn from E itself
ThicknessReport check_itc(const DomainView& E, const ThicknessProtocol& tp);

// centers on N, radii capped at min(r_max, dist_D(x)); the sample set is a
// subset of the check_itc_in samples for the same seed
ThicknessReport check_degenerate_itc(const DomainView& O, const PointCloudSet& N,
                                     const PointCloudSet& D, const ThicknessProtocol& tp);

struct ConsistencyReport {
    ThicknessReport boundary;  // centers on bd(E)
    ThicknessReport interior;  // centers in E
    double boundary_inf = 0.0;
    double interior_inf = 0.0;
};

// boundary-centered and interior-centered checks pass/fail together up to
// the volume factor 2^{d+1}; callers assert the two-sided bound
ConsistencyReport lemma22_consistency(const DomainView& E, const PointCloudSet& boundary,
                                      const ThicknessProtocol& tp);

}  // namespace fracext
