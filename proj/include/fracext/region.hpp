#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "fracext/cloud.hpp"
#include "fracext/geom.hpp"

namespace fracext {

// Open set with a labeled boundary partition (D, N), given by exact analytic
// predicates. Rasterization happens only downstream (grids, quadrature);
// cube/set intersection tests run against the predicates and the sampled
// boundary clouds.
//
// The inside() predicate is total on R^d and strict (open set), so measure
// estimates are unbiased. classify() additionally resolves boundary labels
// with the residual tolerance 2^-(level+2) and enforces the bbox contract.
struct RegionSpec {
    std::string name;
    int dim = 2;
    int level = 8;  // finest dyadic resolution
    Box bbox;

    std::function<bool(const Pt&)> inside;          // open-set membership, total
    std::function<Label(const Pt&)> classify_total; // boundary-tolerant labels, total

    PointCloudSet cloud_N;         // samples of cl(N), Whitney generator
    PointCloudSet cloud_D;         // samples of D at `level`
    PointCloudSet cloud_D_fine;    // samples of D at a finer level (distance queries)
    PointCloudSet cloud_boundary;  // samples of all of bd(O)
    PointCloudSet cloud_itc_N;     // default centers for the thickness check in N
    std::optional<Pt> accumulation_point;  // bias target for stress sampling

    double tol() const { return std::ldexp(1.0, -(level + 2)); }

    Label classify(const Pt& x) const {
        if (!bbox.contains(x))
            throw std::domain_error("RegionSpec::classify: point outside bbox of " + name);
        return classify_total(x);
    }
    Label classify_raw(const Pt& x) const { return classify_total(x); }
    bool is_inside(const Pt& x) const { return inside(x); }
};

// membership/extent view shared by thickness and grid construction
struct DomainView {
    std::string id;
    int dim = 2;
    int level = 8;
    Box bbox;
    std::function<bool(const Pt&)> inside;
};

DomainView view_of(const RegionSpec& r);

// name in {halfplane, disk, cusp_touching_halfplane, exp_whitney_cusp,
// interval_with_endpoint_D}; unknown names raise std::invalid_argument.
RegionSpec builtin_geometry(const std::string& name, int level,
                            const std::map<std::string, double>& params = {});

// helpers shared with tests and cloud generation
std::vector<Pt> sample_segment(const Pt& a, const Pt& b, double spacing, int dim);

}  // namespace fracext
