#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracext/geom.hpp"

namespace fracext {

// Finite sample of a closed set at dyadic resolution. The generator
// guarantees Hausdorff distance <= sqrt(d)*2^-resolution_level to the set it
// stands in for; distance queries against the cloud are exact.
class PointCloudSet {
public:
    PointCloudSet() = default;
    PointCloudSet(int dim, int resolution_level, std::string source, std::vector<Pt> points);

    int dim() const { return dim_; }
    int resolution_level() const { return level_; }
    const std::string& source() const { return source_; }
    const std::vector<Pt>& points() const { return pts_; }
    bool empty() const { return pts_.empty(); }
    std::size_t size() const { return pts_.size(); }

    // worst-case gap between the true set and this sample
    double sample_tolerance() const {
        return std::sqrt(static_cast<double>(dim_)) * std::ldexp(1.0, -level_);
    }

    // min distance from x to the cloud; throws on empty cloud
    double dist_to(const Pt& x) const;

    // min over cloud points of the distance to the closed box; exact
    double dist_to_box(const Box& b) const;

private:
    int dim_ = 2;
    int level_ = 8;
    std::string source_;
    std::vector<Pt> pts_;

    // implicit kd-tree: order_[a,b) is a subtree, its bounding box sits at
    // the median index
    static constexpr std::size_t kLeaf = 8;
    std::vector<std::uint32_t> order_;
    std::vector<Pt> node_lo_, node_hi_;

    void build_index();
    double nearest2(const Box& query) const;
};

// distance convention for D = {}: +inf (the Hardy weight then vanishes)
double dist_or_inf(const PointCloudSet& cloud, const Pt& x);

}  // namespace fracext
