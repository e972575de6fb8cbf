#include "fracext/cloud.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace fracext {

// Nearest-point queries run on a compact median-split kd-tree; distances to
// boxes reuse the same traversal with box-box lower bounds. The node over
// order_[a,b) keeps its bounding box at index mid = a + (b-a)/2, which is
// unique per node.

PointCloudSet::PointCloudSet(int dim, int resolution_level, std::string source,
                             std::vector<Pt> points)
    : dim_(dim), level_(resolution_level), source_(std::move(source)), pts_(std::move(points)) {
    if (dim_ < 1 || dim_ > 3) throw std::invalid_argument("PointCloudSet: dim out of range");
    if (!pts_.empty()) build_index();
}

void PointCloudSet::build_index() {
    const std::size_t n = pts_.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0u);
    node_lo_.resize(n);
    node_hi_.resize(n);

    struct Frame {
        std::size_t a, b;
    };
    std::vector<Frame> stack{{0, n}};
    while (!stack.empty()) {
        const auto [a, b] = stack.back();
        stack.pop_back();
        if (a >= b) continue;
        const std::size_t mid = a + (b - a) / 2;
        Pt lo = pts_[order_[a]], hi = pts_[order_[a]];
        for (std::size_t i = a; i < b; ++i) {
            const Pt& p = pts_[order_[i]];
            for (int k = 0; k < dim_; ++k) {
                lo[k] = std::min(lo[k], p[k]);
                hi[k] = std::max(hi[k], p[k]);
            }
        }
        node_lo_[mid] = lo;
        node_hi_[mid] = hi;
        if (b - a <= kLeaf) continue;
        int axis = 0;
        for (int k = 1; k < dim_; ++k)
            if (hi[k] - lo[k] > hi[axis] - lo[axis]) axis = k;
        std::nth_element(order_.begin() + a, order_.begin() + mid, order_.begin() + b,
                         [&](std::uint32_t x, std::uint32_t y) {
                             return pts_[x][axis] < pts_[y][axis];
                         });
        stack.push_back({a, mid});
        stack.push_back({mid, b});
    }
}

namespace {

double box_gap2(const Pt& lo, const Pt& hi, const Box& q, int dim) {
    double s = 0.0;
    for (int k = 0; k < dim; ++k) {
        const double d = std::max({lo[k] - q.hi[k], q.lo[k] - hi[k], 0.0});
        s += d * d;
    }
    return s;
}

}  // namespace

double PointCloudSet::nearest2(const Box& query) const {
    double best2 = std::numeric_limits<double>::infinity();
    struct Frame {
        std::size_t a, b;
    };
    std::vector<Frame> stack;
    stack.reserve(64);
    stack.push_back({0, pts_.size()});
    while (!stack.empty()) {
        const auto [a, b] = stack.back();
        stack.pop_back();
        if (a >= b) continue;
        const std::size_t mid = a + (b - a) / 2;
        if (box_gap2(node_lo_[mid], node_hi_[mid], query, dim_) >= best2) continue;
        if (b - a <= kLeaf) {
            for (std::size_t i = a; i < b; ++i) {
                const double d = query.dist_to(pts_[order_[i]]);
                best2 = std::min(best2, d * d);
            }
            continue;
        }
        const std::size_t lm = a + (mid - a) / 2;
        const std::size_t rm = mid + (b - mid) / 2;
        const double dl = box_gap2(node_lo_[lm], node_hi_[lm], query, dim_);
        const double dr = box_gap2(node_lo_[rm], node_hi_[rm], query, dim_);
        // nearer child on top of the stack
        if (dl <= dr) {
            stack.push_back({mid, b});
            stack.push_back({a, mid});
        } else {
            stack.push_back({a, mid});
            stack.push_back({mid, b});
        }
    }
    return best2;
}

double PointCloudSet::dist_to(const Pt& x) const {
    if (pts_.empty()) throw std::runtime_error("PointCloudSet::dist_to: empty cloud");
    return std::sqrt(nearest2(Box{x, x, dim_}));
}

double PointCloudSet::dist_to_box(const Box& b) const {
    if (pts_.empty()) throw std::runtime_error("PointCloudSet::dist_to_box: empty cloud");
    return std::sqrt(nearest2(b));
}

double dist_or_inf(const PointCloudSet& cloud, const Pt& x) {
    if (cloud.empty()) return std::numeric_limits<double>::infinity();
    return cloud.dist_to(x);
}

}  // namespace fracext
