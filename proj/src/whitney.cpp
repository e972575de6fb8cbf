#include "fracext/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace fracext {

namespace {

// Root tiling: 2 cells per axis, so an accepted root always has
// dist/diam <= bbox_diag / (bbox_diag/2) = 2 and the upper Whitney bound
// holds without a rejected parent.
std::vector<DyadicCube> root_cells(const Box& bbox) {
    const int d = bbox.dim;
    double side = bbox.side(0) / 2.0;
    for (int i = 1; i < d; ++i)
        if (std::abs(bbox.side(i) / 2.0 - side) > 1e-12)
            throw std::invalid_argument("whitney_decompose: bbox must be a cube");
    const double l2 = std::log2(side);
    const int level = -static_cast<int>(std::llround(l2));
    if (std::abs(std::ldexp(1.0, -level) - side) > 1e-12)
        throw std::invalid_argument("whitney_decompose: bbox side must be a power of two");
    std::vector<DyadicCube> roots;
    for (int corner = 0; corner < (1 << d); ++corner) {
        DyadicCube c{level, {0, 0, 0}, d};
        for (int i = 0; i < d; ++i) {
            const double lo = bbox.lo[i];
            const double cell = std::ldexp(lo, level);  // lo / side
            const auto base = static_cast<std::int64_t>(std::llround(cell));
            if (std::abs(cell - static_cast<double>(base)) > 1e-9)
                throw std::invalid_argument("whitney_decompose: bbox must be lattice-aligned");
            c.idx[i] = base + ((corner >> i) & 1);
        }
        roots.push_back(c);
    }
    return roots;
}

struct Builder {
    const PointCloudSet& cloud;
    int finest;
    std::vector<DyadicCube> accepted;
    std::vector<DyadicCube> dropped;

    // candidates: indices of cloud points that can realize dist for this
    // subtree; the exact minimum over candidates equals the global minimum
    void process(const DyadicCube& q, const std::vector<std::uint32_t>& candidates) {
        const Box b = q.box();
        double dmin = std::numeric_limits<double>::infinity();
        for (const auto i : candidates) dmin = std::min(dmin, b.dist_to(cloud.points()[i]));
        const double diam = q.diam();
        if (diam <= dmin) {
            accepted.push_back(q);
            return;
        }
        if (q.level >= finest) {
            dropped.push_back(q);
            return;
        }
        // keep points that can still matter for some descendant
        const double keep_radius = dmin + diam;
        std::vector<std::uint32_t> next;
        next.reserve(candidates.size());
        for (int corner = 0; corner < (1 << q.dim); ++corner) {
            const DyadicCube c = q.child(corner);
            const Box cb = c.box();
            next.clear();
            for (const auto i : candidates)
                if (cb.dist_to(cloud.points()[i]) <= keep_radius) next.push_back(i);
            process(c, next);
        }
    }
};

}  // namespace

WhitneyDecomposition whitney_decompose(const PointCloudSet& generator, const Box& bbox,
                                       int finest_level) {
    if (generator.empty()) throw std::runtime_error("whitney_decompose: empty generator set");
    if (generator.dim() != bbox.dim)
        throw std::invalid_argument("whitney_decompose: dimension mismatch");
    auto roots = root_cells(bbox);
    if (finest_level <= roots.front().level)
        throw std::invalid_argument("whitney_decompose: finest level coarser than root cells");

    Builder builder{generator, finest_level, {}, {}};
    std::vector<std::uint32_t> all(generator.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    for (const auto& r : roots) builder.process(r, all);

    if (builder.accepted.empty())
        throw std::runtime_error("whitney_decompose: no cube accepted; finest level too coarse");

    std::sort(builder.accepted.begin(), builder.accepted.end());
    std::sort(builder.dropped.begin(), builder.dropped.end());

    WhitneyDecomposition w;
    w.cubes = std::move(builder.accepted);
    w.dropped = std::move(builder.dropped);
    w.generator = generator;
    w.bbox = bbox;
    w.coarsest_level = w.cubes.front().level;
    w.finest_level = finest_level;
    for (const auto& q : w.dropped) w.dropped_volume += q.volume();
    return w;
}

bool WhitneyDecomposition::contains(const DyadicCube& q) const {
    return std::binary_search(cubes.begin(), cubes.end(), q);
}

namespace {

struct CubeKeyHash {
    std::size_t operator()(const std::array<std::int64_t, 4>& k) const {
        std::size_t h = 1469598103934665603ULL;
        for (const auto v : k) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

std::array<std::int64_t, 4> cube_key(const DyadicCube& q) {
    return {q.level, q.idx[0], q.dim > 1 ? q.idx[1] : 0, q.dim > 2 ? q.idx[2] : 0};
}

}  // namespace

WhitneyReport verify_whitney(const WhitneyDecomposition& w) {
    WhitneyReport rep;
    rep.cube_count = w.cubes.size();
    rep.cover_defect_volume = w.dropped_volume;
    rep.dist_tolerance = w.generator.sample_tolerance();

    // Dyadic cubes overlap iff one is an ancestor cell of the other, so
    // disjointness = no duplicates and no cube's ancestor present.
    std::unordered_set<std::array<std::int64_t, 4>, CubeKeyHash> slots;
    rep.disjoint = true;
    for (const auto& q : w.cubes)
        if (!slots.insert(cube_key(q)).second) rep.disjoint = false;
    if (rep.disjoint) {
        const int coarsest = w.cubes.front().level;
        for (const auto& q : w.cubes) {
            DyadicCube a = q;
            while (a.level > coarsest) {
                a = a.parent();
                if (slots.count(cube_key(a))) {
                    rep.disjoint = false;
                    break;
                }
            }
            if (!rep.disjoint) break;
        }
    }

    rep.ratio_min = std::numeric_limits<double>::infinity();
    rep.ratio_max = 0.0;
    for (const auto& q : w.cubes) {
        const double ratio = w.generator.dist_to_box(q.box()) / q.diam();
        rep.ratio_min = std::min(rep.ratio_min, ratio);
        rep.ratio_max = std::max(rep.ratio_max, ratio);
    }

    const double collar = 2.0 * std::sqrt(static_cast<double>(w.bbox.dim)) *
                          std::ldexp(1.0, -w.finest_level);
    rep.collar_ok = true;
    for (const auto& q : w.dropped)
        if (w.generator.dist_to_box(q.box()) > collar) rep.collar_ok = false;
    return rep;
}

bool cubes_touch(const DyadicCube& a, const DyadicCube& b) {
    if (a.dim != b.dim) return false;
    // compare closures on the common refinement lattice
    const int k = std::max(a.level, b.level);
    for (int i = 0; i < a.dim; ++i) {
        const std::int64_t alo = a.idx[i] << (k - a.level);
        const std::int64_t ahi = (a.idx[i] + 1) << (k - a.level);
        const std::int64_t blo = b.idx[i] << (k - b.level);
        const std::int64_t bhi = (b.idx[i] + 1) << (k - b.level);
        if (ahi < blo || bhi < alo) return false;
    }
    return true;
}

std::vector<DyadicCube> cube_neighbors(const WhitneyDecomposition& w, const DyadicCube& q) {
    if (!w.contains(q))
        throw std::runtime_error("cube_neighbors: " + q.str() + " is not in the decomposition");
    std::vector<DyadicCube> out;
    for (const auto& c : w.cubes)
        if (cubes_touch(c, q)) out.push_back(c);
    return out;
}

}  // namespace fracext
