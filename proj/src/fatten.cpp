#include "fracext/fatten.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "fracext/rng.hpp"

namespace fracext {

namespace detail {

struct PackedHash {
    std::size_t operator()(const std::array<std::int64_t, 3>& k) const {
        std::size_t h = 1469598103934665603ULL;
        for (const auto v : k)
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

struct SigmaIndex {
    int dim = 2;
    // one slot set per level present in sigma
    std::vector<std::pair<int, std::unordered_set<std::array<std::int64_t, 3>, PackedHash>>>
        levels;

    bool contains_point(const Pt& x) const {
        for (const auto& [level, slots] : levels) {
            std::array<std::int64_t, 3> key{0, 0, 0};
            for (int i = 0; i < dim; ++i)
                key[i] = static_cast<std::int64_t>(std::floor(std::ldexp(x[i], level)));
            if (slots.count(key)) return true;
        }
        return false;
    }
};

}  // namespace detail

bool FattenedDomain::is_inside(const Pt& x) const {
    if (base.inside(x)) return true;
    // D and N stay outside the fattened set; the label test keeps the
    // boundary partition exact at the resolution tolerance
    if (!index || !index->contains_point(x)) return false;
    return base.classify_total(x) == Label::outside;
}

DomainView FattenedDomain::view() const {
    auto inside_fn = base.inside;
    auto classify_fn = base.classify_total;
    auto idx = index;
    return DomainView{id(), base.dim, base.level, base.bbox,
                      [inside_fn, classify_fn, idx](const Pt& x) {
                          if (inside_fn(x)) return true;
                          if (!idx || !idx->contains_point(x)) return false;
                          return classify_fn(x) == Label::outside;
                      }};
}

namespace {

bool on_bbox_face(const Box& bbox, const Pt& p, int axis) {
    return p[axis] <= bbox.lo[axis] + 1e-12 || p[axis] >= bbox.hi[axis] - 1e-12;
}

PointCloudSet build_fat_boundary_cloud(const RegionSpec& base,
                                       const std::vector<DyadicCube>& sigma,
                                       const detail::SigmaIndex& index) {
    std::vector<Pt> pts = base.cloud_boundary.points();
    const int d = base.dim;
    const double h = std::ldexp(1.0, -base.level);
    auto fat_inside = [&](const Pt& x) {
        if (base.inside(x)) return true;
        if (!index.contains_point(x)) return false;
        return base.classify_total(x) == Label::outside;
    };
    for (const auto& q : sigma) {
        const Pt lo = q.lo(), hi = q.hi();
        const double side = q.side();
        const double eps = std::min(h, side) / 4.0;
        const double step = std::min(h, side);
        const int n = std::max(1, static_cast<int>(std::ceil(side / step)));
        for (int axis = 0; axis < d; ++axis) {
            for (int dir = 0; dir < 2; ++dir) {
                Pt f{0, 0, 0};
                f[axis] = dir ? hi[axis] : lo[axis];
                if (on_bbox_face(base.bbox, f, axis)) continue;  // window truncation
                const double nrm = dir ? eps : -eps;
                // sample the face grid in the remaining axes
                const int u = (axis + 1) % d;
                const int v = (axis + 2) % d;
                const int nu = d >= 2 ? n : 0;
                const int nv = d >= 3 ? n : 0;
                for (int iu = 0; iu <= nu; ++iu) {
                    for (int iv = 0; iv <= nv; ++iv) {
                        Pt p = f;
                        if (d >= 2) p[u] = lo[u] + side * iu / std::max(1, nu);
                        if (d >= 3) p[v] = lo[v] + side * iv / std::max(1, nv);
                        Pt outer = p, inner = p;
                        outer[axis] += nrm;
                        inner[axis] -= nrm;
                        if (!fat_inside(outer) && fat_inside(inner)) pts.push_back(p);
                    }
                }
            }
        }
    }
    return PointCloudSet(d, base.level, base.name + ":fatbd:L" + std::to_string(base.level),
                         std::move(pts));
}

}  // namespace

FattenedDomain assemble_fattened(RegionSpec base, WhitneyDecomposition w,
                                 std::vector<DyadicCube> sigma) {
    auto index = std::make_shared<detail::SigmaIndex>();
    index->dim = base.dim;
    std::sort(sigma.begin(), sigma.end());
    for (const auto& q : sigma) {
        auto it = std::find_if(index->levels.begin(), index->levels.end(),
                               [&](const auto& kv) { return kv.first == q.level; });
        if (it == index->levels.end()) {
            index->levels.push_back({q.level, {}});
            it = std::prev(index->levels.end());
        }
        it->second.insert({q.idx[0], base.dim > 1 ? q.idx[1] : 0, base.dim > 2 ? q.idx[2] : 0});
    }
    FattenedDomain fat;
    fat.boundary_cloud = build_fat_boundary_cloud(base, sigma, *index);
    fat.base = std::move(base);
    fat.whitney = std::move(w);
    fat.sigma = std::move(sigma);
    fat.index = std::move(index);
    return fat;
}

FattenedDomain fatten(const RegionSpec& region, const WhitneyDecomposition& w) {
    if (w.generator.source() != region.cloud_N.source())
        throw std::runtime_error("fatten: decomposition generator does not match cl(N) of " +
                                 region.name);
    const double tol =
        std::sqrt(static_cast<double>(region.dim)) * std::ldexp(1.0, -region.level);
    std::vector<DyadicCube> sigma;
    for (const auto& q : w.cubes) {
        if (region.inside(q.center())) {
            sigma.push_back(q);
            continue;
        }
        if (!region.cloud_boundary.empty() &&
            region.cloud_boundary.dist_to_box(q.box()) <= tol)
            sigma.push_back(q);
    }
    return assemble_fattened(region, w, std::move(sigma));
}

Lemma31Report lemma31_ratio(const FattenedDomain& fat, std::int64_t n_pairs,
                            std::uint64_t seed) {
    Lemma31Report rep;
    const RegionSpec& base = fat.base;
    if (fat.sigma.empty() || base.cloud_D_fine.empty()) {
        rep.vacuous = true;
        return rep;
    }
    // volume-weighted cube choice for y; x by rejection over the bbox
    std::vector<double> cdf(fat.sigma.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < fat.sigma.size(); ++i) {
        acc += fat.sigma[i].volume();
        cdf[i] = acc;
    }
    std::int64_t used = 0;
    for (std::int64_t k = 0; k < n_pairs; ++k) {
        Rng gx = seed_stream(seed, 0xA11CE, static_cast<std::uint64_t>(k));
        Pt x{0, 0, 0};
        bool ok = false;
        for (int t = 0; t < 4096; ++t) {
            x = sample_in_box(gx, base.bbox);
            if (base.inside(x)) {
                ok = true;
                break;
            }
        }
        if (!ok) continue;
        Rng gy = seed_stream(seed, 0xB0B, static_cast<std::uint64_t>(k));
        Pt y{0, 0, 0};
        bool oky = false;
        for (int t = 0; t < 4096 && !oky; ++t) {
            const double u = gy.unit() * acc;
            const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
            const auto& q = fat.sigma[static_cast<std::size_t>(it - cdf.begin())];
            const Box qb = q.box();
            y = sample_in_box(gy, qb);
            if (!base.inside(y) && fat.is_inside(y)) oky = true;
        }
        if (!oky) continue;
        ++used;
        const double dd = base.cloud_D_fine.dist_to(x);
        const double ratio = dist(x, y, base.dim) / dd;
        if (ratio < rep.min_ratio) {
            rep.min_ratio = ratio;
            rep.argmin_x = x;
            rep.argmin_y = y;
        }
    }
    rep.pairs_used = used;
    if (used == 0) rep.vacuous = true;
    return rep;
}

}  // namespace fracext
