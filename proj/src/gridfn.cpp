#include "fracext/gridfn.hpp"

#include <cmath>

#include "fracext/parallel.hpp"

namespace fracext {

namespace {

GridFunction layout_for(const Box& bbox, int dim, int level, const FractionalParams& params,
                        const std::string& id) {
    GridFunction g;
    g.dim = dim;
    g.level = level;
    g.bbox = bbox;
    g.params = params;
    g.domain_id = id;
    for (int i = 0; i < dim; ++i) {
        const double scaled_lo = std::ldexp(bbox.lo[i], level);
        const double scaled_hi = std::ldexp(bbox.hi[i], level);
        g.lo[i] = static_cast<std::int64_t>(std::llround(scaled_lo));
        const auto hi = static_cast<std::int64_t>(std::llround(scaled_hi));
        if (std::abs(scaled_lo - static_cast<double>(g.lo[i])) > 1e-9 ||
            std::abs(scaled_hi - static_cast<double>(hi)) > 1e-9)
            throw std::invalid_argument("grid: bbox corners must be dyadic at the grid level");
        g.n[i] = hi - g.lo[i];
    }
    g.v.assign(g.size(), 0.0);
    g.mask.assign(g.size(), 0);
    return g;
}

}  // namespace

GridFunction build_grid(const DomainView& dom, int level, const FractionalParams& params,
                        const std::function<double(const Pt&)>& fn) {
    GridFunction g = layout_for(dom.bbox, dom.dim, level, params, dom.id);
    const std::int64_t rows = g.size() / g.n[0];
    std::vector<std::int64_t> counts(rows, 0);
    parallel_for(rows, [&](std::int64_t r) {
        const std::int64_t base = r * g.n[0];
        std::int64_t cnt = 0;
        for (std::int64_t i = 0; i < g.n[0]; ++i) {
            const Pt c = g.cell_center(base + i);
            if (dom.inside(c)) {
                g.mask[base + i] = 1;
                g.v[base + i] = fn(c);
                ++cnt;
            }
        }
        counts[r] = cnt;
    });
    for (const auto c : counts) g.ncells += c;
    return g;
}

GridFunction build_full_grid(const Box& bbox, int dim, int level, const FractionalParams& params,
                             const std::string& id) {
    GridFunction g = layout_for(bbox, dim, level, params, id);
    std::fill(g.mask.begin(), g.mask.end(), 1);
    g.ncells = g.size();
    return g;
}

}  // namespace fracext
