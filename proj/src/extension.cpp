#include "fracext/extension.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <unordered_map>

#include "fracext/parallel.hpp"

namespace fracext {

namespace {

struct SlotHash {
    std::size_t operator()(const std::array<std::int64_t, 3>& k) const {
        std::size_t h = 1469598103934665603ULL;
        for (const auto v : k)
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

using SlotMap = std::unordered_map<std::array<std::int64_t, 3>, std::uint32_t, SlotHash>;

// tensor bump supported on the dilated cube, C^1 profile
double bump_weight(const DyadicCube& q, const Pt& x, double dilation) {
    const Pt c = q.center();
    const double half = 0.5 * q.side() * dilation;
    double b = 1.0;
    for (int i = 0; i < q.dim; ++i) {
        const double t = (x[i] - c[i]) / half;
        const double u = 1.0 - t * t;
        if (u <= 0.0) return 0.0;
        b *= u * u;
    }
    return b;
}

double pcost(const std::vector<double>& values, double c, double p) {
    double cost = 0.0;
    if (p == 0.5) {
        for (const double v : values) cost += std::sqrt(std::fabs(v - c));
    } else if (p == 1.0) {
        for (const double v : values) cost += std::fabs(v - c);
    } else if (p == 2.0) {
        for (const double v : values) cost += (v - c) * (v - c);
    } else {
        for (const double v : values) cost += std::pow(std::fabs(v - c), p);
    }
    return cost;
}

double best_candidate(const std::vector<double>& values, std::vector<double> candidates,
                      double p) {
    double mean = 0.0;
    for (const double v : values) mean += v;
    candidates.push_back(mean / static_cast<double>(values.size()));
    std::sort(candidates.begin(), candidates.end());
    double best = candidates.front();
    double best_cost = std::numeric_limits<double>::infinity();
    for (const double c : candidates) {
        const double cost = pcost(values, c, p);
        if (cost < best_cost) {
            best_cost = cost;
            best = c;
        }
    }
    return best;
}

}  // namespace

double p_median(const std::vector<double>& values, double p) {
    if (values.empty()) throw std::invalid_argument("p_median: empty sample");
    return best_candidate(values, values, p);
}

ExtensionAssembly build_extension_assembly(const FattenedDomain& fat, int level) {
    ExtensionAssembly as;
    as.level = level;
    as.fat_id = fat.id();
    as.base_id = fat.base.name;
    const DomainView fv = fat.view();
    const FractionalParams mask_params{0.5, 2.0, fat.base.dim};
    as.fat_mask = build_grid(fv, level, mask_params, [](const Pt&) { return 0.0; });

    as.exterior = whitney_decompose(fat.boundary_cloud, fat.base.bbox, level);
    for (const auto& q : as.exterior.cubes)
        if (!fv.inside(q.center())) as.ext_cubes.push_back(q);
    if (as.ext_cubes.empty())
        throw std::runtime_error("extension assembly: no exterior cubes for " + fat.id());

    // per-level slot maps for candidate lookup around a point
    std::vector<std::pair<int, SlotMap>> levels;
    for (std::uint32_t ord = 0; ord < as.ext_cubes.size(); ++ord) {
        const auto& q = as.ext_cubes[ord];
        auto it = std::find_if(levels.begin(), levels.end(),
                               [&](const auto& kv) { return kv.first == q.level; });
        if (it == levels.end()) {
            levels.push_back({q.level, {}});
            it = std::prev(levels.end());
        }
        it->second.insert(
            {{q.idx[0], q.dim > 1 ? q.idx[1] : 0, q.dim > 2 ? q.idx[2] : 0}, ord});
    }

    const GridFunction& mask = as.fat_mask;
    const std::int64_t total = mask.size();
    const int d = mask.dim;
    const double dilation = as.pou_dilation;
    as.pou_start.assign(total + 1, 0);

    struct RowEntries {
        std::vector<std::int64_t> cell_start;  // local CSR over the row's cells
        std::vector<ExtensionAssembly::PouEntry> entries;
        std::int64_t uncovered = 0;
    };
    const std::int64_t nrows = total / mask.n[0];
    std::vector<RowEntries> rows(nrows);
    parallel_for(nrows, [&](std::int64_t row) {
        RowEntries& re = rows[row];
        re.cell_start.assign(mask.n[0] + 1, 0);
        std::vector<std::pair<std::uint32_t, double>> found;
        for (std::int64_t i0 = 0; i0 < mask.n[0]; ++i0) {
            re.cell_start[i0] = static_cast<std::int64_t>(re.entries.size());
            const std::int64_t cell = row * mask.n[0] + i0;
            if (mask.mask[cell]) continue;  // interior keeps its own values
            const Pt x = mask.cell_center(cell);
            found.clear();
            for (const auto& [lvl, slots] : levels) {
                std::array<std::int64_t, 3> base{0, 0, 0};
                for (int i = 0; i < d; ++i)
                    base[i] = static_cast<std::int64_t>(std::floor(std::ldexp(x[i], lvl)));
                const int span = 3;
                for (int n2 = 0; n2 < (d > 2 ? span : 1); ++n2)
                    for (int n1 = 0; n1 < (d > 1 ? span : 1); ++n1)
                        for (int n0 = 0; n0 < span; ++n0) {
                            std::array<std::int64_t, 3> key = base;
                            key[0] += n0 - 1;
                            if (d > 1) key[1] += n1 - 1;
                            if (d > 2) key[2] += n2 - 1;
                            const auto it = slots.find(key);
                            if (it == slots.end()) continue;
                            const double b =
                                bump_weight(as.ext_cubes[it->second], x, dilation);
                            if (b > 0.0) found.push_back({it->second, b});
                        }
            }
            double sum = 0.0;
            for (const auto& [ord, b] : found) sum += b;
            if (sum <= 0.0) {
                re.uncovered++;
                continue;
            }
            std::sort(found.begin(), found.end());
            for (const auto& [ord, b] : found) re.entries.push_back({ord, b / sum});
        }
        re.cell_start[mask.n[0]] = static_cast<std::int64_t>(re.entries.size());
    });
    std::int64_t count = 0;
    for (std::int64_t row = 0; row < nrows; ++row) {
        as.uncovered_cells += rows[row].uncovered;
        for (std::int64_t i0 = 0; i0 < mask.n[0]; ++i0) {
            as.pou_start[row * mask.n[0] + i0] = count + rows[row].cell_start[i0];
        }
        count += static_cast<std::int64_t>(rows[row].entries.size());
    }
    as.pou_start[total] = count;
    as.pou_entries.resize(count);
    parallel_for(nrows, [&](std::int64_t row) {
        const std::int64_t base = as.pou_start[row * mask.n[0]];
        std::copy(rows[row].entries.begin(), rows[row].entries.end(),
                  as.pou_entries.begin() + base);
    });
    return as;
}

GridFunction zero_extend(const GridFunction& f, const FattenedDomain& fat) {
    ExtensionAssembly tmp;
    tmp.fat_mask = build_grid(fat.view(), f.level, f.params, [](const Pt&) { return 0.0; });
    tmp.fat_id = fat.id();
    tmp.base_id = fat.base.name;
    return zero_extend(f, tmp);
}

GridFunction zero_extend(const GridFunction& f, const ExtensionAssembly& assembly) {
    const GridFunction& mask = assembly.fat_mask;
    if (f.domain_id != assembly.base_id)
        throw std::invalid_argument("zero_extend: function lives on '" + f.domain_id +
                                    "', not on '" + assembly.base_id + "'");
    if (f.level != mask.level || f.n != mask.n)
        throw std::invalid_argument("zero_extend: grid layout mismatch");
    GridFunction g = f;
    g.domain_id = assembly.fat_id;
    g.mask = mask.mask;
    g.ncells = mask.ncells;
    for (std::int64_t i = 0; i < f.size(); ++i) {
        if (f.mask[i] && !mask.mask[i])
            throw std::runtime_error("zero_extend: source cell outside the fattened set");
        g.v[i] = f.mask[i] ? f.v[i] : 0.0;
    }
    return g;
}

GridFunction whitney_extend(const GridFunction& g, const ExtensionAssembly& as) {
    const GridFunction& mask = as.fat_mask;
    if (g.level != mask.level || g.n != mask.n)
        throw std::invalid_argument("whitney_extend: grid layout mismatch");
    const double p = g.params.p;
    const int d = g.dim;
    const double h = g.h();

    // cube values: mean (p >= 1) or p-median (p < 1) over the domain cells in
    // the reflection ball
    std::vector<double> a(as.ext_cubes.size(), 0.0);
    parallel_for(static_cast<std::int64_t>(as.ext_cubes.size()), [&](std::int64_t qi) {
        const DyadicCube& q = as.ext_cubes[qi];
        if (q.diam() > as.far_cutoff_diam) return;  // far field carries 0
        const Pt c = q.center();
        const double rad = as.reflection_factor * q.diam();
        std::array<std::int64_t, 3> blo{0, 0, 0}, bhi{1, 1, 1};
        for (int i = 0; i < d; ++i) {
            blo[i] = std::max<std::int64_t>(
                0, static_cast<std::int64_t>(std::floor((c[i] - rad) / h)) - g.lo[i]);
            bhi[i] = std::min<std::int64_t>(
                g.n[i],
                static_cast<std::int64_t>(std::ceil((c[i] + rad) / h)) - g.lo[i] + 1);
        }
        double sum = 0.0;
        std::int64_t count = 0;
        std::vector<double> vals;  // only gathered for the median branch
        const bool median = p < 1.0;
        for (std::int64_t i2 = (d > 2 ? blo[2] : 0); i2 < (d > 2 ? bhi[2] : 1); ++i2)
            for (std::int64_t i1 = (d > 1 ? blo[1] : 0); i1 < (d > 1 ? bhi[1] : 1); ++i1)
                for (std::int64_t i0 = blo[0]; i0 < bhi[0]; ++i0) {
                    const std::int64_t cell = g.flat(i0, i1, i2);
                    if (!mask.mask[cell]) continue;
                    if (dist2(g.cell_center(cell), c, d) > rad * rad) continue;
                    sum += g.v[cell];
                    ++count;
                    if (median) vals.push_back(g.v[cell]);
                }
        if (count == 0)
            throw std::runtime_error("whitney_extend: empty reflection ball for " + q.str() +
                                     " (thickness violated or grid too coarse)");
        if (!median) {
            a[qi] = sum / static_cast<double>(count);
        } else {
            // subsample large balls; the discrete minimizer sits at a sample
            const std::size_t max_vals = 2048, max_cands = 128;
            if (vals.size() > max_vals) {
                std::vector<double> sub;
                sub.reserve(max_vals);
                const std::size_t stride = vals.size() / max_vals + 1;
                for (std::size_t i = 0; i < vals.size(); i += stride) sub.push_back(vals[i]);
                vals.swap(sub);
            }
            std::vector<double> cands;
            if (vals.size() > max_cands) {
                const std::size_t stride = vals.size() / max_cands + 1;
                for (std::size_t i = 0; i < vals.size(); i += stride)
                    cands.push_back(vals[i]);
            } else {
                cands = vals;
            }
            a[qi] = best_candidate(vals, std::move(cands), p);
        }
    });

    GridFunction out = build_full_grid(g.bbox, d, g.level, g.params, g.domain_id + ":extended");
    const std::int64_t nrows = out.size() / out.n[0];
    parallel_for(nrows, [&](std::int64_t row) {
        for (std::int64_t i0 = 0; i0 < out.n[0]; ++i0) {
            const std::int64_t cell = row * out.n[0] + i0;
            if (mask.mask[cell]) {
                out.v[cell] = g.v[cell];
                continue;
            }
            double val = 0.0;
            for (std::int64_t e = as.pou_start[cell]; e < as.pou_start[cell + 1]; ++e)
                val += as.pou_entries[e].weight * a[as.pou_entries[e].cube];
            out.v[cell] = val;
        }
    });
    return out;
}

ExtensionResult extend_full(const GridFunction& f, const FattenedDomain& fat,
                            const ExtensionAssembly& assembly) {
    const bool timing = std::getenv("FRACEXT_TIMING") != nullptr;
    auto t0 = std::chrono::steady_clock::now();
    auto lap = [&](const char* what) {
        const auto t1 = std::chrono::steady_clock::now();
        if (timing)
            std::cerr << "[timing]   extend_full/" << what << " "
                      << std::chrono::duration<double>(t1 - t0).count() << "s\n";
        t0 = t1;
    };
    ExtensionResult res;
    const GridFunction g = zero_extend(f, assembly);
    lap("zero_extend");
    res.output = whitney_extend(g, assembly);
    lap("whitney_extend");

    res.in_seminorm = seminorm_wsp(f);
    lap("in_seminorm");
    res.in_lp = lp_norm(f);
    const HardyResult hr = hardy_norm(f, fat.base.cloud_D_fine);
    res.in_hardy = hr.norm;
    res.in_hardy_divergent = hr.divergence_suspected;
    lap("in_lp_hardy");
    res.out_seminorm = seminorm_wsp(res.output);
    lap("out_seminorm");
    res.out_lp = lp_norm(res.output);

    const double p = f.params.p;
    auto comb = [p](std::initializer_list<double> parts) {
        double s = 0.0;
        for (const double x : parts) s += std::pow(x, p);
        return std::pow(s, 1.0 / p);
    };
    res.in_combined = comb({res.in_seminorm, res.in_lp, res.in_hardy});
    res.out_combined = comb({res.out_seminorm, res.out_lp});
    if (res.in_combined == 0.0) {
        res.trivial = true;
        res.ratio = 0.0;
    } else {
        res.ratio = res.out_combined / res.in_combined;
    }
    return res;
}

double restriction_check(const ExtensionResult& res, const GridFunction& f) {
    if (res.output.n != f.n || res.output.level != f.level)
        throw std::invalid_argument("restriction_check: layout mismatch");
    double dev = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i)
        if (f.mask[i]) dev = std::max(dev, std::fabs(res.output.v[i] - f.v[i]));
    return dev;
}

}  // namespace fracext
