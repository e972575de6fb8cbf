#include "fracext/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fracext/detail/pair_sum.hpp"
#include "fracext/parallel.hpp"

namespace fracext {

namespace {

constexpr std::int64_t kBlockShift = 12;  // lattice-aligned summation blocks

double power_of(double t, double p) {
    if (p == 2.0) return t * t;
    if (p == 1.0) return std::fabs(t);
    if (p == 0.5) return std::sqrt(std::fabs(t));
    return std::pow(std::fabs(t), p);
}

// Blocked cell sum: per-block plain accumulation in flat-index order, blocks
// combined in order. Cells outside the mask contribute exactly 0.0, so sums
// agree bitwise between a function and its zero extension on a wider mask.
template <class Term>
double blocked_cell_sum(const GridFunction& f, Term term) {
    const std::int64_t nblocks = (f.size() + (1 << kBlockShift) - 1) >> kBlockShift;
    std::vector<double> partial(nblocks, 0.0);
    parallel_for(nblocks, [&](std::int64_t b) {
        const std::int64_t lo = b << kBlockShift;
        const std::int64_t hi = std::min<std::int64_t>(f.size(), lo + (1 << kBlockShift));
        double s = 0.0;
        for (std::int64_t i = lo; i < hi; ++i)
            if (f.mask[i]) s += term(i);
        partial[b] = s;
    });
    long double total = 0.0L;
    for (const double p : partial) total += p;
    return static_cast<double>(total);
}

}  // namespace

double seminorm_wsp_power(const GridFunction& f) {
    if (f.ncells == 0) return 0.0;
    return detail::pair_power_sum(f);
}

double seminorm_wsp(const GridFunction& f) {
    return std::pow(seminorm_wsp_power(f), 1.0 / f.params.p);
}

double lp_norm_power(const GridFunction& f) {
    const double p = f.params.p;
    const double hd = std::pow(f.h(), f.dim);
    return blocked_cell_sum(f, [&](std::int64_t i) { return power_of(f.v[i], p) * hd; });
}

double lp_norm(const GridFunction& f) { return std::pow(lp_norm_power(f), 1.0 / f.params.p); }

HardyResult hardy_norm(const GridFunction& f, const PointCloudSet& D) {
    HardyResult res;
    if (D.empty()) return res;  // dist = +inf convention: weight vanishes
    const double p = f.params.p;
    const double sp = f.params.sp();
    const double hd = std::pow(f.h(), f.dim);
    const double h = f.h();

    // shell bookkeeping per block, merged in block order
    constexpr int kShellLo = -8, kShellHi = 40;
    const std::int64_t nblocks = (f.size() + (1 << kBlockShift) - 1) >> kBlockShift;
    struct BlockAcc {
        double sum = 0.0;
        std::int64_t below = 0;
        std::array<double, kShellHi - kShellLo> shells{};
    };
    std::vector<BlockAcc> acc(nblocks);
    parallel_for(nblocks, [&](std::int64_t b) {
        const std::int64_t lo = b << kBlockShift;
        const std::int64_t hi = std::min<std::int64_t>(f.size(), lo + (1 << kBlockShift));
        BlockAcc& a = acc[b];
        for (std::int64_t i = lo; i < hi; ++i) {
            if (!f.mask[i]) continue;
            const double dd = D.dist_to(f.cell_center(i));
            if (dd < h) a.below++;
            const double term = power_of(f.v[i], p) * std::pow(dd, -sp) * hd;
            a.sum += term;
            if (dd > 0.0) {
                const int shell = std::clamp(-std::ilogb(dd) - 1, kShellLo, kShellHi - 1);
                a.shells[shell - kShellLo] += term;
            }
        }
    });
    long double total = 0.0L;
    std::array<double, kShellHi - kShellLo> shells{};
    for (const auto& a : acc) {
        total += a.sum;
        res.cells_below_resolution += a.below;
        for (std::size_t k = 0; k < shells.size(); ++k) shells[k] += a.shells[k];
    }
    res.power = static_cast<double>(total);
    res.norm = std::pow(res.power, 1.0 / p);

    // shells with dist below the grid scale are resolution-limited; the sum
    // diverges when the remaining deep shells stop decaying
    std::vector<std::pair<int, double>> nonempty;
    for (int k = kShellLo; k < kShellHi; ++k) {
        const double s = shells[k - kShellLo];
        if (s > 0.0) {
            res.shell_sums.push_back({k, s});
            if (std::ldexp(1.0, -k) >= 2.0 * h) nonempty.push_back({k, s});
        }
    }
    if (nonempty.size() >= 4) {
        bool flat = true;
        const std::size_t m = nonempty.size();
        for (std::size_t j = m - 3; j < m; ++j) {
            if (nonempty[j].first != nonempty[j - 1].first + 1 ||
                nonempty[j].second < 0.7 * nonempty[j - 1].second)
                flat = false;
        }
        res.divergence_suspected = flat;
    }
    return res;
}

double cross_term_power(const GridFunction& f, const std::vector<std::uint8_t>& other_mask) {
    return detail::cross_power_sum(f, other_mask);
}

double hardy_kernel_integral(const Pt& x, const GridFunction& mask_grid) {
    const GridFunction& g = mask_grid;
    const double h = g.h();
    const double expo = -(g.params.sp() + g.dim);
    const double hd = std::pow(h, g.dim);
    // scan the bounding square of the unit ball around x
    std::array<std::int64_t, 3> lo{0, 0, 0}, hi{0, 0, 0};
    for (int i = 0; i < g.dim; ++i) {
        lo[i] = std::max<std::int64_t>(0, static_cast<std::int64_t>(
                                              std::floor((x[i] - 1.0) / h)) - g.lo[i]);
        hi[i] = std::min<std::int64_t>(g.n[i], static_cast<std::int64_t>(
                                                   std::ceil((x[i] + 1.0) / h)) - g.lo[i] + 1);
    }
    long double total = 0.0L;
    for (std::int64_t i2 = (g.dim > 2 ? lo[2] : 0); i2 < (g.dim > 2 ? hi[2] : 1); ++i2)
        for (std::int64_t i1 = (g.dim > 1 ? lo[1] : 0); i1 < (g.dim > 1 ? hi[1] : 1); ++i1)
            for (std::int64_t i0 = lo[0]; i0 < hi[0]; ++i0) {
                const std::int64_t fidx = g.flat(i0, i1, i2);
                if (!g.mask[fidx]) continue;
                const Pt c = g.cell_center(fidx);
                const double r2 = dist2(x, c, g.dim);
                if (r2 >= 1.0 || r2 == 0.0) continue;
                total += std::pow(std::sqrt(r2), expo) * hd;
            }
    return static_cast<double>(total);
}

double kernel_bound_constant(const FractionalParams& params) {
    const double sp = params.sp();
    return sphere_area(params.d) * std::pow(2.0, sp) / sp;
}

}  // namespace fracext
