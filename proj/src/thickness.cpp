#include "fracext/thickness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "fracext/parallel.hpp"
#include "fracext/rng.hpp"

namespace fracext {

double measure_density(const DomainView& E, const Pt& x, double r, std::int64_t n_mc,
                       std::uint64_t stream_seed) {
    if (!(r > 0.0)) throw std::invalid_argument("measure_density: need r > 0");
    if (n_mc < 1000) throw std::invalid_argument("measure_density: need n_mc >= 10^3");
    std::int64_t hits = 0;
    Rng g(stream_seed);
    for (std::int64_t t = 0; t < n_mc; ++t) {
        const Pt y = sample_in_ball(g, E.dim, x, r);
        if (E.inside(y)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n_mc);
}

namespace {

double default_r_min(const DomainView& E, const ThicknessProtocol& tp) {
    return tp.r_min > 0.0 ? tp.r_min : std::ldexp(1.0, -(E.level - 2));
}

Pt pick_center(const PointCloudSet& F, const ThicknessProtocol& tp, const Pt* tip, int ci,
               double r_min) {
    Rng g = seed_stream(tp.seed, 0xC0FFEE, static_cast<std::uint64_t>(ci));
    if (!tp.bias_to_accumulation || tip == nullptr) {
        return F.points()[g.below(F.size())];
    }
    // log-uniform target distance from the tip, then the closest matching
    // cloud point; stresses the scales where thickness degrades
    double dmax = 0.0;
    for (const Pt& p : F.points()) dmax = std::max(dmax, dist(p, *tip, F.dim()));
    const double dmin = std::max(0.25 * r_min, 1e-9);
    const double target = std::exp(g.uniform(std::log(dmin), std::log(std::max(dmax, 2 * dmin))));
    const Pt* best = &F.points()[0];
    double best_err = std::numeric_limits<double>::infinity();
    for (const Pt& p : F.points()) {
        const double err = std::abs(dist(p, *tip, F.dim()) - target);
        if (err < best_err) {
            best_err = err;
            best = &p;
        }
    }
    return *best;
}

// shared driver: samples (center_i, radius_ij) pairs; radius_cap limits the
// admissible radii per center (degenerate variant), NaN cap skips the center
ThicknessReport run_check(const DomainView& E, const PointCloudSet& F,
                          const ThicknessProtocol& tp, const Pt* tip,
                          const std::function<double(const Pt&)>& radius_cap) {
    tp.validate();
    if (F.empty()) throw std::runtime_error("thickness check: empty center set");
    ThicknessReport rep;
    rep.protocol = tp;
    rep.domain_id = E.id;
    const double r_min = default_r_min(E, tp);
    rep.resolved_r_min = r_min;

    std::vector<Pt> centers(tp.centers);
    for (int ci = 0; ci < tp.centers; ++ci) centers[ci] = pick_center(F, tp, tip, ci, r_min);

    struct Slot {
        ThicknessSample s;
        bool used = false;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(tp.centers) * tp.radii);
    std::vector<std::uint8_t> center_used(tp.centers, 0);

    parallel_for(tp.centers, [&](std::int64_t ci) {
        const Pt c = centers[ci];
        const double cap = radius_cap(c);
        for (int ri = 0; ri < tp.radii; ++ri) {
            Rng g = seed_stream(tp.seed, 0xBA11, static_cast<std::uint64_t>(ci),
                                static_cast<std::uint64_t>(ri));
            const double r =
                std::exp(g.uniform(std::log(r_min), std::log(tp.r_max)));
            if (!(r <= cap)) continue;  // degenerate variant filters radii
            const std::uint64_t ms =
                seed_mix(seed_mix(tp.seed, 0xD1CE), seed_mix(ci, ri));
            Slot& slot = slots[static_cast<std::size_t>(ci) * tp.radii + ri];
            slot.s = ThicknessSample{c, r, measure_density(E, c, r, tp.mc_samples, ms)};
            slot.used = true;
            center_used[ci] = 1;
        }
    });

    for (const auto& slot : slots)
        if (slot.used) rep.samples.push_back(slot.s);
    for (int ci = 0; ci < tp.centers; ++ci)
        if (!center_used[ci]) rep.skipped_centers++;
    if (rep.samples.empty()) {
        rep.inf_density = 0.0;
        return rep;
    }
    rep.inf_density = rep.samples.front().density;
    for (const auto& s : rep.samples) rep.inf_density = std::min(rep.inf_density, s.density);
    return rep;
}

}  // namespace

ThicknessReport check_itc_in(const DomainView& E, const PointCloudSet& F,
                             const ThicknessProtocol& tp, const Pt* accumulation_point) {
    return run_check(E, F, tp, accumulation_point,
                     [](const Pt&) { return std::numeric_limits<double>::infinity(); });
}

ThicknessReport check_itc(const DomainView& E, const ThicknessProtocol& tp) {
    tp.validate();
    // rejection-sample interior centers, then reuse the boundary-centered
    // driver with a synthetic center cloud
    std::vector<Pt> centers;
    centers.reserve(tp.centers);
    Rng g = seed_stream(tp.seed, 0x1A7E);
    const std::int64_t max_tries = 4'000'000;
    std::int64_t tries = 0;
    while (static_cast<int>(centers.size()) < tp.centers) {
        if (++tries > max_tries)
            throw std::runtime_error("check_itc: interior sampling failed for " + E.id);
        const Pt x = sample_in_box(g, E.bbox);
        if (E.inside(x)) centers.push_back(x);
    }
    PointCloudSet cloud(E.dim, E.level, E.id + ":interior-centers", std::move(centers));
    ThicknessProtocol tq = tp;
    tq.bias_to_accumulation = false;
    return run_check(E, cloud, tq, nullptr,
                     [](const Pt&) { return std::numeric_limits<double>::infinity(); });
}

ThicknessReport check_degenerate_itc(const DomainView& O, const PointCloudSet& N,
                                     const PointCloudSet& D, const ThicknessProtocol& tp) {
    const double res = std::ldexp(1.0, -O.level);
    auto cap = [&](const Pt& x) {
        const double dd = dist_or_inf(D, x);
        if (dd < res) return std::numeric_limits<double>::quiet_NaN();  // skip center
        return std::min(tp.r_max, dd);
    };
    return run_check(O, N, tp, nullptr, cap);
}

ConsistencyReport lemma22_consistency(const DomainView& E, const PointCloudSet& boundary,
                                      const ThicknessProtocol& tp) {
    ConsistencyReport rep;
    rep.boundary = check_itc_in(E, boundary, tp);
    rep.interior = check_itc(E, tp);
    rep.boundary_inf = rep.boundary.inf_density;
    rep.interior_inf = rep.interior.inf_density;
    return rep;
}

}  // namespace fracext
