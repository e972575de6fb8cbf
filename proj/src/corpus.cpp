#include "fracext/corpus.hpp"

#include <cmath>

#include "fracext/rng.hpp"

namespace fracext {

const char* to_string(CorpusFamily f) {
    switch (f) {
        case CorpusFamily::hardy_power: return "hardy_power";
        case CorpusFamily::smooth_bump: return "smooth_bump";
        case CorpusFamily::random_trig: return "random_trig";
        case CorpusFamily::indicator_negative_control: return "indicator_negative_control";
    }
    return "?";
}

CorpusFamily corpus_family_from(const std::string& name) {
    if (name == "hardy_power") return CorpusFamily::hardy_power;
    if (name == "smooth_bump") return CorpusFamily::smooth_bump;
    if (name == "random_trig") return CorpusFamily::random_trig;
    if (name == "indicator_negative_control") return CorpusFamily::indicator_negative_control;
    throw std::invalid_argument("unknown corpus family '" + name + "'");
}

std::string CorpusSpec::label() const {
    std::string s = to_string(family);
    if (family == CorpusFamily::hardy_power) s += "_a" + std::to_string(alpha);
    if (family == CorpusFamily::random_trig) s += "_seed" + std::to_string(seed);
    return s;
}

namespace {

// deepest probed cell of the domain: bump center and radius, and the split
// coordinate for the indicator control
struct Probe {
    Pt deep_center{0, 0, 0};
    double deep_dist = 0.0;
    double x_mid = 0.0;
};

Probe probe_domain(const DomainView& dom, const PointCloudSet& boundary_like) {
    Probe pr;
    const int lvl = std::min(dom.level, 6);
    const double h = std::ldexp(1.0, -lvl);
    double x_lo = 0, x_hi = 0;
    bool seen = false;
    for (double x = dom.bbox.lo[0] + h / 2; x < dom.bbox.hi[0]; x += h)
        for (double y = dom.dim > 1 ? dom.bbox.lo[1] + h / 2 : 0.0;
             y < (dom.dim > 1 ? dom.bbox.hi[1] : 1.0); y += (dom.dim > 1 ? h : 2.0))
            for (double z = dom.dim > 2 ? dom.bbox.lo[2] + h / 2 : 0.0;
                 z < (dom.dim > 2 ? dom.bbox.hi[2] : 1.0); z += (dom.dim > 2 ? h : 2.0)) {
                const Pt c = pt(x, y, z);
                if (!dom.inside(c)) continue;
                if (!seen) {
                    x_lo = x_hi = x;
                    seen = true;
                } else {
                    x_lo = std::min(x_lo, x);
                    x_hi = std::max(x_hi, x);
                }
                const double dd =
                    boundary_like.empty() ? 1.0 : boundary_like.dist_to(c);
                if (dd > pr.deep_dist) {
                    pr.deep_dist = dd;
                    pr.deep_center = c;
                }
            }
    if (!seen) throw std::runtime_error("corpus: domain has no probed interior cells");
    pr.x_mid = 0.5 * (x_lo + x_hi);
    return pr;
}

double envelope(const Pt& x, const PointCloudSet& D, double alpha) {
    if (D.empty()) return 1.0;
    return std::pow(D.dist_to(x), alpha);
}

}  // namespace

GridFunction generate(const CorpusSpec& spec, const DomainView& dom, const PointCloudSet& D,
                      const PointCloudSet& boundary) {
    spec.params.validate();
    const double s = spec.params.s, p = spec.params.p;
    switch (spec.family) {
        case CorpusFamily::hardy_power: {
            if (D.empty())
                throw std::invalid_argument("hardy_power needs a non-empty D (region " +
                                            dom.id + ")");
            const double a = spec.alpha;
            return build_grid(dom, dom.level, spec.params,
                              [&D, a](const Pt& x) { return std::pow(D.dist_to(x), a); });
        }
        case CorpusFamily::smooth_bump: {
            // compactly supported away from the boundary, C^inf profile
            const Probe pr = probe_domain(dom, boundary);
            const double rho = pr.deep_dist > 0 ? 0.8 * pr.deep_dist : 0.25;
            const Pt c = pr.deep_center;
            const int d = dom.dim;
            return build_grid(dom, dom.level, spec.params, [c, rho, d](const Pt& x) {
                const double t2 = dist2(x, c, d) / (rho * rho);
                if (t2 >= 1.0) return 0.0;
                return std::exp(1.0 - 1.0 / (1.0 - t2));
            });
        }
        case CorpusFamily::random_trig: {
            Rng g = seed_stream(spec.seed, 0x7121);
            const int modes = std::max(1, spec.modes);
            std::vector<std::array<double, 5>> coef(modes);  // a, kx, ky, kz, theta
            for (auto& m : coef) {
                m[0] = g.uniform(-1.0, 1.0);
                for (int i = 0; i < 3; ++i)
                    m[1 + i] = M_PI * static_cast<double>(1 + g.below(3));
                m[4] = g.uniform(0.0, 2.0 * M_PI);
            }
            const double a = s + 0.1;
            const int d = dom.dim;
            return build_grid(dom, dom.level, spec.params, [coef, a, d, &D](const Pt& x) {
                double t = 0.0;
                for (const auto& m : coef) {
                    double phase = m[4];
                    for (int i = 0; i < d; ++i) phase += m[1 + i] * x[i];
                    t += m[0] * std::cos(phase);
                }
                return t * envelope(x, D, a);
            });
        }
        case CorpusFamily::indicator_negative_control: {
            const Probe pr = probe_domain(dom, boundary);
            const double mid = pr.x_mid;
            return build_grid(dom, dom.level, spec.params,
                              [mid](const Pt& x) { return x[0] < mid ? 1.0 : 0.0; });
        }
    }
    throw std::invalid_argument("generate: unknown corpus family");
    (void)p;
}

}  // namespace fracext
