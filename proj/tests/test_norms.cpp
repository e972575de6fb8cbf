#include <doctest.h>

#include <cmath>

#include "fracext/norms.hpp"
#include "fracext/region.hpp"
#include "test_util.hpp"

using namespace fracext;

namespace {

// independent O(n^2) oracle over all ordered cell pairs
double brute_pair_power(const GridFunction& f) {
    const double expo = -(f.params.sp() + f.dim);
    const double w = std::pow(f.h(), 2.0 * f.dim);
    double total = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i) {
        if (!f.mask[i]) continue;
        for (std::int64_t j = 0; j < f.size(); ++j) {
            if (!f.mask[j] || i == j) continue;
            const double r2 = dist2(f.cell_center(i), f.cell_center(j), f.dim);
            if (r2 >= 1.0) continue;
            total += std::pow(std::fabs(f.v[i] - f.v[j]), f.params.p) *
                     std::pow(std::sqrt(r2), expo) * w;
        }
    }
    return total;
}

double brute_cross_power(const GridFunction& f, const std::vector<std::uint8_t>& other) {
    const double expo = -(f.params.sp() + f.dim);
    const double w = std::pow(f.h(), 2.0 * f.dim);
    double total = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i) {
        if (!f.mask[i]) continue;
        for (std::int64_t j = 0; j < f.size(); ++j) {
            if (!other[j] || i == j) continue;
            const double r2 = dist2(f.cell_center(i), f.cell_center(j), f.dim);
            if (r2 >= 1.0 || r2 == 0.0) continue;
            total += std::pow(std::fabs(f.v[i]), f.params.p) * std::pow(std::sqrt(r2), expo) * w;
        }
    }
    return total;
}

DomainView unit_interval(int level) {
    return DomainView{"unit_interval", 1, level, Box{pt(-4), pt(4), 1},
                      [](const Pt& x) { return x[0] > 0.0 && x[0] < 1.0; }};
}

}  // namespace

TEST_CASE("pair sum matches the brute-force oracle (d = 1, 2, 3; all p kinds)") {
    SUBCASE("d2 masked region, several p") {
        const DomainView dom{"blob", 2, 4, Box{pt(-1, -1), pt(1, 1), 2}, [](const Pt& x) {
                                 return x[0] * x[0] + 0.5 * x[1] * x[1] < 0.4;
                             }};
        for (const double p : {0.5, 1.0, 2.0, 1.7}) {
            GridFunction f = build_grid(dom, 4, FractionalParams{0.6, p, 2},
                                        [](const Pt& x) { return std::sin(3 * x[0]) + x[1]; });
            const double got = seminorm_wsp_power(f);
            const double want = brute_pair_power(f);
            CAPTURE(p);
            CHECK(got == doctest::Approx(want).epsilon(p == 0.5 ? 1e-6 : 1e-10));
        }
    }
    SUBCASE("d1") {
        GridFunction f = build_grid(unit_interval(5), 5, FractionalParams{0.5, 2.0, 1},
                                    [](const Pt& x) { return x[0] * x[0]; });
        CHECK(seminorm_wsp_power(f) == doctest::Approx(brute_pair_power(f)).epsilon(1e-10));
    }
    SUBCASE("d3") {
        const DomainView dom{"ball3", 3, 3, Box{pt(-1, -1, -1), pt(1, 1, 1), 3},
                             [](const Pt& x) { return norm2(x, 3) < 0.6; }};
        GridFunction f = build_grid(dom, 3, FractionalParams{0.4, 2.0, 3},
                                    [](const Pt& x) { return x[0] + 2 * x[1] * x[2]; });
        CHECK(seminorm_wsp_power(f) == doctest::Approx(brute_pair_power(f)).epsilon(1e-10));
    }
}

TEST_CASE("cross term matches its brute-force oracle") {
    const DomainView inner{"inner", 2, 4, Box{pt(-1, -1), pt(1, 1), 2},
                           [](const Pt& x) { return norm2(x, 2) < 0.2; }};
    const DomainView outer{"outer", 2, 4, Box{pt(-1, -1), pt(1, 1), 2},
                           [](const Pt& x) { return norm2(x, 2) >= 0.2 && norm2(x, 2) < 0.5; }};
    GridFunction f = build_grid(inner, 4, FractionalParams{0.5, 2.0, 2},
                                [](const Pt& x) { return 1.0 + x[0]; });
    const GridFunction other =
        build_grid(outer, 4, FractionalParams{0.5, 2.0, 2}, [](const Pt&) { return 0.0; });
    CHECK(cross_term_power(f, other.mask) ==
          doctest::Approx(brute_cross_power(f, other.mask)).epsilon(1e-10));
}

TEST_CASE("seminorm: constants vanish, homogeneity holds") {
    const RegionSpec disk = builtin_geometry("disk", 5);
    GridFunction c = build_grid(view_of(disk), 5, FractionalParams{0.5, 2.0, 2},
                                [](const Pt&) { return 3.25; });
    CHECK(seminorm_wsp(c) == 0.0);

    GridFunction f = build_grid(view_of(disk), 5, FractionalParams{0.5, 1.0, 2},
                                [](const Pt& x) { return x[0] - 0.3 * x[1]; });
    GridFunction g = f;
    for (auto& v : g.v) v *= -2.5;
    CHECK(seminorm_wsp(g) == doctest::Approx(2.5 * seminorm_wsp(f)).epsilon(1e-10));
    CHECK(lp_norm(g) == doctest::Approx(2.5 * lp_norm(f)).epsilon(1e-10));
    const RegionSpec iv = builtin_geometry("interval_with_endpoint_D", 8);
    GridFunction h = build_grid(view_of(iv), 8, FractionalParams{0.5, 2.0, 1},
                                [](const Pt& x) { return x[0]; });
    GridFunction h2 = h;
    for (auto& v : h2.v) v *= 4.0;
    CHECK(hardy_norm(h2, iv.cloud_D).norm ==
          doctest::Approx(4.0 * hardy_norm(h, iv.cloud_D).norm).epsilon(1e-10));
}

TEST_CASE("linear fixture on the interval: seminorm converges to 1") {
    // f(x) = x with s = 1/2, p = 2: the kernel cancels and the quadrature
    // value has the closed form n(n-1)h^2 = 1 - h
    double prev_err = 1.0;
    for (int L = 6; L <= 11; ++L) {
        GridFunction f = build_grid(unit_interval(L), L, FractionalParams{0.5, 2.0, 1},
                                    [](const Pt& x) { return x[0]; });
        const double sem = seminorm_wsp(f);
        const double h = f.h();
        const std::int64_t n = f.ncells;
        CHECK(seminorm_wsp_power(f) ==
              doctest::Approx(static_cast<double>(n) * (n - 1) * h * h).epsilon(1e-9));
        const double err = std::fabs(sem - 1.0);
        CAPTURE(L);
        CHECK(err < prev_err);                      // monotone decay
        if (L > 6) CHECK(err / prev_err >= 1.0 / 3.0);  // halves, up to factor 1.5
        if (L > 6) CHECK(err / prev_err <= 0.75);
        prev_err = err;
        if (L == 11) CHECK_NEAR(sem, 1.0, 0.03);
    }
}

TEST_CASE("lp norms: unit constants, areas and the linear fixture") {
    GridFunction one = build_grid(unit_interval(8), 8, FractionalParams{0.5, 2.0, 1},
                                  [](const Pt&) { return 1.0; });
    CHECK(lp_norm(one) == doctest::Approx(1.0).epsilon(1e-13));

    const RegionSpec disk = builtin_geometry("disk", 8);
    GridFunction ind = build_grid(view_of(disk), 8, FractionalParams{0.5, 1.0, 2},
                                  [](const Pt&) { return 1.0; });
    CHECK_NEAR(lp_norm(ind), M_PI, 0.05);

    GridFunction lin = build_grid(unit_interval(9), 9, FractionalParams{0.5, 2.0, 1},
                                  [](const Pt& x) { return x[0]; });
    CHECK_NEAR(lp_norm(lin), 1.0 / std::sqrt(3.0), 1e-4);
}

TEST_CASE("weighted norm: exact interval values and the divergence flag") {
    const RegionSpec iv = builtin_geometry("interval_with_endpoint_D", 9);
    GridFunction lin = build_grid(view_of(iv), 9, FractionalParams{0.5, 2.0, 1},
                                  [](const Pt& x) { return x[0]; });
    const HardyResult h1 = hardy_norm(lin, iv.cloud_D);
    CHECK(h1.norm == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK_FALSE(h1.divergence_suspected);

    GridFunction one = build_grid(view_of(iv), 9, FractionalParams{0.5, 2.0, 1},
                                  [](const Pt&) { return 1.0; });
    const HardyResult h2 = hardy_norm(one, iv.cloud_D);
    CHECK(h2.divergence_suspected);
    CHECK(h2.cells_below_resolution >= 1);

    // D = {} convention: the weight vanishes
    const RegionSpec half = builtin_geometry("halfplane", 5);
    GridFunction g = build_grid(view_of(half), 5, FractionalParams{0.5, 2.0, 2},
                                [](const Pt&) { return 1.0; });
    CHECK(hardy_norm(g, half.cloud_D).norm == 0.0);
}

TEST_CASE("kernel integral: annulus control against the closed form") {
    // mask = annulus delta/2 < |y| < 1 around the origin; polar closed form
    const double delta = 0.5;
    const DomainView ann{"annulus", 2, 10, Box{pt(-2, -2), pt(2, 2), 2},
                         [delta](const Pt& x) {
                             const double r2 = norm2(x, 2);
                             return r2 > delta * delta / 4.0 && r2 < 1.0;
                         }};
    const FractionalParams params{0.5, 2.0, 2};
    const GridFunction mask = build_grid(ann, 10, params, [](const Pt&) { return 0.0; });
    const double got = hardy_kernel_integral(pt(0, 0), mask);
    const double sp = params.sp();
    const double want = sphere_area(2) / sp * (std::pow(delta / 2.0, -sp) - 1.0);
    CHECK(got == doctest::Approx(want).epsilon(0.01));
}

TEST_CASE("kernel integral: empty mask near the probe gives zero") {
    const DomainView far{"far", 2, 6, Box{pt(-4, -4), pt(4, 4), 2},
                         [](const Pt& x) { return x[0] > 2.5; }};
    const GridFunction mask =
        build_grid(far, 6, FractionalParams{0.5, 2.0, 2}, [](const Pt&) { return 0.0; });
    CHECK(hardy_kernel_integral(pt(0, 0), mask) == 0.0);
}

TEST_CASE("kernel bound constant matches the polar-coordinate formula") {
    CHECK(kernel_bound_constant(FractionalParams{0.5, 2.0, 2}) ==
          doctest::Approx(2.0 * M_PI * 2.0).epsilon(1e-12));
    CHECK(kernel_bound_constant(FractionalParams{0.25, 1.0, 1}) ==
          doctest::Approx(2.0 * std::pow(2.0, 0.25) / 0.25).epsilon(1e-12));
}
