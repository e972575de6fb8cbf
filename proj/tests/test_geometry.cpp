#include <doctest.h>

#include "test_util.hpp"

#include <cmath>
#include <set>

#include "fracext/region.hpp"
#include "fracext/rng.hpp"

using namespace fracext;

namespace {

// independent oracle: densely scan an analytic curve for the nearest point
double curve_min_dist(const Pt& x, const std::function<Pt(double)>& curve, double t0, double t1,
                      int n = 2000000) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        const double t = t0 + (t1 - t0) * i / n;
        best = std::min(best, dist(x, curve(t), 2));
    }
    return best;
}

}  // namespace

TEST_CASE("classify: halfplane basics") {
    const RegionSpec r = builtin_geometry("halfplane", 8);
    CHECK(r.classify(pt(1, 0)) == Label::inside_O);
    CHECK(r.classify(pt(0, 0.3)) == Label::in_N);
    CHECK(r.classify(pt(-1, 0.3)) == Label::outside);
    CHECK_THROWS_AS(r.classify(pt(40, 0)), std::domain_error);
}

TEST_CASE("classify: cusp boundary pieces") {
    const RegionSpec r = builtin_geometry("cusp_touching_halfplane", 8);
    CHECK(r.classify(pt(-0.5, 0.25)) == Label::in_D);   // upper parabola arc
    CHECK(r.classify(pt(-0.5, -0.25)) == Label::in_D);  // lower arc
    CHECK(r.classify(pt(0, 0)) == Label::in_D);         // tip, assigned to D
    CHECK(r.classify(pt(0, 0.3)) == Label::in_N);
    CHECK(r.classify(pt(0.5, 0)) == Label::inside_O);
    CHECK(r.classify(pt(-0.5, 0.1)) == Label::inside_O);   // inside the cusp
    CHECK(r.classify(pt(-0.5, 0.3)) == Label::outside);    // between cusp and nothing
    CHECK(r.classify(pt(1, 0.2)) == Label::in_D);          // right wall
    CHECK(r.classify(pt(0.5, 1.5)) == Label::in_D);        // lid
}

TEST_CASE("classify: unknown geometry and parameters are config errors") {
    CHECK_THROWS_AS(builtin_geometry("moebius", 8), std::invalid_argument);
    CHECK_THROWS_AS(builtin_geometry("halfplane", 8, {{"radius", 1.0}}),
                    std::invalid_argument);
}

TEST_CASE("partition property: one label per point, D/N separated") {
    for (const char* name : {"halfplane", "disk", "cusp_touching_halfplane",
                             "exp_whitney_cusp", "interval_with_endpoint_D"}) {
        const RegionSpec r = builtin_geometry(name, 8);
        Rng g = seed_stream(7, 99);
        int labels[4] = {0, 0, 0, 0};
        const double delta = 0.25 * std::ldexp(1.0, -r.level);
        for (int i = 0; i < 100000; ++i) {
            const Pt x = sample_in_box(g, r.bbox);
            const Label l = r.classify(x);
            labels[static_cast<int>(l)]++;
            if (l == Label::in_D) {
                // sub-resolution perturbations never flip D into N
                for (int k = 0; k < 20; ++k) {
                    Pt y = x;
                    for (int j = 0; j < r.dim; ++j) y[j] += g.uniform(-delta, delta);
                    CHECK(r.classify_raw(y) != Label::in_N);
                }
            }
        }
        CAPTURE(name);
        CHECK(labels[0] > 0);  // every geometry has interior bbox mass
    }
}

TEST_CASE("dist_to: analytic distances within cloud tolerance") {
    const RegionSpec half = builtin_geometry("halfplane", 9);
    const double tol9 = std::sqrt(2.0) * std::ldexp(1.0, -9);
    CHECK_NEAR(half.cloud_N.dist_to(pt(0.3, 0.7)), 0.3, tol9);

    const RegionSpec disk = builtin_geometry("disk", 9);
    CHECK_NEAR(disk.cloud_N.dist_to(pt(0.25, 0)), 0.75, tol9);
    CHECK_NEAR(disk.cloud_N.dist_to(pt(2.0, 0)), 1.0, tol9);

    const RegionSpec iv = builtin_geometry("interval_with_endpoint_D", 9);
    CHECK_NEAR(iv.cloud_D.dist_to(pt(0.3)), 0.3, 1e-12);

    // a cloud point itself has distance zero
    const Pt sample = disk.cloud_N.points()[17];
    CHECK_NEAR(disk.cloud_N.dist_to(sample), 0.0, 1e-12);
}

TEST_CASE("dist_to: cusp distance against a dense curve scan") {
    const RegionSpec cusp = builtin_geometry("cusp_touching_halfplane", 10);
    const Pt x = pt(-0.5, 0.0);
    // D near that point is the two parabola arcs
    const double oracle = std::min(
        curve_min_dist(x, [](double t) { return pt(t, t * t); }, -1.0, 0.0),
        curve_min_dist(x, [](double t) { return pt(t, -t * t); }, -1.0, 0.0));
    CHECK(oracle == doctest::Approx(0.187604).epsilon(1e-3));  // frozen oracle value
    const double measured = cusp.cloud_D.dist_to(x);
    CHECK_NEAR(measured, oracle, cusp.cloud_D.sample_tolerance());
}

TEST_CASE("dist_to: refinement stability") {
    // doubling the resolution moves distances by at most the coarse tolerance
    for (const char* name : {"halfplane", "disk", "cusp_touching_halfplane"}) {
        const RegionSpec r1 = builtin_geometry(name, 7);
        const RegionSpec r2 = builtin_geometry(name, 8);
        Rng g = seed_stream(11, 5);
        for (int i = 0; i < 200; ++i) {
            const Pt x = sample_in_box(g, r1.bbox);
            const double d1 = r1.cloud_boundary.dist_to(x);
            const double d2 = r2.cloud_boundary.dist_to(x);
            CAPTURE(name);
            CHECK(std::abs(d1 - d2) <= r1.cloud_boundary.sample_tolerance());
        }
    }
}

TEST_CASE("dist_to: empty cloud raises, dist_or_inf follows the convention") {
    const RegionSpec half = builtin_geometry("halfplane", 7);
    CHECK(half.cloud_D.empty());
    CHECK_THROWS_AS(half.cloud_D.dist_to(pt(0, 0)), std::runtime_error);
    CHECK(std::isinf(dist_or_inf(half.cloud_D, pt(0, 0))));
}

TEST_CASE("kd queries agree with brute force") {
    Rng g = seed_stream(3, 77);
    std::vector<Pt> pts;
    for (int i = 0; i < 3000; ++i) pts.push_back(pt(g.uniform(-2, 2), g.uniform(-2, 2)));
    const PointCloudSet cloud(2, 8, "test:random", pts);
    for (int i = 0; i < 500; ++i) {
        const Pt q = pt(g.uniform(-3, 3), g.uniform(-3, 3));
        double brute = std::numeric_limits<double>::infinity();
        for (const Pt& p : pts) brute = std::min(brute, dist(q, p, 2));
        CHECK_NEAR(cloud.dist_to(q), brute, 1e-12);
        const Box b{pt(q[0] - 0.1, q[1] - 0.2), pt(q[0] + 0.3, q[1] + 0.1), 2};
        double brute_box = std::numeric_limits<double>::infinity();
        for (const Pt& p : pts) brute_box = std::min(brute_box, b.dist_to(p));
        CHECK_NEAR(cloud.dist_to_box(b), brute_box, 1e-12);
    }
}

TEST_CASE("exp cusp: membership matches the cell rule") {
    const RegionSpec r = builtin_geometry("exp_whitney_cusp", 12);
    // the single kept top-row cell is [-2.125, -2] x [0.125, 0.25]
    CHECK(r.classify_raw(pt(-2.06, 0.2)) == Label::inside_O);
    CHECK(r.classify_raw(pt(-2.25, 0.2)) == Label::outside);
    CHECK(r.classify_raw(pt(-3.0, 0.2)) == Label::outside);
    // deep strip is fully kept (and clear of the boundary label band)
    CHECK(r.classify_raw(pt(-7.9, 0.0001)) == Label::inside_O);
    CHECK(r.classify_raw(pt(-2.1, 0.0001)) == Label::inside_O);
    CHECK(r.inside(pt(-7.9, 0.0001)));
    // outside the slab
    CHECK(r.classify_raw(pt(-8.5, 0.0001)) == Label::outside);
    CHECK(r.classify_raw(pt(-1.5, 0.0001)) == Label::outside);
    CHECK_FALSE(r.inside(pt(-8.5, 0.0001)));
    // the lower boundary is N, side walls are D
    CHECK(r.classify_raw(pt(-5.0, 0.0)) == Label::in_N);
    CHECK(r.classify_raw(pt(-8.0, 0.0)) == Label::in_D);
    // a staircase face point: directly above the set top at some x
    CHECK(r.classify_raw(pt(-2.06, 0.25)) == Label::in_D);
    // above the staircase but below the top row at a thin x: outside
    CHECK_FALSE(r.inside(pt(-7.9, 0.002)));
}

TEST_CASE("exp cusp: height profile tracks the exponential within a factor 4") {
    const RegionSpec r = builtin_geometry("exp_whitney_cusp", 8);
    for (double x = -7.9; x < -2.1; x += 0.37) {
        // measure the set height by bisection on the membership predicate
        double lo = 0.0, hi = 0.5;
        for (int it = 0; it < 40; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (r.inside(pt(x, mid)))
                lo = mid;
            else
                hi = mid;
        }
        const double height = lo, target = std::exp(x);
        CAPTURE(x);
        CHECK(height >= 0.9 * target);
        CHECK(height <= 4.0 * target);
    }
}
