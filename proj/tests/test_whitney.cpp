#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "fracext/region.hpp"
#include "fracext/whitney.hpp"
#include "test_util.hpp"

using namespace fracext;

namespace {

WhitneyDecomposition decompose_point_origin_1d(int finest) {
    const PointCloudSet n(1, finest, "test:origin", {pt(0)});
    return whitney_decompose(n, Box{pt(-1), pt(1), 1}, finest);
}

}  // namespace

TEST_CASE("1-d around the origin: exact enumeration") {
    const int F = 6;
    const WhitneyDecomposition w = decompose_point_origin_1d(F);
    // oracle by direct enumeration: intervals [2^-k, 2^-k+1] and mirrors,
    // k = 1..F; the two cells touching 0 are dropped
    std::vector<DyadicCube> expect;
    for (int k = 1; k <= F; ++k) {
        expect.push_back(DyadicCube{k, {1, 0, 0}, 1});
        expect.push_back(DyadicCube{k, {-2, 0, 0}, 1});
    }
    std::sort(expect.begin(), expect.end());
    REQUIRE(w.cubes.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(w.cubes[i] == expect[i]);
    CHECK(w.dropped.size() == 2);
    CHECK(w.dropped_volume == doctest::Approx(2.0 * std::ldexp(1.0, -F)));

    // the interval (1/4, 1/2) has diam 1/4 = dist, hence is accepted
    CHECK(w.contains(DyadicCube{2, {1, 0, 0}, 1}));
}

TEST_CASE("1-d cover defect matches the spec example bound") {
    const WhitneyDecomposition w = decompose_point_origin_1d(10);
    const WhitneyReport rep = verify_whitney(w);
    CHECK(rep.disjoint);
    CHECK(rep.cover_defect_volume <= 2.0 * std::ldexp(1.0, -10) + 1e-15);
    CHECK(rep.collar_ok);
}

TEST_CASE("2-d axis generator: layered columns, ratios in [1,4]") {
    const RegionSpec half = builtin_geometry("halfplane", 8);
    const WhitneyDecomposition w = whitney_decompose(half.cloud_N, half.bbox, 8);
    const WhitneyReport rep = verify_whitney(w);
    CHECK(rep.disjoint);
    CHECK(rep.ratio_min >= 1.0);
    CHECK(rep.ratio_max <= 4.0);
    CHECK(rep.collar_ok);

    // cubes of one size form exactly two lattice columns per side of the axis
    std::map<int, std::set<std::int64_t>> columns;
    for (const auto& q : w.cubes) columns[q.level].insert(q.idx[0]);
    for (const auto& [level, cols] : columns) {
        CAPTURE(level);
        for (const auto c : cols) {
            const std::int64_t m = c >= 0 ? c : -c - 1;  // distance in cube sides
            CHECK(m >= 2);
            CHECK(m <= 3);
        }
    }
}

TEST_CASE("determinism: identical inputs give identical cube lists") {
    const RegionSpec disk = builtin_geometry("disk", 7);
    const WhitneyDecomposition a = whitney_decompose(disk.cloud_N, disk.bbox, 7);
    const WhitneyDecomposition b = whitney_decompose(disk.cloud_N, disk.bbox, 7);
    REQUIRE(a.cubes.size() == b.cubes.size());
    for (std::size_t i = 0; i < a.cubes.size(); ++i) CHECK(a.cubes[i] == b.cubes[i]);
}

TEST_CASE("verify: constructed violations are caught") {
    WhitneyDecomposition w = decompose_point_origin_1d(6);
    SUBCASE("duplicated cube") {
        w.cubes.push_back(w.cubes.front());
        std::sort(w.cubes.begin(), w.cubes.end());
        CHECK_FALSE(verify_whitney(w).disjoint);
    }
    SUBCASE("nested cube") {
        w.cubes.push_back(w.cubes.back().child(0));
        std::sort(w.cubes.begin(), w.cubes.end());
        CHECK_FALSE(verify_whitney(w).disjoint);
    }
}

TEST_CASE("errors: empty generator and hopeless truncation") {
    const PointCloudSet empty(1, 6, "test:empty", {});
    CHECK_THROWS_AS(whitney_decompose(empty, Box{pt(-1), pt(1), 1}, 6), std::runtime_error);

    // a space-filling generator leaves nothing to accept
    std::vector<Pt> dense;
    for (double x = -1; x <= 1; x += 1.0 / 64) dense.push_back(pt(x));
    const PointCloudSet filling(1, 6, "test:dense", dense);
    CHECK_THROWS_AS(whitney_decompose(filling, Box{pt(-1), pt(1), 1}, 3), std::runtime_error);
}

TEST_CASE("neighbors: 1-d chain and membership errors") {
    const WhitneyDecomposition w = decompose_point_origin_1d(6);
    const DyadicCube q{2, {1, 0, 0}, 1};  // (1/4, 1/2)
    const auto nb = cube_neighbors(w, q);
    // itself, the right neighbor (1/2,1), and the left one (1/8,1/4)
    CHECK(nb.size() == 3);
    CHECK(std::find(nb.begin(), nb.end(), q) != nb.end());
    CHECK(std::find(nb.begin(), nb.end(), DyadicCube{1, {1, 0, 0}, 1}) != nb.end());
    CHECK(std::find(nb.begin(), nb.end(), DyadicCube{3, {1, 0, 0}, 1}) != nb.end());

    CHECK_THROWS_AS(cube_neighbors(w, DyadicCube{2, {7, 0, 0}, 1}), std::runtime_error);
}

TEST_CASE("neighbors: isolated cube sees only itself") {
    WhitneyDecomposition w;
    w.cubes = {DyadicCube{3, {1, 1, 0}, 2}};
    w.bbox = Box{pt(0, 0), pt(1, 1), 2};
    const auto nb = cube_neighbors(w, w.cubes[0]);
    REQUIRE(nb.size() == 1);
    CHECK(nb[0] == w.cubes[0]);
}

TEST_CASE("neighbors: interior cube in the layered picture stays below 3^d") {
    const RegionSpec half = builtin_geometry("halfplane", 7);
    const WhitneyDecomposition w = whitney_decompose(half.cloud_N, half.bbox, 7);
    // pick a mid-height cube in a fine column
    for (const auto& q : w.cubes) {
        if (q.level == 5 && q.idx[0] == 3 && std::abs(q.idx[1]) < 8) {
            const auto nb = cube_neighbors(w, q);
            CHECK(nb.size() - 1 <= 8);
            return;
        }
    }
    FAIL("expected a fine interior cube in the decomposition");
}

TEST_CASE("exactness: closure touch test runs on the common lattice") {
    CHECK(cubes_touch(DyadicCube{1, {0, 0, 0}, 2}, DyadicCube{1, {1, 0, 0}, 2}));
    CHECK(cubes_touch(DyadicCube{1, {0, 0, 0}, 2}, DyadicCube{1, {1, 1, 0}, 2}));  // corner
    CHECK_FALSE(cubes_touch(DyadicCube{1, {0, 0, 0}, 2}, DyadicCube{1, {2, 0, 0}, 2}));
    // different levels: [0,1/2]^2 touches [1/2,1]x[0,1/2]
    CHECK(cubes_touch(DyadicCube{1, {0, 0, 0}, 2}, DyadicCube{2, {2, 0, 0}, 2}));
}

TEST_CASE("all builtin generators decompose cleanly at level 8") {
    for (const char* name : {"halfplane", "disk", "cusp_touching_halfplane",
                             "exp_whitney_cusp", "interval_with_endpoint_D"}) {
        const RegionSpec r = builtin_geometry(name, 8);
        const WhitneyDecomposition w = whitney_decompose(r.cloud_N, r.bbox, 8);
        const WhitneyReport rep = verify_whitney(w);
        CAPTURE(name);
        CHECK(rep.disjoint);
        CHECK(rep.ratio_min >= 1.0);
        CHECK(rep.ratio_max <= 4.0);
        CHECK(rep.collar_ok);
        CHECK(rep.cover_defect_volume <= w.bbox.volume() * std::ldexp(1.0, -6));
    }
}
