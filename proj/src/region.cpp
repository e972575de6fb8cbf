#include "fracext/region.hpp"

#include <algorithm>
#include <cmath>

namespace fracext {

DomainView view_of(const RegionSpec& r) {
    return DomainView{r.name, r.dim, r.level, r.bbox, r.inside};
}

std::vector<Pt> sample_segment(const Pt& a, const Pt& b, double spacing, int dim) {
    const double len = dist(a, b, dim);
    const int n = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    std::vector<Pt> out;
    out.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        Pt p{0, 0, 0};
        for (int k = 0; k < dim; ++k) p[k] = a[k] + t * (b[k] - a[k]);
        out.push_back(p);
    }
    return out;
}

namespace {

void append(std::vector<Pt>& dst, const std::vector<Pt>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
}

// ---------------------------------------------------------------- halfplane

RegionSpec make_halfplane(int level) {
    RegionSpec r;
    r.name = "halfplane";
    r.dim = 2;
    r.level = level;
    r.bbox = Box{pt(-4, -4), pt(4, 4), 2};
    const double tol = r.tol();
    r.inside = [](const Pt& x) { return x[0] > 0.0; };
    r.classify_total = [tol](const Pt& x) {
        if (std::abs(x[0]) <= tol) return Label::in_N;
        return x[0] > 0.0 ? Label::inside_O : Label::outside;
    };
    const double h = std::ldexp(1.0, -level);
    r.cloud_N = PointCloudSet(2, level, "halfplane:N:L" + std::to_string(level),
                              sample_segment(pt(0, -4), pt(0, 4), h, 2));
    r.cloud_D = PointCloudSet(2, level, "halfplane:D:L" + std::to_string(level), {});
    r.cloud_D_fine = r.cloud_D;
    r.cloud_boundary = r.cloud_N;
    // centers stay 1 away from the bbox edge so radius-1 balls remain clean
    r.cloud_itc_N = PointCloudSet(2, level, "halfplane:Nitc:L" + std::to_string(level),
                                  sample_segment(pt(0, -1), pt(0, 1), h, 2));
    return r;
}

// --------------------------------------------------------------------- disk

RegionSpec make_disk(int level, double radius) {
    if (!(radius > 0.0 && radius <= 2.0))
        throw std::invalid_argument("disk: radius must be in (0,2]");
    RegionSpec r;
    r.name = "disk";
    r.dim = 2;
    r.level = level;
    r.bbox = Box{pt(-4, -4), pt(4, 4), 2};
    const double tol = r.tol();
    const double R = radius;
    r.inside = [R](const Pt& x) { return x[0] * x[0] + x[1] * x[1] < R * R; };
    r.classify_total = [R, tol](const Pt& x) {
        const double rr = std::sqrt(x[0] * x[0] + x[1] * x[1]);
        if (std::abs(rr - R) <= tol) return Label::in_N;
        return rr < R ? Label::inside_O : Label::outside;
    };
    const double h = std::ldexp(1.0, -level);
    std::vector<Pt> circle;
    const int n = std::max(8, static_cast<int>(std::ceil(2.0 * M_PI * R / h)));
    circle.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * M_PI * i / n;
        circle.push_back(pt(R * std::cos(a), R * std::sin(a)));
    }
    r.cloud_N = PointCloudSet(2, level, "disk:N:L" + std::to_string(level), circle);
    r.cloud_D = PointCloudSet(2, level, "disk:D:L" + std::to_string(level), {});
    r.cloud_D_fine = r.cloud_D;
    r.cloud_boundary = r.cloud_N;
    r.cloud_itc_N = r.cloud_N;
    return r;
}

// ------------------------------------------------- cusp touching halfplane
//
// O = {|y| < x^2, -1 < x < 0} union {0 < x < 1, |y| < 1.5}. The outer window
// walls close the set off; they belong to D together with the parabola arcs,
// so N is exactly the y-axis piece touched by the cusp tip.

constexpr double kCuspDepth = 1.0;       // cusp spans x in (-kCuspDepth, 0)
constexpr double kSlabWidth = 1.0;       // halfplane part spans x in (0, kSlabWidth)
constexpr double kSlabHalfHeight = 1.5;  // |y| < kSlabHalfHeight

RegionSpec make_cusp(int level) {
    RegionSpec r;
    r.name = "cusp_touching_halfplane";
    r.dim = 2;
    r.level = level;
    r.bbox = Box{pt(-4, -4), pt(4, 4), 2};
    const double tol = r.tol();
    const double a = kCuspDepth, b = kSlabWidth, H = kSlabHalfHeight;
    auto cusp_inside = [a, b, H](const Pt& q) {
        const double x = q[0], y = std::abs(q[1]);
        if (x > 0.0 && x < b && y < H) return true;
        return x > -a && x < 0.0 && y < x * x;
    };
    r.inside = cusp_inside;
    r.classify_total = [a, b, H, tol, cusp_inside](const Pt& q) {
        const double x = q[0], y = q[1], ay = std::abs(y);
        if (std::abs(x) <= tol && ay <= tol) return Label::in_D;  // cusp tip
        if (std::abs(x) <= tol && ay <= H + tol) return Label::in_N;
        if (x >= -a - tol && x <= tol && std::abs(ay - x * x) <= tol && ay <= a * a + tol)
            return Label::in_D;  // parabola arcs
        if (std::abs(x + a) <= tol && ay <= a * a + tol) return Label::in_D;  // cusp back wall
        if (std::abs(x - b) <= tol && ay <= H + tol) return Label::in_D;      // right wall
        if (x >= -tol && x <= b + tol && std::abs(ay - H) <= tol) return Label::in_D;  // lid
        return cusp_inside(q) ? Label::inside_O : Label::outside;
    };

    const double h = std::ldexp(1.0, -level);
    r.cloud_N = PointCloudSet(2, level, "cusp:N:L" + std::to_string(level),
                              sample_segment(pt(0, -H), pt(0, H), h, 2));
    {
        std::vector<Pt> core;
        for (double y = h; y <= 0.5; y += h) {
            core.push_back(pt(0, y));
            core.push_back(pt(0, -y));
        }
        r.cloud_itc_N =
            PointCloudSet(2, level, "cusp:Nitc:L" + std::to_string(level), std::move(core));
    }
    auto make_d_cloud = [a, b, H](int lev) {
        const double hh = std::ldexp(1.0, -lev);
        std::vector<Pt> d;
        for (double x = -a; x <= 0.0; x += hh / 2) {
            d.push_back(pt(x, x * x));
            d.push_back(pt(x, -x * x));
        }
        d.push_back(pt(0, 0));
        append(d, sample_segment(pt(-a, -a * a), pt(-a, a * a), hh, 2));
        append(d, sample_segment(pt(b, -H), pt(b, H), hh, 2));
        append(d, sample_segment(pt(0, H), pt(b, H), hh, 2));
        append(d, sample_segment(pt(0, -H), pt(b, -H), hh, 2));
        return d;
    };
    r.cloud_D = PointCloudSet(2, level, "cusp:D:L" + std::to_string(level), make_d_cloud(level));
    const int fine = std::min(level + 4, 14);
    r.cloud_D_fine =
        PointCloudSet(2, fine, "cusp:D:L" + std::to_string(fine), make_d_cloud(fine));
    std::vector<Pt> bd = r.cloud_N.points();
    append(bd, r.cloud_D.points());
    r.cloud_boundary =
        PointCloudSet(2, level, "cusp:bd:L" + std::to_string(level), std::move(bd));
    r.accumulation_point = pt(0, 0);
    return r;
}

// ------------------------------------------------------------ exp cusp
//
// Union of the cells of the layered halfplane tiling (side 2^-k cells at
// heights [2^-k, 2^-k+1)) inside the slab [-8,-2] whose closure meets
// {y <= e^x}. N is the piece of the real line below; everything else of the
// boundary is D. The set pinches exponentially toward x = -8.

constexpr double kExpXL = -8.0;
constexpr double kExpXR = -2.0;
constexpr int kExpFullRow = 12;  // rows k >= 12 are fully kept inside the slab

bool exp_cell_kept_full(int k, std::int64_t i) {
    const std::int64_t imin = -(std::int64_t{8} << k);  // x >= -8
    const std::int64_t imax = -(std::int64_t{2} << k) - 1;  // x+side <= -2
    if (i < imin || i > imax) return false;
    if (k >= kExpFullRow) return true;
    const double xr = std::ldexp(static_cast<double>(i + 1), -k);
    return std::ldexp(1.0, -k) <= std::exp(xr);
}

bool exp_inside(double x, double y) {
    if (!(x > kExpXL && x < kExpXR)) return false;
    if (!(y > 0.0 && y < 0.25)) return false;
    const int e = std::ilogb(y);  // 2^e <= y < 2^{e+1}
    const int k = -e;
    if (k >= kExpFullRow + 1) return true;  // deep strip, rows fully kept
    const bool face_y = (y == std::ldexp(1.0, e));
    auto column_ok = [x](int kk) {
        const double t = std::ldexp(x, kk);
        const double ft = std::floor(t);
        const auto i = static_cast<std::int64_t>(ft);
        if (!exp_cell_kept_full(kk, i)) return false;
        if (t == ft && !exp_cell_kept_full(kk, i - 1)) return false;
        return true;
    };
    if (!column_ok(k)) return false;
    if (face_y && !column_ok(k + 1)) return false;
    return true;
}

RegionSpec make_exp_cusp(int level) {
    RegionSpec r;
    r.name = "exp_whitney_cusp";
    r.dim = 2;
    r.level = level;
    r.bbox = Box{pt(-16, -8), pt(0, 8), 2};
    const double tol = r.tol();
    r.inside = [](const Pt& q) { return exp_inside(q[0], q[1]); };
    r.classify_total = [tol](const Pt& q) {
        const double x = q[0], y = q[1];
        if (std::abs(y) <= tol && x >= kExpXL - tol && x <= kExpXR + tol) {
            if (std::abs(x - kExpXL) <= tol || std::abs(x - kExpXR) <= tol)
                return Label::in_D;  // wall feet
            return Label::in_N;
        }
        if (exp_inside(x, y)) return Label::inside_O;
        // a point within tol of the set but not in it sits on the staircase
        for (const double dx : {-tol, 0.0, tol})
            for (const double dy : {-tol, 0.0, tol})
                if (exp_inside(x + dx, y + dy)) return Label::in_D;
        return Label::outside;
    };

    const double h = std::ldexp(1.0, -level);
    r.cloud_N = PointCloudSet(2, level, "exp:N:L" + std::to_string(level),
                              sample_segment(pt(kExpXL, 0), pt(kExpXR, 0), h, 2));
    r.cloud_itc_N = PointCloudSet(2, level, "exp:Nitc:L" + std::to_string(level),
                                  sample_segment(pt(kExpXL + h, 0), pt(kExpXR - h, 0), h, 2));

    // exposed faces of the kept cells form D (staircase silhouette + walls)
    auto make_d_cloud = [](int lev) {
        const double hh = std::ldexp(1.0, -lev);
        std::vector<Pt> d;
        auto seg = [&](Pt p, Pt q) { append(d, sample_segment(p, q, hh, 2)); };
        for (int k = 3; k <= kExpFullRow; ++k) {
            const std::int64_t imin = -(std::int64_t{8} << k);
            const std::int64_t imax = -(std::int64_t{2} << k) - 1;
            for (std::int64_t i = imin; i <= imax; ++i) {
                if (!exp_cell_kept_full(k, i)) continue;
                const double xl = std::ldexp(static_cast<double>(i), -k);
                const double xr = std::ldexp(static_cast<double>(i + 1), -k);
                const double yb = std::ldexp(1.0, -k);
                const double yt = std::ldexp(1.0, -k + 1);
                if (!exp_cell_kept_full(k, i - 1)) seg(pt(xl, yb), pt(xl, yt));
                if (!exp_cell_kept_full(k, i + 1)) seg(pt(xr, yb), pt(xr, yt));
                if (!exp_cell_kept_full(k - 1, i >= 0 ? i / 2 : (i - 1) / 2))
                    seg(pt(xl, yt), pt(xr, yt));
            }
        }
        // wall pieces below the deepest enumerated row
        const double y0 = std::ldexp(1.0, -kExpFullRow);
        seg(pt(kExpXL, 0), pt(kExpXL, y0));
        seg(pt(kExpXR, 0), pt(kExpXR, y0));
        return d;
    };
    r.cloud_D = PointCloudSet(2, level, "exp:D:L" + std::to_string(level), make_d_cloud(level));
    const int fine = std::min(level + 4, 14);
    r.cloud_D_fine = PointCloudSet(2, fine, "exp:D:L" + std::to_string(fine), make_d_cloud(fine));
    std::vector<Pt> bd = r.cloud_N.points();
    append(bd, r.cloud_D.points());
    r.cloud_boundary = PointCloudSet(2, level, "exp:bd:L" + std::to_string(level), std::move(bd));
    r.accumulation_point = pt(kExpXL, 0);
    return r;
}

// ------------------------------------------------------------ interval

RegionSpec make_interval(int level) {
    RegionSpec r;
    r.name = "interval_with_endpoint_D";
    r.dim = 1;
    r.level = level;
    r.bbox = Box{pt(-4), pt(4), 1};
    const double tol = r.tol();
    r.inside = [](const Pt& x) { return x[0] > 0.0 && x[0] < 1.0; };
    r.classify_total = [tol](const Pt& x) {
        if (std::abs(x[0]) <= tol) return Label::in_D;
        if (std::abs(x[0] - 1.0) <= tol) return Label::in_N;
        return (x[0] > 0.0 && x[0] < 1.0) ? Label::inside_O : Label::outside;
    };
    r.cloud_N = PointCloudSet(1, level, "interval:N:L" + std::to_string(level), {pt(1)});
    r.cloud_D = PointCloudSet(1, level, "interval:D:L" + std::to_string(level), {pt(0)});
    r.cloud_D_fine = r.cloud_D;
    r.cloud_boundary =
        PointCloudSet(1, level, "interval:bd:L" + std::to_string(level), {pt(0), pt(1)});
    r.cloud_itc_N = r.cloud_N;
    return r;
}

}  // namespace

RegionSpec builtin_geometry(const std::string& name, int level,
                            const std::map<std::string, double>& params) {
    if (level < 3 || level > 16)
        throw std::invalid_argument("builtin_geometry: resolution level out of range [3,16]");
    auto param = [&](const std::string& key, double def) {
        auto it = params.find(key);
        return it == params.end() ? def : it->second;
    };
    for (const auto& [key, _] : params) {
        if (name == "disk" && key == "radius") continue;
        throw std::invalid_argument("builtin_geometry: unknown parameter '" + key + "' for " +
                                    name);
    }
    if (name == "halfplane") return make_halfplane(level);
    if (name == "disk") return make_disk(level, param("radius", 1.0));
    if (name == "cusp_touching_halfplane") return make_cusp(level);
    if (name == "exp_whitney_cusp") return make_exp_cusp(level);
    if (name == "interval_with_endpoint_D") return make_interval(level);
    throw std::invalid_argument("builtin_geometry: unknown geometry '" + name + "'");
}

}  // namespace fracext
