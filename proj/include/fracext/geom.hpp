#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fracext {

// Points carry up to 3 coordinates; the active dimension travels with the
// object that owns the point (region, grid, cloud). Unused entries stay 0.
using Pt = std::array<double, 3>;

inline Pt pt(double x, double y = 0.0, double z = 0.0) { return Pt{x, y, z}; }

inline double dist2(const Pt& a, const Pt& b, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double dist(const Pt& a, const Pt& b, int dim) { return std::sqrt(dist2(a, b, dim)); }

inline double norm2(const Pt& a, int dim) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += a[i] * a[i];
    return s;
}

struct Box {
    Pt lo{0, 0, 0};
    Pt hi{0, 0, 0};
    int dim = 2;

    double side(int i) const { return hi[i] - lo[i]; }

    double volume() const {
        double v = 1.0;
        for (int i = 0; i < dim; ++i) v *= side(i);
        return v;
    }

    double diam() const {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) s += side(i) * side(i);
        return std::sqrt(s);
    }

    bool contains(const Pt& x) const {
        for (int i = 0; i < dim; ++i)
            if (x[i] < lo[i] || x[i] > hi[i]) return false;
        return true;
    }

    // Euclidean distance from x to the (closed) box; 0 if inside.
    double dist_to(const Pt& x) const {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double d = std::max({lo[i] - x[i], x[i] - hi[i], 0.0});
            s += d * d;
        }
        return std::sqrt(s);
    }

    bool operator==(const Box& o) const = default;
};

// Open dyadic cube: corner idx*2^-level, side 2^-level. Negative levels give
// sides > 1. Two dyadic cubes are disjoint or nested, which keeps all
// disjointness/adjacency decisions in integer arithmetic.
struct DyadicCube {
    int level = 0;
    std::array<std::int64_t, 3> idx{0, 0, 0};
    int dim = 2;

    double side() const { return std::ldexp(1.0, -level); }
    double diam() const { return side() * std::sqrt(static_cast<double>(dim)); }
    double volume() const {
        double v = 1.0;
        for (int i = 0; i < dim; ++i) v *= side();
        return v;
    }

    Pt lo() const {
        Pt p{0, 0, 0};
        for (int i = 0; i < dim; ++i) p[i] = std::ldexp(static_cast<double>(idx[i]), -level);
        return p;
    }
    Pt hi() const {
        Pt p{0, 0, 0};
        for (int i = 0; i < dim; ++i) p[i] = std::ldexp(static_cast<double>(idx[i] + 1), -level);
        return p;
    }
    Pt center() const {
        Pt p{0, 0, 0};
        for (int i = 0; i < dim; ++i) p[i] = std::ldexp(static_cast<double>(idx[i]) + 0.5, -level);
        return p;
    }
    Box box() const { return Box{lo(), hi(), dim}; }

    bool contains_open(const Pt& x) const {
        const Pt l = lo(), h = hi();
        for (int i = 0; i < dim; ++i)
            if (!(x[i] > l[i] && x[i] < h[i])) return false;
        return true;
    }

    DyadicCube parent() const {
        DyadicCube p{level - 1, {0, 0, 0}, dim};
        for (int i = 0; i < dim; ++i) p.idx[i] = idx[i] >> 1;  // floor division
        return p;
    }

    DyadicCube child(int corner) const {
        DyadicCube c{level + 1, {0, 0, 0}, dim};
        for (int i = 0; i < dim; ++i) c.idx[i] = 2 * idx[i] + ((corner >> i) & 1);
        return c;
    }

    bool operator==(const DyadicCube& o) const {
        if (level != o.level || dim != o.dim) return false;
        for (int i = 0; i < dim; ++i)
            if (idx[i] != o.idx[i]) return false;
        return true;
    }

    // canonical order: level-major, then lexicographic index
    bool operator<(const DyadicCube& o) const {
        if (level != o.level) return level < o.level;
        for (int i = 0; i < dim; ++i)
            if (idx[i] != o.idx[i]) return idx[i] < o.idx[i];
        return false;
    }

    std::string str() const {
        std::string s = "cube(level=" + std::to_string(level);
        for (int i = 0; i < dim; ++i) s += "," + std::to_string(idx[i]);
        return s + ")";
    }
};

struct FractionalParams {
    double s = 0.5;
    double p = 2.0;
    int d = 2;

    void validate() const {
        if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("FractionalParams: need 0 < s < 1");
        if (!(p > 0.0) || !std::isfinite(p))
            throw std::invalid_argument("FractionalParams: need 0 < p < inf");
        if (d < 1 || d > 3) throw std::invalid_argument("FractionalParams: need d in {1,2,3}");
    }
    double sp() const { return s * p; }
};

enum class Label { inside_O, in_D, in_N, outside };

inline const char* to_string(Label l) {
    switch (l) {
        case Label::inside_O: return "inside_O";
        case Label::in_D: return "in_D";
        case Label::in_N: return "in_N";
        case Label::outside: return "outside";
    }
    return "?";
}

// volume of the d-ball of radius r
inline double ball_volume(int d, double r) {
    switch (d) {
        case 1: return 2.0 * r;
        case 2: return M_PI * r * r;
        case 3: return 4.0 / 3.0 * M_PI * r * r * r;
    }
    throw std::invalid_argument("ball_volume: d out of range");
}

// surface measure of the unit (d-1)-sphere; sigma_0 = 2 (two points)
inline double sphere_area(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * M_PI;
        case 3: return 4.0 * M_PI;
    }
    throw std::invalid_argument("sphere_area: d out of range");
}

}  // namespace fracext
