#pragma once

#include <cstdint>

#include "fracext/geom.hpp"

namespace fracext {

// Counter-seeded splitmix64 stream. Every Monte-Carlo sample owns a stream
// keyed by (global seed, structural indices), so results do not depend on
// thread scheduling or evaluation order.
struct Rng {
    std::uint64_t state = 0;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [a,b)
    double uniform(double a, double b) { return a + (b - a) * unit(); }

    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

inline std::uint64_t seed_mix(std::uint64_t a, std::uint64_t b) {
    a ^= b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2);
    // one splitmix round to decorrelate consecutive keys
    a = (a ^ (a >> 30)) * 0xbf58476d1ce4e5b9ULL;
    a = (a ^ (a >> 27)) * 0x94d049bb133111ebULL;
    return a ^ (a >> 31);
}

inline Rng seed_stream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0,
                       std::uint64_t c = 0) {
    return Rng(seed_mix(seed_mix(seed_mix(seed, a), b), c));
}

// uniform point in the open ball B(center, r), by rejection from the cube
inline Pt sample_in_ball(Rng& g, int dim, const Pt& center, double r) {
    for (;;) {
        Pt v{0, 0, 0};
        double n2 = 0.0;
        for (int i = 0; i < dim; ++i) {
            v[i] = g.uniform(-r, r);
            n2 += v[i] * v[i];
        }
        if (n2 < r * r) {
            Pt x = center;
            for (int i = 0; i < dim; ++i) x[i] += v[i];
            return x;
        }
    }
}

inline Pt sample_in_box(Rng& g, const Box& b) {
    Pt x{0, 0, 0};
    for (int i = 0; i < b.dim; ++i) x[i] = g.uniform(b.lo[i], b.hi[i]);
    return x;
}

}  // namespace fracext
