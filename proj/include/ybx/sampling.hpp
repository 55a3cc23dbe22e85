#pragma once
// Counter-mode deterministic draws: every random quantity is a pure function
// of (seed, counter), so evaluation order never changes results.

#include <cstdint>

#include "ybx/grat.hpp"

namespace ybx {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Draw {
    uint64_t seed;
    uint64_t ctr = 0;

    explicit Draw(uint64_t s) : seed(s) {}

    uint64_t next_u64() { return splitmix64(seed * 0x2545f4914f6cdd1dULL + (++ctr)); }

    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // complex draw with modulus in [0.5, 1.5]
    C64 annulus() {
        double r = 0.5 + u01();
        double th = 2.0 * 3.14159265358979323846 * u01();
        return C64(r * std::cos(th), r * std::sin(th));
    }

    // small nonzero exact rational
    GRat rat() {
        long n = static_cast<long>(next_u64() % 17) - 8;  // -8..8
        if (n == 0) n = 5;
        long d = static_cast<long>(next_u64() % 7) + 1;   // 1..7
        return GRat(n, d);
    }

    int pick(int n) { return static_cast<int>(next_u64() % static_cast<uint64_t>(n)); }
};

}  // namespace ybx
