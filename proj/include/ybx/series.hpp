#pragma once
// Truncated single-variable Taylor series with complex coefficients.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ybx/grat.hpp"
#include "ybx/mat.hpp"

namespace ybx {

struct Ser {
    std::vector<C64> c;  // c[k] = coefficient of z^k

    Ser() : c(1, C64(0.0)) {}
    explicit Ser(std::vector<C64> cs) : c(std::move(cs)) {}

    static Ser con(C64 v, int order) {
        Ser s;
        s.c.assign(order + 1, C64(0.0));
        s.c[0] = v;
        return s;
    }
    static Ser var(C64 v0, int order) {  // v0 + z
        Ser s = con(v0, order);
        if (order >= 1) s.c[1] = C64(1.0);
        return s;
    }

    int order() const { return static_cast<int>(c.size()) - 1; }
    C64 at(int k) const { return k < static_cast<int>(c.size()) ? c[k] : C64(0.0); }

    Ser operator+(const Ser& o) const {
        Ser r;
        r.c.assign(std::max(c.size(), o.c.size()), C64(0.0));
        for (size_t k = 0; k < r.c.size(); ++k) r.c[k] = at(static_cast<int>(k)) + o.at(static_cast<int>(k));
        return r;
    }
    Ser operator-() const {
        Ser r = *this;
        for (auto& z : r.c) z = -z;
        return r;
    }
    Ser operator-(const Ser& o) const { return *this + (-o); }
    Ser operator*(const Ser& o) const {
        int n = static_cast<int>(std::max(c.size(), o.c.size()));
        Ser r;
        r.c.assign(n, C64(0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; i + j < n && j < n; ++j) r.c[i + j] += at(i) * o.at(j);
        return r;
    }
    Ser& operator+=(const Ser& o) { *this = *this + o; return *this; }
    Ser& operator*=(const Ser& o) { *this = *this * o; return *this; }

    Ser inv() const {
        if (std::abs(c[0]) == 0.0) throw std::domain_error("Ser: inverse needs a unit constant term");
        int n = static_cast<int>(c.size());
        Ser r;
        r.c.assign(n, C64(0.0));
        r.c[0] = C64(1.0) / c[0];
        for (int k = 1; k < n; ++k) {
            C64 s(0.0);
            for (int j = 1; j <= k; ++j) s += at(j) * r.c[k - j];
            r.c[k] = -s / c[0];
        }
        return r;
    }
    Ser operator/(const Ser& o) const { return *this * o.inv(); }
};

inline Ser ser_exp(const Ser& s) {
    int n = static_cast<int>(s.c.size());
    Ser nil = s;  // nilpotent part
    nil.c[0] = C64(0.0);
    Ser r = Ser::con(C64(1.0), n - 1), term = Ser::con(C64(1.0), n - 1);
    for (int k = 1; k < n; ++k) {
        term = term * nil;
        for (auto& z : term.c) z /= static_cast<double>(k);
        r = r + term;
    }
    C64 e0 = std::exp(s.c[0]);
    for (auto& z : r.c) z *= e0;
    return r;
}

inline Ser ser_log(const Ser& s) {
    if (std::abs(s.c[0]) == 0.0) throw std::domain_error("Ser: log needs a unit constant term");
    int n = static_cast<int>(s.c.size());
    Ser u = s;
    for (auto& z : u.c) z /= s.c[0];
    u.c[0] = C64(0.0);  // s/s0 = 1 + u
    Ser r = Ser::con(std::log(s.c[0]), n - 1), term = Ser::con(C64(1.0), n - 1);
    double sign = 1.0;
    for (int k = 1; k < n; ++k) {
        term = term * u;
        Ser t2 = term;
        for (auto& z : t2.c) z *= sign / static_cast<double>(k);
        r = r + t2;
        sign = -sign;
    }
    return r;
}

template <>
struct ScalarOps<Ser> {
    static Ser zero() { return Ser(); }
    static Ser one() { return Ser::con(C64(1.0), 0); }
};

}  // namespace ybx
