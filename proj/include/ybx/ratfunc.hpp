#pragma once
// Formal backend: bivariate Laurent polynomials and rational functions over
// Gaussian rationals in x1 = e^{u-v} and x2 = e^{v-w}. Fractions are kept
// unreduced; equality is decided by cross-multiplication.

#include <map>
#include <stdexcept>
#include <utility>

#include "ybx/grat.hpp"
#include "ybx/mat.hpp"

namespace ybx {

struct Poly2 {
    // (exponent of x1, exponent of x2) -> coefficient; exponents may be negative
    std::map<std::pair<int, int>, GRat> t;

    static Poly2 con(const GRat& c) {
        Poly2 p;
        if (!c.is_zero()) p.t[{0, 0}] = c;
        return p;
    }
    static Poly2 mono(int e1, int e2, const GRat& c = GRat(1)) {
        Poly2 p;
        if (!c.is_zero()) p.t[{e1, e2}] = c;
        return p;
    }

    bool is_zero() const { return t.empty(); }
    bool is_constant() const {
        return t.empty() || (t.size() == 1 && t.begin()->first == std::make_pair(0, 0));
    }

    Poly2 operator+(const Poly2& o) const {
        Poly2 r = *this;
        for (const auto& [k, c] : o.t) {
            auto it = r.t.find(k);
            if (it == r.t.end()) r.t[k] = c;
            else {
                it->second += c;
                if (it->second.is_zero()) r.t.erase(it);
            }
        }
        return r;
    }
    Poly2 operator-() const {
        Poly2 r;
        for (const auto& [k, c] : t) r.t[k] = -c;
        return r;
    }
    Poly2 operator-(const Poly2& o) const { return *this + (-o); }
    Poly2 operator*(const Poly2& o) const {
        Poly2 r;
        for (const auto& [k1, c1] : t)
            for (const auto& [k2, c2] : o.t) {
                auto key = std::make_pair(k1.first + k2.first, k1.second + k2.second);
                auto it = r.t.find(key);
                GRat add = c1 * c2;
                if (it == r.t.end()) { if (!add.is_zero()) r.t[key] = add; }
                else {
                    it->second += add;
                    if (it->second.is_zero()) r.t.erase(it);
                }
            }
        return r;
    }
    bool operator==(const Poly2& o) const { return t == o.t; }
};

struct RatFunc {
    Poly2 num, den;

    RatFunc() : den(Poly2::con(GRat(1))) {}
    RatFunc(Poly2 n, Poly2 d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    }
    static RatFunc con(const GRat& c) { return RatFunc(Poly2::con(c), Poly2::con(GRat(1))); }
    static RatFunc mono(int e1, int e2) { return RatFunc(Poly2::mono(e1, e2), Poly2::con(GRat(1))); }

    bool is_zero() const { return num.is_zero(); }

    RatFunc operator+(const RatFunc& o) const {
        if (den == o.den) return RatFunc(num + o.num, den);
        return RatFunc(num * o.den + o.num * den, den * o.den);
    }
    RatFunc operator-() const { return RatFunc(-num, den); }
    RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
    RatFunc operator*(const RatFunc& o) const { return RatFunc(num * o.num, den * o.den); }
    RatFunc operator/(const RatFunc& o) const {
        if (o.num.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return RatFunc(num * o.den, den * o.num);
    }
    RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
    RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }

    // cross-multiplied equality
    bool operator==(const RatFunc& o) const { return num * o.den == o.num * den; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }
};

template <>
struct ScalarOps<RatFunc> {
    static RatFunc zero() { return RatFunc(); }
    static RatFunc one() { return RatFunc::con(GRat(1)); }
};

}  // namespace ybx
