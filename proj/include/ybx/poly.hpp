#pragma once
// Sparse multivariate polynomials over Gaussian rationals. Monomials are
// sorted lists of variable ids (repetition encodes powers); the order-by-order
// solver only ever produces total degree <= 2 in the residual unknowns.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "ybx/grat.hpp"
#include "ybx/mat.hpp"

namespace ybx {

struct Poly {
    std::map<std::vector<int>, GRat> t;

    static Poly con(const GRat& c) {
        Poly p;
        if (!c.is_zero()) p.t[{}] = c;
        return p;
    }
    static Poly var(int id, const GRat& c = GRat(1)) {
        Poly p;
        if (!c.is_zero()) p.t[{id}] = c;
        return p;
    }

    bool is_zero() const { return t.empty(); }
    bool is_constant() const { return t.empty() || (t.size() == 1 && t.begin()->first.empty()); }
    GRat cterm() const {
        auto it = t.find({});
        return it == t.end() ? GRat(0) : it->second;
    }
    int degree() const {
        size_t d = 0;
        for (const auto& [m, c] : t) d = std::max(d, m.size());
        return static_cast<int>(d);
    }
    std::set<int> support() const {
        std::set<int> s;
        for (const auto& [m, c] : t) s.insert(m.begin(), m.end());
        return s;
    }

    void add_term(const std::vector<int>& m, const GRat& c) {
        if (c.is_zero()) return;
        auto it = t.find(m);
        if (it == t.end()) t[m] = c;
        else {
            it->second += c;
            if (it->second.is_zero()) t.erase(it);
        }
    }

    Poly operator+(const Poly& o) const {
        Poly r = *this;
        for (const auto& [m, c] : o.t) r.add_term(m, c);
        return r;
    }
    Poly operator-() const {
        Poly r;
        for (const auto& [m, c] : t) r.t[m] = -c;
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        Poly r;
        for (const auto& [m1, c1] : t)
            for (const auto& [m2, c2] : o.t) {
                std::vector<int> m = m1;
                m.insert(m.end(), m2.begin(), m2.end());
                std::sort(m.begin(), m.end());
                r.add_term(m, c1 * c2);
            }
        return r;
    }
    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly scaled(const GRat& c) const {
        Poly r;
        if (c.is_zero()) return r;
        for (const auto& [m, co] : t) r.t[m] = co * c;
        return r;
    }
    bool operator==(const Poly& o) const { return t == o.t; }

    // Substitute the given variables by polynomials.
    Poly subst_poly(const std::map<int, Poly>& a) const {
        Poly r;
        for (const auto& [m, c] : t) {
            Poly term = Poly::con(c);
            std::vector<int> rest;
            for (int id : m) {
                auto it = a.find(id);
                if (it == a.end()) rest.push_back(id);
                else term = term * it->second;
            }
            Poly mono_rest;
            mono_rest.t[rest] = GRat(1);
            r += term * mono_rest;
        }
        return r;
    }

    // Substitute the given variables by constants.
    Poly subst(const std::map<int, GRat>& a) const {
        Poly r;
        for (const auto& [m, c] : t) {
            GRat coef = c;
            std::vector<int> rest;
            for (int id : m) {
                auto it = a.find(id);
                if (it == a.end()) rest.push_back(id);
                else coef *= it->second;
            }
            r.add_term(rest, coef);
        }
        return r;
    }
};

template <>
struct ScalarOps<Poly> {
    static Poly zero() { return Poly(); }
    static Poly one() { return Poly::con(GRat(1)); }
};

}  // namespace ybx
