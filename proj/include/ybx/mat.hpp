#pragma once
// Dense square matrices over an arbitrary scalar ring, with Kronecker products
// and the tensor-leg embeddings used throughout.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ybx/grat.hpp"

namespace ybx {

// Per-scalar zero/one; specialized for each backend value type.
template <class S>
struct ScalarOps {
    static S zero() { return S{}; }
    static S one() { return S{1}; }
};

template <>
struct ScalarOps<C64> {
    static C64 zero() { return C64(0.0, 0.0); }
    static C64 one() { return C64(1.0, 0.0); }
};

template <class S>
struct Mat {
    int n = 0;
    std::vector<S> a;

    Mat() = default;
    explicit Mat(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, ScalarOps<S>::zero()) {}

    S& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const S& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    static Mat id(int dim) {
        Mat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = ScalarOps<S>::one();
        return m;
    }

    Mat operator+(const Mat& o) const {
        Mat r(n);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
        return r;
    }
    Mat operator-(const Mat& o) const {
        Mat r(n);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
        return r;
    }
    Mat operator*(const Mat& o) const {
        if (n != o.n) throw std::invalid_argument("Mat: dimension mismatch");
        Mat r(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const S& aik = (*this)(i, k);
                for (int j = 0; j < n; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }
    Mat scaled(const S& c) const {
        Mat r(n);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] * c;
        return r;
    }
    Mat transpose() const {
        Mat r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
};

template <class S>
Mat<S> kron(const Mat<S>& x, const Mat<S>& y) {
    Mat<S> r(x.n * y.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j)
            for (int k = 0; k < y.n; ++k)
                for (int l = 0; l < y.n; ++l)
                    r(i * y.n + k, j * y.n + l) = x(i, j) * y(k, l);
    return r;
}

// 4x4 permutation operator swapping the two C^2 factors.
template <class S>
Mat<S> permP() {
    Mat<S> p(4);
    const S one = ScalarOps<S>::one();
    p(0, 0) = one; p(1, 2) = one; p(2, 1) = one; p(3, 3) = one;
    return p;
}

// Embed a two-site operator into three sites at the given leg pair.
template <class S>
Mat<S> embed(const Mat<S>& x, std::pair<int, int> slot) {
    if (x.n != 4) throw std::invalid_argument("embed: expected a 4x4 operator");
    Mat<S> i2 = Mat<S>::id(2);
    if (slot == std::make_pair(1, 2)) return kron(x, i2);
    if (slot == std::make_pair(2, 3)) return kron(i2, x);
    if (slot == std::make_pair(1, 3)) {
        Mat<S> p23 = kron(i2, permP<S>());
        return p23 * kron(x, i2) * p23;
    }
    throw std::invalid_argument("embed: unsupported slot");
}

// Embed a two-site operator at arbitrary site positions (0-based) of an
// nsites-long chain of C^2 factors; site 0 is the leftmost tensor factor.
template <class S>
Mat<S> embed_pair(const Mat<S>& x, int pa, int pb, int nsites) {
    if (x.n != 4 || pa == pb || pa < 0 || pb < 0 || pa >= nsites || pb >= nsites)
        throw std::invalid_argument("embed_pair: bad arguments");
    int dim = 1 << nsites;
    int sa = nsites - 1 - pa, sb = nsites - 1 - pb;  // bit shifts
    Mat<S> r(dim);
    for (int col = 0; col < dim; ++col) {
        int a1 = (col >> sa) & 1, b1 = (col >> sb) & 1;
        int base = col & ~((1 << sa) | (1 << sb));
        for (int a2 = 0; a2 < 2; ++a2)
            for (int b2 = 0; b2 < 2; ++b2) {
                const S& val = x(a2 * 2 + b2, a1 * 2 + b1);
                int row = base | (a2 << sa) | (b2 << sb);
                r(row, col) += val;
            }
    }
    return r;
}

inline double fnorm(const Mat<C64>& m) {
    double s = 0;
    for (const auto& z : m.a) s += std::norm(z);
    return std::sqrt(s);
}

inline double rel_residual(const Mat<C64>& lhs, const Mat<C64>& rhs) {
    double nl = fnorm(lhs), nr = fnorm(rhs);
    return fnorm(lhs - rhs) / std::max({1.0, nl, nr});
}

}  // namespace ybx
