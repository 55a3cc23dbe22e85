#include "ybx/verifier.hpp"

#include <Eigen/Dense>

namespace ybx {

nlohmann::ordered_json ResidualReport::to_json() const {
    nlohmann::ordered_json j;
    j["relation"] = relation;
    j["samples"] = residuals.size();
    j["residuals"] = residuals;
    j["max"] = max_residual;
    j["tol"] = tol;
    j["seed"] = seed;
    j["verdict"] = pass ? "pass" : "fail";
    return j;
}

Eigen::MatrixXcd to_eigen(const Mat<C64>& m) {
    Eigen::MatrixXcd e(m.n, m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) e(i, j) = m(i, j);
    return e;
}

Mat<C64> from_eigen(const Eigen::MatrixXcd& e) {
    Mat<C64> m(static_cast<int>(e.rows()));
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) m(i, j) = e(i, j);
    return m;
}

ScalarFit fit_scalar_multiple(const Mat<C64>& a, const Mat<C64>& target) {
    int pi = 0, pj = 0;
    double best = -1.0;
    for (int i = 0; i < target.n; ++i)
        for (int j = 0; j < target.n; ++j)
            if (std::abs(target(i, j)) > best) { best = std::abs(target(i, j)); pi = i; pj = j; }
    ScalarFit fit;
    if (best == 0.0) {  // target is the zero matrix; only a == 0 fits
        fit.c = C64(0.0);
        fit.deviation = fnorm(a) / std::max(1.0, fnorm(a));
        return fit;
    }
    fit.c = a(pi, pj) / target(pi, pj);
    Mat<C64> scaled = target.scaled(fit.c);
    fit.deviation = rel_residual(a, scaled);
    return fit;
}

double ybe_residual(const REval& r, C64 u, C64 v, C64 w) {
    Mat<C64> r12 = embed(r(u, v), {1, 2});
    Mat<C64> r13 = embed(r(u, w), {1, 3});
    Mat<C64> r23 = embed(r(v, w), {2, 3});
    return rel_residual(r12 * r13 * r23, r23 * r13 * r12);
}

double constant_ybe_residual(const Mat<C64>& r) {
    Mat<C64> r12 = embed(r, {1, 2});
    Mat<C64> r13 = embed(r, {1, 3});
    Mat<C64> r23 = embed(r, {2, 3});
    return rel_residual(r12 * r13 * r23, r23 * r13 * r12);
}

bool constant_ybe_exact(const Mat<GRat>& r) {
    Mat<GRat> r12 = embed(r, {1, 2});
    Mat<GRat> r13 = embed(r, {1, 3});
    Mat<GRat> r23 = embed(r, {2, 3});
    Mat<GRat> lhs = r12 * r13 * r23, rhs = r23 * r13 * r12;
    for (size_t i = 0; i < lhs.a.size(); ++i)
        if (!(lhs.a[i] - rhs.a[i]).is_zero()) return false;
    return true;
}

bool ybe_formal_identity(const Record& rec, const std::map<std::string, GRat>& params) {
    auto build = [&](int e1, int e2) {
        FormalCtx ctx = FormalCtx::for_pairing(e1, e2);
        for (const auto& [k, val] : params) ctx.params[k] = FormalV::con(val);
        return instantiate(rec, ctx);
    };
    // pairing (u,v) -> x1; (u,w) -> x1*x2; (v,w) -> x2
    Mat<FormalV> r12 = embed(build(1, 0), {1, 2});
    Mat<FormalV> r13 = embed(build(1, 1), {1, 3});
    Mat<FormalV> r23 = embed(build(0, 1), {2, 3});
    Mat<FormalV> lhs = r12 * r13 * r23, rhs = r23 * r13 * r12;
    for (size_t i = 0; i < lhs.a.size(); ++i) {
        if (!lhs.a[i].has_val || !rhs.a[i].has_val)
            throw EvalError("formal backend: non-evaluable entry in product");
        if (lhs.a[i].val != rhs.a[i].val) return false;
    }
    return true;
}

ScalarFit braiding_check(const REval& r, C64 u, C64 v) {
    Mat<C64> p = permP<C64>();
    Mat<C64> m = p * r(v, u) * p * r(u, v);
    return fit_scalar_multiple(m, Mat<C64>::id(4));
}

ScalarFit regularity_check(const REval& r, C64 u) {
    return fit_scalar_multiple(r(u, u), permP<C64>());
}

double fcr_residual(const Mat<C64>& rcand, const LEval& lax, C64 u, C64 v) {
    Mat<C64> r12 = embed(rcand, {1, 2});
    Mat<C64> a = embed(lax(u), {1, 3}) * embed(lax(v), {2, 3});
    Mat<C64> b = embed(lax(v), {2, 3}) * embed(lax(u), {1, 3});
    return rel_residual(r12 * a, b * r12);
}

Mat<C64> hexagon_operator(const REval& r, C64 u, C64 v, C64 w) {
    Mat<C64> p = permP<C64>();
    auto swapped = [&](C64 x, C64 y) { return p * r(x, y) * p; };
    Mat<C64> r32 = embed(swapped(w, v), {2, 3});
    Mat<C64> r31 = embed(swapped(w, u), {1, 3});
    Mat<C64> r21 = embed(swapped(v, u), {1, 2});
    Mat<C64> r23 = embed(r(v, w), {2, 3});
    Mat<C64> r13 = embed(r(u, w), {1, 3});
    Mat<C64> r12 = embed(r(u, v), {1, 2});
    return r32 * r31 * r21 * r23 * r13 * r12;
}

ModifiedYbe modified_ybe_factor(const REval& r, C64 u, C64 v, C64 w) {
    Mat<C64> r12 = embed(r(u, v), {1, 2});
    Mat<C64> r13 = embed(r(u, w), {1, 3});
    Mat<C64> r23 = embed(r(v, w), {2, 3});
    Mat<C64> lhs = r12 * r13 * r23, rhs = r23 * r13 * r12;
    ModifiedYbe out;
    Eigen::MatrixXcd erhs = to_eigen(rhs);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(erhs);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (smax <= 0.0 || smin / smax < 1e-12) {
        out.multiplicative = false;
        out.m = lhs - rhs;
    } else {
        out.multiplicative = true;
        out.m = from_eigen(to_eigen(lhs) * erhs.inverse());
        ScalarFit fit = fit_scalar_multiple(out.m, Mat<C64>::id(8));
        if (fit.deviation <= 1e-9) {
            out.scalar_like = true;
            out.scalar = fit.c;
            out.scalar_deviation = fit.deviation;
        } else {
            out.scalar_deviation = fit.deviation;
        }
    }
    return out;
}

REval similarity_transform(const REval& r, const Mat<C64>& q2) {
    C64 det = q2(0, 0) * q2(1, 1) - q2(0, 1) * q2(1, 0);
    if (std::abs(det) < 1e-14) throw std::invalid_argument("similarity_transform: singular Q");
    Mat<C64> qinv(2);
    qinv(0, 0) = q2(1, 1) / det;
    qinv(0, 1) = -q2(0, 1) / det;
    qinv(1, 0) = -q2(1, 0) / det;
    qinv(1, 1) = q2(0, 0) / det;
    Mat<C64> qq = kron(q2, q2), qqinv = kron(qinv, qinv);
    return [r, qq, qqinv](C64 u, C64 v) { return qq * r(u, v) * qqinv; };
}

double cocycle_residual(const ExprPtr& f, C64 u, C64 v, C64 w) {
    auto at = [&](C64 a, C64 b) {
        F64Ctx ctx;
        ctx.u = a;
        ctx.v = b;
        return eval_expr(f, ctx);
    };
    C64 lhs = at(u, w), rhs = at(u, v) * at(v, w);
    return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

C64 draw_spectral_point(Draw& d) { return d.annulus(); }

void draw_spectral_pair(Draw& d, C64& u, C64& v) {
    for (int i = 0; i < 1000; ++i) {
        u = d.annulus();
        v = d.annulus();
        if (std::abs(u - v) >= 0.05) return;
    }
    throw std::runtime_error("sampling: rejection bound exceeded drawing (u,v)");
}

void draw_spectral_triple(Draw& d, C64& u, C64& v, C64& w) {
    for (int i = 0; i < 1000; ++i) {
        u = d.annulus();
        v = d.annulus();
        w = d.annulus();
        if (std::abs(u - v) >= 0.05 && std::abs(u - w) >= 0.05 && std::abs(v - w) >= 0.05) return;
    }
    throw std::runtime_error("sampling: rejection bound exceeded drawing (u,v,w)");
}

}  // namespace ybx
