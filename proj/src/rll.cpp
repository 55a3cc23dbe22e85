#include "ybx/rll.hpp"

#include <Eigen/Dense>

namespace ybx {

LaxOperator lax_from_solution(const Record& rec, const Assignment& asg, double tol) {
    LaxOperator lax;
    lax.source = &rec;
    lax.asg = asg;
    REval r = make_eval(rec, asg);
    lax.eval = [r](C64 u) { return r(u, C64(0.0)); };
    ScalarFit fit = fit_scalar_multiple(lax.eval(C64(0.0)), permP<C64>());
    lax.reg_scalar = fit.c;
    lax.reg_deviation = fit.deviation;
    lax.regular = fit.deviation <= tol && std::abs(fit.c) > 1e-12;
    return lax;
}

FcrSpace solve_fcr_space(const LaxOperator& lax, C64 u, C64 v, double tau) {
    Mat<C64> a = embed(lax.eval(u), {1, 3}) * embed(lax.eval(v), {2, 3});
    Mat<C64> b = embed(lax.eval(v), {2, 3}) * embed(lax.eval(u), {1, 3});
    Eigen::MatrixXcd m(64, 16);
    for (int k = 0; k < 16; ++k) {
        Mat<C64> x(4);
        x.a[k] = C64(1.0);
        Mat<C64> x12 = embed(x, {1, 2});
        Mat<C64> e = x12 * a - b * x12;
        for (int i = 0; i < 64; ++i) m(i, k) = e.a[i];
    }
    SvdNullspace ns = svd_nullspace(m, tau);
    FcrSpace out;
    out.u = u;
    out.v = v;
    out.dim = ns.dim;
    out.zero_map = ns.zero_map;
    out.singular_values = ns.singular_values;
    for (int c = 0; c < ns.dim; ++c) {
        Mat<C64> x(4);
        for (int k = 0; k < 16; ++k) x.a[k] = ns.basis(k, c);
        out.basis.push_back(std::move(x));
    }
    return out;
}

double fcr_membership(const FcrSpace& space, const Mat<C64>& x) {
    double nx = fnorm(x);
    if (nx == 0.0) return 0.0;
    if (space.zero_map) return 0.0;
    // basis columns are orthonormal (SVD right singular vectors)
    Eigen::VectorXcd vx(16);
    for (int k = 0; k < 16; ++k) vx(k) = x.a[k];
    Eigen::VectorXcd proj = Eigen::VectorXcd::Zero(16);
    for (const Mat<C64>& bmat : space.basis) {
        Eigen::VectorXcd vb(16);
        for (int k = 0; k < 16; ++k) vb(k) = bmat.a[k];
        proj += vb * (vb.dot(vx));
    }
    return (vx - proj).norm() / nx;
}

void match_templates(const Catalog& cat, const LaxOperator& lax, FcrSpace& space, Draw& d) {
    if (!lax.source) return;
    for (const Record* t : cat.list("rll-tilde")) {
        if (t->source != lax.source->id) continue;
        Assignment tasg;
        // shared parameters come from the source assignment
        for (const std::string& p : t->params) {
            auto it = lax.asg.params_f64.find(p);
            tasg.params_f64[p] = it != lax.asg.params_f64.end() ? it->second : C64(1.0);
        }
        // function slots mapped to the source reuse its bindings; the rest are
        // fresh random smooth functions
        for (const std::string& f : t->free_fns) {
            auto mapped = t->source_fn_map.find(f);
            if (mapped != t->source_fn_map.end()) {
                auto it = lax.asg.fns.find(mapped->second);
                if (it != lax.asg.fns.end()) {
                    tasg.fns[f] = it->second;
                    continue;
                }
            }
            tasg.fns[f] = bind_smooth(d.next_u64(), static_cast<int>(tasg.fns.size()));
        }
        F64Ctx ctx;
        ctx.u = space.u;
        ctx.v = space.v;
        ctx.params = tasg.params_f64;
        ctx.fns = &tasg.fns;
        double res;
        try {
            Mat<C64> x = instantiate(*t, ctx);
            res = fcr_residual(x, lax.eval, space.u, space.v);
        } catch (const std::exception&) {
            continue;
        }
        space.template_matches.push_back({t->id, res});
    }
}

REval rhat(const REval& r) {
    return [r](C64 u, C64 v) {
        Mat<C64> p = permP<C64>();
        Eigen::MatrixXcd m = to_eigen(p * r(v, u) * p);
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
        if (!lu.isInvertible()) throw std::runtime_error("rhat: singular R(v,u)");
        return from_eigen(lu.inverse());
    };
}

namespace {

// Trace over the auxiliary space (position 0 of sites+1 factors) of the
// ordered product L_{a,sites} ... L_{a,1}.
template <class S>
Mat<S> transfer_product(const Mat<S>& l4, int sites) {
    if (sites < 2 || sites > 8) throw std::invalid_argument("transfer: 2 <= sites <= 8");
    int full = sites + 1;
    Mat<S> t = Mat<S>::id(1 << full);
    for (int site = sites; site >= 1; --site) t = t * embed_pair(l4, 0, site, full);
    int dim = 1 << sites;
    Mat<S> out(dim);
    for (int a = 0; a < 2; ++a)
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) out(i, j) += t(a * dim + i, a * dim + j);
    return out;
}

}  // namespace

Mat<C64> transfer_matrix(const LEval& lax, int sites, C64 u) {
    return transfer_product(lax(u), sites);
}

double comm_norm(const Mat<C64>& a, const Mat<C64>& b) {
    return fnorm(a * b - b * a) / (fnorm(a) * fnorm(b) + 1e-300);
}

ChargeSet charges(const Record& rec, const Assignment& asg, int sites, int orders) {
    ChargeSet cs;
    cs.sites = sites;
    cs.orders = orders;

    // series-valued L(u) around u=0
    SeriesCtx ctx;
    ctx.order = orders;
    ctx.u = Ser::var(C64(0.0), orders);
    ctx.v = Ser::con(C64(0.0), orders);
    for (const auto& [k, val] : asg.params_f64) ctx.params[k] = Ser::con(val, orders);
    ctx.fns = &asg.fns;
    Mat<Ser> l4 = instantiate(rec, ctx);
    Mat<Ser> t = transfer_product(l4, sites);

    int dim = 1 << sites;
    for (int n = 0; n <= orders; ++n) {
        Mat<C64> qn(dim);
        for (int k = 0; k < dim * dim; ++k) qn.a[k] = t.a[k].at(n);
        cs.qtilde.push_back(std::move(qn));
    }

    // commutators of the t-series coefficients
    cs.qtilde_comm.assign(orders + 1, std::vector<double>(orders + 1, 0.0));
    for (int m = 0; m <= orders; ++m)
        for (int n = 0; n <= orders; ++n)
            if (fnorm(cs.qtilde[m]) > 0 && fnorm(cs.qtilde[n]) > 0)
                cs.qtilde_comm[m][n] = comm_norm(cs.qtilde[m], cs.qtilde[n]);

    // series log of t0^{-1} t(u), when t(0) is invertible
    Eigen::MatrixXcd t0 = to_eigen(cs.qtilde[0]);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(t0);
    cs.log_defined = lu.isInvertible();
    if (cs.log_defined) {
        Mat<C64> t0inv = from_eigen(lu.inverse());
        std::vector<Mat<C64>> s(orders + 1, Mat<C64>(dim));  // t0^{-1} t(u) - 1
        for (int n = 1; n <= orders; ++n) s[n] = t0inv * cs.qtilde[n];
        std::vector<Mat<C64>> lg(orders + 1, Mat<C64>(dim));
        std::vector<Mat<C64>> pw = s;  // s^k, truncated
        double sign = 1.0;
        for (int k = 1; k <= orders; ++k) {
            if (k > 1) {
                std::vector<Mat<C64>> npw(orders + 1, Mat<C64>(dim));
                for (int i = 1; i <= orders; ++i)
                    for (int j = 1; i + j <= orders; ++j) npw[i + j] = npw[i + j] + pw[i] * s[j];
                pw = npw;
            }
            for (int n = 1; n <= orders; ++n)
                lg[n] = lg[n] + pw[n].scaled(C64(sign / static_cast<double>(k)));
            sign = -sign;
        }
        double fact = 1.0;
        for (int n = 1; n <= orders; ++n) {
            cs.q.push_back(lg[n].scaled(C64(fact)));  // Q_{n+1} = n! [u^n] log t
            fact *= static_cast<double>(n + 1);
        }
        int nq = static_cast<int>(cs.q.size());
        cs.q_comm.assign(nq, std::vector<double>(nq, 0.0));
        for (int m = 0; m < nq; ++m)
            for (int n = 0; n < nq; ++n)
                if (fnorm(cs.q[m]) > 0 && fnorm(cs.q[n]) > 0)
                    cs.q_comm[m][n] = comm_norm(cs.q[m], cs.q[n]);
    }
    return cs;
}

Mat<C64> hamiltonian_density(const Record& rec, const Assignment& asg) {
    SeriesCtx ctx;
    ctx.order = 1;
    ctx.u = Ser::var(C64(0.0), 1);
    ctx.v = Ser::con(C64(0.0), 1);
    for (const auto& [k, val] : asg.params_f64) ctx.params[k] = Ser::con(val, 1);
    ctx.fns = &asg.fns;
    Mat<Ser> l4 = instantiate(rec, ctx);
    Mat<C64> l0(4), l1(4);
    for (int k = 0; k < 16; ++k) { l0.a[k] = l4.a[k].at(0); l1.a[k] = l4.a[k].at(1); }
    ScalarFit fit = fit_scalar_multiple(l0, permP<C64>());
    if (fit.deviation > 1e-9 || std::abs(fit.c) < 1e-12)
        throw std::runtime_error("hamiltonian_density: Lax operator is not regular");
    return (permP<C64>() * l1).scaled(C64(1.0) / fit.c);
}

Mat<C64> hamiltonian_periodic(const Mat<C64>& density, int sites) {
    int dim = 1 << sites;
    Mat<C64> h(dim);
    for (int i = 0; i < sites; ++i)
        h = h + embed_pair(density, i, (i + 1) % sites, sites);
    return h;
}

nlohmann::ordered_json fcr_space_json(const FcrSpace& space) {
    nlohmann::ordered_json j;
    j["u"] = {space.u.real(), space.u.imag()};
    j["v"] = {space.v.real(), space.v.imag()};
    j["dim"] = space.dim;
    j["zero_map"] = space.zero_map;
    std::vector<double> sv(space.singular_values.data(),
                           space.singular_values.data() + space.singular_values.size());
    j["singular_values"] = sv;
    nlohmann::ordered_json basis = nlohmann::ordered_json::array();
    for (const Mat<C64>& b : space.basis) {
        nlohmann::ordered_json m = nlohmann::ordered_json::array();
        for (int r = 0; r < 4; ++r) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int c = 0; c < 4; ++c)
                row.push_back({b(r, c).real(), b(r, c).imag()});
            m.push_back(row);
        }
        basis.push_back(m);
    }
    j["basis"] = basis;
    nlohmann::ordered_json tm = nlohmann::ordered_json::array();
    for (const auto& t : space.template_matches)
        tm.push_back({{"id", t.id}, {"residual", t.residual}});
    j["template_matches"] = tm;
    return j;
}

nlohmann::ordered_json charges_json(const ChargeSet& cs) {
    nlohmann::ordered_json j;
    j["sites"] = cs.sites;
    j["orders"] = cs.orders;
    j["log_defined"] = cs.log_defined;
    j["qtilde_commutators"] = cs.qtilde_comm;
    j["q_commutators"] = cs.q_comm;
    return j;
}

}  // namespace ybx
