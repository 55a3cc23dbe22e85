#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ybx/catalog.hpp"
#include "ybx/rll.hpp"

using namespace ybx;

namespace {

Assignment fg_bindings(const std::string& f, const std::string& g) {
    Assignment a;
    a.fns["f1"] = parse_expr(f);
    a.fns["g1"] = parse_expr(g);
    return a;
}

}  // namespace

TEST_CASE("Lax operators and regularity") {
    const Catalog& cat = Catalog::standard();
    // the eight-vertex exponential solution is not regular: R(u,u) != c P
    LaxOperator lg = lax_from_solution(cat.get("spec.RG"), Assignment{});
    CHECK(!lg.regular);
    // the f=g deformation is regular with R(u,u) = 2f P
    LaxOperator lfg = lax_from_solution(cat.get("tilde.Rg"), fg_bindings("1", "1"));
    CHECK(lfg.regular);
    CHECK(std::abs(lfg.reg_scalar - C64(2.0)) <= 1e-9);
    // L(u) = R(u, 0) by construction
    Draw d(3);
    C64 u = draw_spectral_point(d);
    REval ev = make_eval(cat.get("spec.RG"), Assignment{});
    CHECK(rel_residual(lg.eval(u), ev(u, C64(0.0))) <= 1e-12);
}

TEST_CASE("commutation solution space of the eight-vertex Lax operator") {
    const Catalog& cat = Catalog::standard();
    LaxOperator lax = lax_from_solution(cat.get("spec.RG"), Assignment{});
    Draw d(5);
    for (int i = 0; i < 5; ++i) {
        C64 u, v;
        draw_spectral_pair(d, u, v);
        FcrSpace sp = solve_fcr_space(lax, u, v);
        CHECK(sp.dim == 2);
        CHECK(!sp.zero_map);
        // retained/discarded singular values are separated by a wide gap
        int nsv = static_cast<int>(sp.singular_values.size());
        double kept = sp.singular_values(nsv - sp.dim);
        double retained = sp.singular_values(nsv - sp.dim - 1);
        CHECK(retained / std::max(kept, 1e-300) >= 1e6);
        // R^G itself and the two-function deformation lie in the space
        REval ev = make_eval(cat.get("spec.RG"), Assignment{});
        CHECK(fcr_membership(sp, ev(u, v)) <= 1e-9);
        REval dg = make_eval(cat.get("tilde.Rg"), fg_bindings("1", "2"));
        CHECK(fcr_membership(sp, dg(u, v)) <= 1e-9);
        // a random matrix does not
        Mat<C64> rnd(4);
        for (auto& z : rnd.a) z = d.annulus();
        CHECK(fcr_membership(sp, rnd) > 1e-3);
    }
}

TEST_CASE("template matching finds the declared solution-space family") {
    const Catalog& cat = Catalog::standard();
    LaxOperator lax = lax_from_solution(cat.get("spec.RG"), Assignment{});
    Draw d(7);
    C64 u, v;
    draw_spectral_pair(d, u, v);
    FcrSpace sp = solve_fcr_space(lax, u, v);
    match_templates(cat, lax, sp, d);
    bool found = false;
    for (const FcrTemplateMatch& m : sp.template_matches) {
        if (m.id != "tilde.Rg") continue;
        found = true;
        CHECK(m.residual <= 1e-9);
    }
    CHECK(found);
}

TEST_CASE("free 4x4 solution space: the commutation map vanishes") {
    const Catalog& cat = Catalog::standard();
    const Record& tl = cat.get("tilde.Rl");
    const Record& src = cat.get(tl.source);
    Draw d(9);
    LaxOperator lax = lax_from_solution(src, draw_assignment(src, d));
    C64 u, v;
    draw_spectral_pair(d, u, v);
    FcrSpace sp = solve_fcr_space(lax, u, v);
    CHECK(sp.zero_map);
    CHECK(sp.dim == 16);
}

TEST_CASE("braiding-conjugate inverse") {
    Draw d(11);
    C64 u, v;
    draw_spectral_pair(d, u, v);
    Mat<C64> p = permP<C64>();
    REval pev = [p](C64, C64) { return p; };
    CHECK(rel_residual(rhat(pev)(u, v), p) <= 1e-12);
    const Catalog& cat = Catalog::standard();
    REval rg = make_eval(cat.get("spec.RG"), Assignment{});
    // rhat(u,v) * (P R(v,u) P) = Id
    Mat<C64> prod = rhat(rg)(u, v) * (p * rg(v, u) * p);
    CHECK(rel_residual(prod, Mat<C64>::id(4)) <= 1e-10);
}

TEST_CASE("transfer matrix of the permutation Lax operator is the cyclic shift") {
    LEval pl = [](C64) { return permP<C64>(); };
    for (int n : {2, 3, 4}) {
        Mat<C64> t = transfer_matrix(pl, n, C64(0.3, 0.1));
        // t^n = Id but t != Id
        Mat<C64> acc = Mat<C64>::id(1 << n);
        for (int i = 0; i < n; ++i) acc = acc * t;
        CHECK(rel_residual(acc, Mat<C64>::id(1 << n)) <= 1e-12);
        CHECK(rel_residual(t, Mat<C64>::id(1 << n)) > 0.1);
        // it permutes basis states: exactly one 1 per column
        for (int c = 0; c < t.n; ++c) {
            double s = 0;
            for (int r = 0; r < t.n; ++r) s += std::abs(t(r, c));
            CHECK(s == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("transfer matrices commute at different spectral parameters") {
    const Catalog& cat = Catalog::standard();
    Draw d(13);
    for (const char* id : {"spec.RD", "spec.RG"}) {
        const Record& rec = cat.get(id);
        Assignment a = draw_assignment(rec, d);
        LaxOperator lax = lax_from_solution(rec, a);
        for (int sites = 3; sites <= 4; ++sites) {
            for (int i = 0; i < 3; ++i) {
                C64 u, v;
                draw_spectral_pair(d, u, v);
                Mat<C64> tu = transfer_matrix(lax.eval, sites, u);
                Mat<C64> tv = transfer_matrix(lax.eval, sites, v);
                CHECK(comm_norm(tu, tv) <= 1e-9);
            }
        }
    }
}

TEST_CASE("charge hierarchy commutes and matches the transfer matrix") {
    const Catalog& cat = Catalog::standard();
    Draw d(17);
    const Record& rd = cat.get("spec.RD");
    Assignment a = draw_assignment(rd, d);
    ChargeSet cs = charges(rd, a, 3, 3);
    CHECK(cs.sites == 3);
    REQUIRE(static_cast<int>(cs.qtilde.size()) >= 3);
    for (const auto& row : cs.qtilde_comm)
        for (double x : row) CHECK(x <= 1e-9);
    if (cs.log_defined)
        for (const auto& row : cs.q_comm)
            for (double x : row) CHECK(x <= 1e-9);
    // coefficient extraction agrees with direct evaluation of t(u)
    LaxOperator lax = lax_from_solution(rd, a);
    C64 u(0.1, 0.05);
    Mat<C64> direct = transfer_matrix(lax.eval, 3, u);
    Mat<C64> fromser(8);
    C64 upow(1.0);
    for (size_t k = 0; k < cs.qtilde.size(); ++k) {
        fromser = fromser + cs.qtilde[k].scaled(upow);
        upow *= u;
    }
    CHECK(rel_residual(fromser, direct) <= 1e-4);  // truncation error only
}

TEST_CASE("Hamiltonian density of the regular f=g model") {
    const Catalog& cat = Catalog::standard();
    Assignment a = fg_bindings("1", "1");
    const Record& rg = cat.get("tilde.Rg");
    Mat<C64> h = hamiltonian_density(rg, a);
    CHECK(h.n == 4);
    ChargeSet cs = charges(rg, a, 4, 4);
    REQUIRE(cs.log_defined);
    REQUIRE(!cs.q.empty());
    Mat<C64> hp = hamiltonian_periodic(h, 4);
    CHECK(rel_residual(hp, cs.q[0]) <= 1e-9);
    // Q2, Q3, Q4 pairwise commute
    for (size_t i = 0; i < cs.q.size() && i < 3; ++i)
        for (size_t j = i + 1; j < cs.q.size() && j < 3; ++j)
            CHECK(comm_norm(cs.q[i], cs.q[j]) <= 1e-9);
    // density requires regularity
    CHECK_THROWS(hamiltonian_density(cat.get("spec.RG"), Assignment{}));
}

TEST_CASE("commutator norm basics") {
    Mat<C64> p = permP<C64>();
    CHECK(comm_norm(p, p) <= 1e-15);
    CHECK(comm_norm(p, Mat<C64>::id(4)) <= 1e-15);
    Draw d(21);
    Mat<C64> x(4), y(4);
    for (auto& z : x.a) z = d.annulus();
    for (auto& z : y.a) z = d.annulus();
    CHECK(comm_norm(x, y) > 1e-3);
}

TEST_CASE("report serialization carries dimensions and commutator tables") {
    const Catalog& cat = Catalog::standard();
    LaxOperator lax = lax_from_solution(cat.get("spec.RG"), Assignment{});
    Draw d(23);
    C64 u, v;
    draw_spectral_pair(d, u, v);
    FcrSpace sp = solve_fcr_space(lax, u, v);
    auto j = fcr_space_json(sp);
    CHECK(j["dim"] == 2);
    Assignment a = fg_bindings("1", "1");
    ChargeSet cs = charges(cat.get("tilde.Rg"), a, 3, 3);
    auto cj = charges_json(cs);
    CHECK(cj["sites"] == 3);
    CHECK(cj.contains("qtilde_commutators"));
}
