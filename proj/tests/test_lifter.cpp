#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "ybx/catalog.hpp"
#include "ybx/lifter.hpp"
#include "ybx/verifier.hpp"

using namespace ybx;

namespace {

// the anti-diagonal (+,+,+,-) shape appearing in the eight-vertex lift
bool is_s_shape(const std::vector<GRat>& v, const GRat& f) {
    std::vector<GRat> expect(16);
    expect[3] = f;
    expect[6] = f;
    expect[9] = f;
    expect[12] = -f;
    return v == expect;
}

}  // namespace

TEST_CASE("eight-vertex seed: one degree of freedom per order, exact half-square") {
    const Catalog& cat = Catalog::standard();
    LiftResult res = lift(cat.get("const.RH"), {}, 4);
    REQUIRE(res.orders.size() == 4);
    for (const OrderSolution& s : res.orders) {
        CHECK(s.span_dim == 1);
        CHECK(s.gauge_in_span);   // the rescaling direction is always a solution
    }
    // order 1: a single anti-diagonal direction
    REQUIRE(res.orders[0].comp.size() == 1);
    GRat f = res.orders[0].comp[0][3];
    CHECK(!f.is_zero());
    CHECK(is_s_shape(res.orders[0].comp[0], f));
    // order 2: particular solution is exactly (1/2) t^2 times the same shape
    int t = res.orders[0].param_ids[0];
    const std::vector<Poly>& part = res.orders[1].particular;
    Poly half_t2 = Poly::var(t) * Poly::var(t);
    half_t2 = half_t2.scaled(GRat(1, 2) * f);
    CHECK(part[3] == half_t2);
    CHECK(part[6] == half_t2);
    CHECK(part[9] == half_t2);
    CHECK(part[12] == -half_t2);
    for (int i : {0, 1, 2, 4, 5, 7, 8, 10, 11, 13, 14, 15}) CHECK(part[i].is_zero());
}

TEST_CASE("eight-vertex seed matches the exponential family and only it") {
    const Catalog& cat = Catalog::standard();
    LiftResult res = lift(cat.get("const.RH"), {}, 4);
    bool unresolved = false;
    CHECK(branch_on_nonlinear(res, unresolved).empty());
    CHECK(!unresolved);
    MatchReport ok = match_family(res, cat.get("spec.RG"));
    CHECK(ok.matched);
    CHECK(ok.per_order.size() == 5);
    for (bool b : ok.per_order) CHECK(b);
    CHECK(!match_family(res, cat.get("spec.RE")).matched);
    CHECK(!match_family(res, cat.get("spec.RF")).matched);
    // the seed itself (zero higher orders) is trivially contained
    CHECK(match_family(res, cat.get("const.RH")).matched);
}

TEST_CASE("diagonal seed branch: three quadratic-split children") {
    const Catalog& cat = Catalog::standard();
    std::map<std::string, GRat> branch{{"p", GRat(1)}, {"q", GRat(1)}, {"s", GRat(-1)}};
    LiftResult res = lift(cat.get("const.RA"), branch, 2);
    CHECK(res.r0.a[0] == GRat(1));
    CHECK(res.r0.a[15] == GRat(-1));
    CHECK(res.orders[0].span_dim == 7);
    bool unresolved = false;
    std::vector<BranchChild> kids = branch_on_nonlinear(res, unresolved);
    CHECK(!unresolved);
    REQUIRE(kids.size() == 3);
    int n_match = 0, n_related = 0, matched_kept = -1;
    for (size_t i = 0; i < kids.size(); ++i) {
        std::map<int, GRat> preset;
        for (int z : kids[i].zero_vars) preset[z] = GRat(0);
        if (match_family(res, cat.get("spec.RE"), preset).matched) {
            ++n_match;
            matched_kept = static_cast<int>(kids[i].kept_vars.size());
        }
        for (size_t j = i + 1; j < kids.size(); ++j)
            if (transpose_related(res, kids[i], kids[j])) ++n_related;
    }
    CHECK(n_match == 1);       // exactly one surviving branch is the corner family
    CHECK(n_related == 1);     // exactly one transpose-related pair
    CHECK(matched_kept == 1 + static_cast<int>(res.orders[1].param_ids.size()));
}

TEST_CASE("identity seed: diagonal space plus two corner children") {
    const Catalog& cat = Catalog::standard();
    LiftResult res = lift(cat.get("const.I"), {}, 1);
    CHECK(res.orders[0].raw_dim == 16);   // order-1 system is vacuous for the identity
    CHECK(res.orders[0].span_dim == 15);  // minus the rescaling gauge
    CHECK(!res.lookahead.empty());        // the commutator quadratics arrive one order later
    bool unresolved = false;
    std::vector<BranchChild> kids = branch_on_nonlinear(res, unresolved);
    CHECK(!unresolved);
    REQUIRE(kids.size() == 3);
    std::multiset<size_t> sizes;
    for (const BranchChild& c : kids) sizes.insert(c.kept_vars.size());
    CHECK(sizes == std::multiset<size_t>{1, 1, 3});
    // the two singleton children are the transposed corners
    std::vector<const BranchChild*> corners;
    for (const BranchChild& c : kids)
        if (c.kept_vars.size() == 1) corners.push_back(&c);
    REQUIRE(corners.size() == 2);
    CHECK(transpose_related(res, *corners[0], *corners[1]));
    // the 3-dimensional child keeps only diagonal directions
    for (const BranchChild& c : kids) {
        if (c.kept_vars.size() != 3) continue;
        for (size_t i = 0; i < res.orders[0].param_ids.size(); ++i) {
            bool kept = false;
            for (int id : c.kept_vars) kept |= (id == res.orders[0].param_ids[i]);
            if (!kept) continue;
            for (int r = 0; r < 4; ++r)
                for (int cc = 0; cc < 4; ++cc)
                    if (r != cc) CHECK(res.orders[0].comp[i][r * 4 + cc].is_zero());
        }
    }
}

TEST_CASE("truncation stability: lower orders unchanged by deeper truncation") {
    const Catalog& cat = Catalog::standard();
    std::map<std::string, GRat> branch{{"p", GRat(1)}, {"q", GRat(1)}, {"s", GRat(-1)}};
    LiftResult r2 = lift(cat.get("const.RA"), branch, 2);
    LiftResult r3 = lift(cat.get("const.RA"), branch, 3);
    for (size_t n = 0; n < r2.orders.size(); ++n) {
        CHECK(r2.orders[n].span_dim == r3.orders[n].span_dim);
        CHECK(r2.orders[n].raw_dim == r3.orders[n].raw_dim);
        CHECK(r2.orders[n].comp == r3.orders[n].comp);
    }
    LiftResult h3 = lift(cat.get("const.RH"), {}, 3);
    LiftResult h4 = lift(cat.get("const.RH"), {}, 4);
    for (size_t n = 0; n < h3.orders.size(); ++n)
        CHECK(h3.orders[n].span_dim == h4.orders[n].span_dim);
}

TEST_CASE("matched families pass the spectral equation numerically") {
    const Catalog& cat = Catalog::standard();
    Draw d(44);
    for (const char* id : {"spec.RG", "spec.RE"}) {
        const Record& rec = cat.get(id);
        REval ev = make_eval(rec, draw_assignment(rec, d));
        for (int i = 0; i < 10; ++i) {
            C64 u, v, w;
            draw_spectral_triple(d, u, v, w);
            CHECK(ybe_residual(ev, u, v, w) <= 1e-9);
        }
    }
}

TEST_CASE("branching handles synthetic constraint shapes") {
    LiftResult res;
    res.r0 = Mat<GRat>::id(4);
    res.v0.assign(16, GRat(0));
    for (int i = 0; i < 4; ++i) res.v0[i * 4 + i] = GRat(1);
    OrderSolution s;
    s.order = 1;
    s.param_ids = {1, 2};
    s.comp = {std::vector<GRat>(16), std::vector<GRat>(16)};
    SUBCASE("x*y = 0 splits in two") {
        s.nonlinear = {Poly::var(1) * Poly::var(2)};
        res.orders.push_back(s);
        bool unresolved = false;
        auto kids = branch_on_nonlinear(res, unresolved);
        CHECK(!unresolved);
        REQUIRE(kids.size() == 2);
        CHECK(kids[0].zero_vars.size() == 1);
        CHECK(kids[1].zero_vars.size() == 1);
        CHECK(kids[0].zero_vars[0] != kids[1].zero_vars[0]);
    }
    SUBCASE("constant obstruction is unresolved") {
        s.nonlinear = {Poly::var(1) * Poly::var(1) + Poly::con(GRat(1))};
        res.orders.push_back(s);
        bool unresolved = false;
        auto kids = branch_on_nonlinear(res, unresolved);
        CHECK(unresolved);
    }
    SUBCASE("no constraints, no children") {
        res.orders.push_back(s);
        bool unresolved = false;
        CHECK(branch_on_nonlinear(res, unresolved).empty());
        CHECK(!unresolved);
    }
}

TEST_CASE("cocycle binding check for the exponential family") {
    Draw d(48);
    C64 u, v, w;
    draw_spectral_triple(d, u, v, w);
    CHECK(cocycle_residual(bind_exp_diff(1), u, v, w) <= 1e-12);
    CHECK(cocycle_residual(bind_constant("1"), u, v, w) <= 1e-14);
    CHECK(cocycle_residual(parse_expr("u-v"), u, v, w) > 0.01);
}

TEST_CASE("lift rejects bad inputs") {
    const Catalog& cat = Catalog::standard();
    CHECK_THROWS_AS(lift(cat.get("spec.RG"), {}, 2), std::invalid_argument);
    // generic k violates the choice constraint, so the seed fails at order 0
    std::map<std::string, GRat> bad{{"p", GRat(2)}, {"q", GRat(3)}, {"k", GRat(5)}};
    CHECK_THROWS_AS(lift(cat.get("const.RC"), bad, 1), std::invalid_argument);
}
