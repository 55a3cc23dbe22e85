#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "ybx/catalog.hpp"
#include "ybx/verifier.hpp"

using namespace ybx;

TEST_CASE("catalog counts and families") {
    const Catalog& cat = Catalog::standard();
    auto constant = cat.list("constant");
    auto spectral = cat.list("spectral");
    auto tilde = cat.list("rll-tilde");
    // 19 classified constant records plus the identity reference seed
    int classified = 0;
    for (const Record* r : constant)
        if (r->family != "identity") ++classified;
    CHECK(classified == 19);
    CHECK(constant.size() == 20);
    CHECK(spectral.size() == 18);
    CHECK(tilde.size() == 13);
    std::set<std::string> fams;
    for (const Record* r : spectral) fams.insert(r->family);
    CHECK(fams.size() == 15);   // the B family contributes three records
    // every record parses to a full 4x4 of expressions and a sane rank
    for (const Record& r : cat.records) {
        for (const auto& e : r.matrix) CHECK(e != nullptr);
        CHECK(r.rank >= 1);
        CHECK(r.rank <= 4);
    }
}

TEST_CASE("rank filter matches the rank-1 constant solutions") {
    const Catalog& cat = Catalog::standard();
    auto rk1 = cat.list("constant", 1);
    std::set<std::string> ids;
    for (const Record* r : rk1) ids.insert(r->id);
    CHECK(ids == std::set<std::string>{"const.RS", "const.RT"});
}

TEST_CASE("lookup and checksum") {
    const Catalog& cat = Catalog::standard();
    CHECK(cat.find("const.RA") != nullptr);
    CHECK(cat.find("no.such.id") == nullptr);
    CHECK_THROWS(cat.get("no.such.id"));
    CHECK(cat.checksum.size() == 16);
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") != fnv1a_hex("b"));
}

TEST_CASE("loader rejects malformed catalogs") {
    std::string dup = R"([
      {"id":"x","kind":"constant","rank":4,"params":[],"constraints":[],
       "matrix":[["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
       "free_fns":[],"citation":"","notes":""},
      {"id":"x","kind":"constant","rank":4,"params":[],"constraints":[],
       "matrix":[["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
       "free_fns":[],"citation":"","notes":""}
    ])";
    CHECK_THROWS(Catalog::load(dup));
    std::string badref = R"([
      {"id":"t","kind":"rll-tilde","rank":4,"params":[],"constraints":[],
       "matrix":[["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]],
       "free_fns":[],"citation":"","notes":"","source":"spec.missing"}
    ])";
    CHECK_THROWS(Catalog::load(badref));
}

TEST_CASE("tilde records reference existing spectral sources") {
    const Catalog& cat = Catalog::standard();
    for (const Record* r : cat.list("rll-tilde")) {
        const Record* src = cat.find(r->source);
        REQUIRE(src != nullptr);
        CHECK(src->kind == "spectral");
        for (const auto& [slot, srcslot] : r->source_fn_map) {
            bool declared = false;
            for (const auto& f : src->free_fns) declared |= (f == srcslot);
            CHECK(declared);
        }
    }
}

TEST_CASE("draw_assignment is deterministic and respects constraints") {
    const Catalog& cat = Catalog::standard();
    const Record& rc = cat.get("const.RC");
    Draw d1(5), d2(5);
    Assignment a1 = draw_assignment(rc, d1);
    Assignment a2 = draw_assignment(rc, d2);
    for (const auto& [k, v] : a1.params_exact) CHECK(v == a2.params_exact.at(k));
    // the choice constraint pins k to 1 or -p*q
    GRat k = a1.params_exact.at("k");
    GRat p = a1.params_exact.at("p"), q = a1.params_exact.at("q");
    CHECK((k == GRat(1) || k == -(p * q)));
    // exact and float parameter draws agree
    for (const auto& [name, v] : a1.params_exact) {
        C64 f = a1.params_f64.at(name);
        CHECK(std::abs(f - v.to_c64()) < 1e-15);
    }
}

TEST_CASE("draw_assignment avoids the declared degenerate loci") {
    const Catalog& cat = Catalog::standard();
    Draw d(17);
    for (const char* id : {"spec.RN", "spec.RA", "const.RA"}) {
        const Record& rec = cat.get(id);
        for (int rep = 0; rep < 5; ++rep) {
            Assignment a = draw_assignment(rec, d);
            ExactCtx ctx;
            ctx.params = a.params_exact;
            for (const Constraint& c : rec.constraints) {
                if (c.type != Constraint::Type::Nonzero) continue;
                CHECK(!eval_expr(c.expr, ctx).is_zero());
            }
        }
    }
}

TEST_CASE("exact and float instantiation agree on constant records") {
    const Catalog& cat = Catalog::standard();
    Draw d(23);
    for (const Record* r : cat.list("constant")) {
        Assignment a = draw_assignment(*r, d);
        ExactCtx ec;
        ec.params = a.params_exact;
        F64Ctx fc;
        fc.params = a.params_f64;
        Mat<GRat> me = instantiate(*r, ec);
        Mat<C64> mf = instantiate(*r, fc);
        for (int i = 0; i < 16; ++i) CHECK(std::abs(me.a[i].to_c64() - mf.a[i]) < 1e-12);
    }
}

TEST_CASE("spectral records degenerate to constant solutions at u=v") {
    const Catalog& cat = Catalog::standard();
    Draw d(31);
    for (const Record* r : cat.list("spectral")) {
        REQUIRE(r->correspondence.has_value());
        CHECK(cat.find(r->correspondence->target) != nullptr);
        Assignment a = draw_assignment(*r, d);
        REval ev = make_eval(*r, a);
        C64 u = draw_spectral_point(d);
        CHECK(constant_ybe_residual(ev(u, u)) <= 1e-9);
    }
}

TEST_CASE("direct correspondence: the eight-vertex family at u=v") {
    const Catalog& cat = Catalog::standard();
    const Record& rg = cat.get("spec.RG");
    Draw d(3);
    Assignment a = draw_assignment(rg, d);
    REval ev = make_eval(rg, a);
    Mat<C64> at0 = ev(C64(0.4, 0.2), C64(0.4, 0.2));
    F64Ctx fc;
    Mat<C64> rh = instantiate(cat.get("const.RH"), fc);
    ScalarFit fit = fit_scalar_multiple(at0, rh);
    CHECK(fit.deviation <= 1e-12);
}

TEST_CASE("similarity correspondence: XX-type record maps to the anti-diagonal family") {
    const Catalog& cat = Catalog::standard();
    const Record& b = cat.get("spec.RBzx");
    REQUIRE(b.correspondence.has_value());
    CHECK(b.correspondence->mode == "similarity");
    Draw d(7);
    Assignment a = draw_assignment(b, d);
    REval ev = make_eval(b, a);
    C64 u(0.6, -0.3);
    // conjugate by Q = [[1,i],[i,1]] on each factor
    Mat<C64> q(2);
    q(0, 0) = C64(1.0);
    q(0, 1) = C64(0.0, 1.0);
    q(1, 0) = C64(0.0, 1.0);
    q(1, 1) = C64(1.0);
    REval tr = similarity_transform(ev, q);
    Mat<C64> m = tr(u, u);
    // the image is supported on the anti-diagonal with equal middle entries:
    // an instance of the two-parameter anti-diagonal constant family
    double scale = std::abs(m(0, 3)) + std::abs(m(3, 0)) + 1e-300;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i + j != 3) CHECK(std::abs(m(i, j)) <= 1e-10 * scale);
    CHECK(std::abs(m(1, 2) - m(2, 1)) <= 1e-10 * scale);
    CHECK(constant_ybe_residual(m) <= 1e-9);
}
