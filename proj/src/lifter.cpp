#include "ybx/lifter.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ybx/linsys.hpp"
#include "ybx/verifier.hpp"

namespace ybx {

namespace {

using PMat = Mat<Poly>;
using PSerM = std::vector<PMat>;  // coefficient matrices per order in u-

PSerM ser_mul(const PSerM& a, const PSerM& b, int n, int dim) {
    PSerM r(n + 1, PMat(dim));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) {
            if (i >= static_cast<int>(a.size()) || j >= static_cast<int>(b.size())) continue;
            r[i + j] = r[i + j] + a[i] * b[j];
        }
    return r;
}

PSerM ser_embed(const PSerM& x, std::pair<int, int> slot) {
    PSerM r;
    r.reserve(x.size());
    for (const PMat& m : x) r.push_back(embed(m, slot));
    return r;
}

struct AugRow {
    std::array<GRat, 16> a{};
    Poly b;
};

std::string grat_factor(const GRat& c) {
    if (c == GRat(1)) return "";
    if (c == GRat(-1)) return "-";
    return c.str() + "*";
}

}  // namespace

std::string poly_str(const Poly& p, const std::map<int, std::string>& names) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, c] : p.t) {
        std::string term;
        if (mono.empty()) {
            term = c.str();
        } else {
            term = grat_factor(c);
            for (size_t i = 0; i < mono.size(); ++i) {
                if (i) term += "*";
                auto it = names.find(mono[i]);
                term += it != names.end() ? it->second : ("x" + std::to_string(mono[i]));
            }
        }
        if (!first && term[0] != '-') out += "+";
        out += term;
        first = false;
    }
    return out;
}

LiftResult lift(const Record& seed, const std::map<std::string, GRat>& branch, int order) {
    if (seed.kind != "constant")
        throw std::invalid_argument("lift: seed must be a constant record");
    ExactCtx ctx;
    ctx.params = branch;
    Mat<GRat> r0 = instantiate(seed, ctx);
    if (!constant_ybe_exact(r0))
        throw std::invalid_argument("lift: seed fails the constant equation on this branch");

    LiftResult res;
    res.r0 = r0;
    res.v0.resize(16);
    for (int i = 0; i < 16; ++i) res.v0[i] = r0.a[i];

    PMat r0p(4);
    for (int i = 0; i < 16; ++i) r0p.a[i] = Poly::con(r0.a[i]);

    // Solved coefficient matrices per order (entries in the free parameters).
    std::vector<PMat> solved;  // index m-1 = order m

    // Collect the order-n coefficient rows of the three equation blocks; the
    // order-n unknowns occupy variable ids [ubase, ubase+16).
    auto order_equations = [&](int n, int ubase) {
        PSerM ruv(n + 1, PMat(4)), rvu(n + 1, PMat(4));
        ruv[0] = r0p;
        rvu[0] = r0p;
        for (int m = 1; m <= n; ++m) {
            PMat rm(4);
            if (m < n) rm = solved[m - 1];
            else
                for (int k = 0; k < 16; ++k) rm.a[k] = Poly::var(ubase + k);
            ruv[m] = rm;
            rvu[m] = (m % 2) ? PMat(4) - rm : rm;
        }
        PSerM r0s(n + 1, PMat(4));
        r0s[0] = r0p;

        PSerM a12 = ser_embed(ruv, {1, 2}), a13 = ser_embed(ruv, {1, 3}),
              a23 = ser_embed(ruv, {2, 3});
        PSerM b23 = ser_embed(rvu, {2, 3});
        PSerM c12 = ser_embed(r0s, {1, 2}), c13 = ser_embed(r0s, {1, 3}),
              c23 = ser_embed(r0s, {2, 3});

        std::vector<Poly> eqs;
        auto harvest = [&](const PSerM& lhs, const PSerM& rhs) {
            for (int k = 0; k < 64; ++k) {
                Poly e = lhs[n].a[k] - rhs[n].a[k];
                if (!e.is_zero()) eqs.push_back(std::move(e));
            }
        };
        harvest(ser_mul(ser_mul(c12, a13, n, 8), a23, n, 8),
                ser_mul(ser_mul(a23, a13, n, 8), c12, n, 8));
        harvest(ser_mul(ser_mul(a12, c13, n, 8), b23, n, 8),
                ser_mul(ser_mul(b23, c13, n, 8), a12, n, 8));
        harvest(ser_mul(ser_mul(a12, a13, n, 8), c23, n, 8),
                ser_mul(ser_mul(c23, a13, n, 8), a12, n, 8));
        return eqs;
    };

    // Split equations into linear rows in the order-n unknowns plus
    // parameter-only constraints.
    auto split = [&](const std::vector<Poly>& eqs, int ubase, std::vector<AugRow>& rows,
                     std::vector<Poly>& nonlinear) {
        for (const Poly& e : eqs) {
            AugRow row;
            Poly rest;
            bool any = false;
            for (const auto& [mono, c] : e.t) {
                int nvar = -1, count = 0;
                for (int id : mono)
                    if (id >= ubase && id < ubase + 16) { nvar = id; ++count; }
                if (count == 0) {
                    rest.add_term(mono, c);
                } else if (count == 1 && mono.size() == 1) {
                    row.a[nvar - ubase] += c;
                    any = true;
                } else {
                    throw std::logic_error("lift: unexpected nonlinear term in current order");
                }
            }
            if (any) {
                row.b = -rest;
                rows.push_back(std::move(row));
            } else if (!rest.is_zero()) {
                nonlinear.push_back(std::move(rest));
            }
        }
    };

    for (int n = 1; n <= order; ++n) {
        int ubase = 1000000 + 100 * n;  // scratch ids, never escape this scope
        std::vector<AugRow> rows;
        OrderSolution sol;
        sol.order = n;
        split(order_equations(n, ubase), ubase, rows, sol.nonlinear);

        // RREF over the 16 unknown columns, carrying the polynomial RHS.
        std::vector<int> piv;
        int rank = 0, nrows = static_cast<int>(rows.size());
        for (int c = 0; c < 16 && rank < nrows; ++c) {
            int sel = -1;
            for (int i = rank; i < nrows; ++i)
                if (!rows[i].a[c].is_zero()) { sel = i; break; }
            if (sel < 0) continue;
            std::swap(rows[rank], rows[sel]);
            GRat inv = rows[rank].a[c].inv();
            for (int j = 0; j < 16; ++j) rows[rank].a[j] *= inv;
            rows[rank].b = rows[rank].b.scaled(inv);
            for (int i = 0; i < nrows; ++i) {
                if (i == rank || rows[i].a[c].is_zero()) continue;
                GRat f = rows[i].a[c];
                for (int j = 0; j < 16; ++j) rows[i].a[j] -= f * rows[rank].a[j];
                rows[i].b = rows[i].b - rows[rank].b.scaled(f);
            }
            piv.push_back(c);
            ++rank;
        }
        for (int i = rank; i < nrows; ++i)
            if (!rows[i].b.is_zero()) sol.nonlinear.push_back(rows[i].b);

        sol.raw_dim = 16 - rank;

        // Homogeneous nullspace basis.
        RowsQ hb;
        {
            std::vector<bool> ispiv(16, false);
            for (int c : piv) ispiv[c] = true;
            for (int c = 0; c < 16; ++c) {
                if (ispiv[c]) continue;
                std::vector<GRat> v(16);
                v[c] = GRat(1);
                for (int r = 0; r < rank; ++r) v[piv[r]] = -rows[r].a[c];
                hb.push_back(std::move(v));
            }
        }

        // Gauge direction present in the homogeneous space?
        {
            RowsQ with = hb;
            with.push_back(res.v0);
            sol.gauge_in_span = rank_exact(with, 16) == rank_exact(hb, 16);
        }

        // Echelon complement of the R^(0) direction.
        RowsQ stacked;
        stacked.push_back(res.v0);
        for (auto& h : hb) stacked.push_back(h);
        RrefQ rr = rref_exact(stacked, 16);
        int v0piv = 0;
        while (v0piv < 16 && res.v0[v0piv].is_zero()) ++v0piv;
        for (size_t r = 0; r < rr.rows.size(); ++r)
            if (rr.piv[r] != v0piv) sol.comp.push_back(rr.rows[r]);
        sol.gauged_dim = static_cast<int>(sol.comp.size());

        // Canonical particular solution, reduced modulo gauge + homogeneous span.
        std::vector<Poly> part(16);
        for (int r = 0; r < rank; ++r) part[piv[r]] = rows[r].b;
        for (size_t r = 0; r < rr.rows.size(); ++r) {
            Poly coef = part[rr.piv[r]];
            if (coef.is_zero()) continue;
            for (int i = 0; i < 16; ++i) part[i] = part[i] - coef * Poly::con(rr.rows[r][i]);
        }
        sol.particular = part;

        // Span of attainable coefficient matrices.
        {
            RowsQ vecs = sol.comp;
            std::map<std::vector<int>, std::vector<GRat>> bym;
            for (int i = 0; i < 16; ++i)
                for (const auto& [mono, c] : part[i].t) {
                    auto& v = bym[mono];
                    v.resize(16);
                    v[i] = c;
                }
            for (auto& [mono, v] : bym) {
                v.resize(16);
                vecs.push_back(v);
            }
            sol.span_dim = rank_exact(vecs, 16);
        }

        // Parametrize this order and record the solved entries.
        PMat sm(4);
        for (size_t i = 0; i < sol.comp.size(); ++i) {
            int id = res.next_var++;
            res.var_name[id] = "t" + std::to_string(n) + "_" + std::to_string(i);
            sol.param_ids.push_back(id);
        }
        for (int k = 0; k < 16; ++k) {
            Poly p = part[k];
            for (size_t i = 0; i < sol.comp.size(); ++i)
                p += Poly::var(sol.param_ids[i], sol.comp[i][k]);
            sm.a[k] = p;
        }
        solved.push_back(sm);
        res.orders.push_back(std::move(sol));
    }

    // Lookahead: order-(N+1) rows containing no order-(N+1) unknowns are valid
    // necessary conditions on the parameters already introduced.
    {
        int n = order + 1;
        int ubase = 1000000 + 100 * n;
        std::vector<AugRow> rows;
        split(order_equations(n, ubase), ubase, rows, res.lookahead);
    }
    return res;
}

// ------------------------------------------------------------- branching

std::vector<BranchChild> branch_on_nonlinear(const LiftResult& res, bool& unresolved) {
    unresolved = false;
    std::vector<int> all_params;
    for (const OrderSolution& s : res.orders)
        all_params.insert(all_params.end(), s.param_ids.begin(), s.param_ids.end());

    std::vector<std::set<int>> supports;
    auto add_constraint = [&](const Poly& p) {
        if (p.degree() > 2) { unresolved = true; return; }
        for (const auto& [mono, c] : p.t) {
            if (mono.empty()) { unresolved = true; continue; }
            supports.emplace_back(mono.begin(), mono.end());
        }
    };
    // Split on the constraints that already appeared at the solved orders;
    // the lookahead rows are a fallback for seeds whose obstructions only
    // show up one order later.
    for (const OrderSolution& s : res.orders)
        for (const Poly& p : s.nonlinear) add_constraint(p);
    if (supports.empty() && !unresolved)
        for (const Poly& p : res.lookahead) add_constraint(p);

    if (supports.empty()) return {};

    // Drop duplicate and superset supports.
    std::sort(supports.begin(), supports.end());
    supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
    std::vector<std::set<int>> reduced;
    for (const auto& s : supports) {
        bool redundant = false;
        for (const auto& o : supports)
            if (o != s && std::includes(s.begin(), s.end(), o.begin(), o.end())) {
                redundant = true;
                break;
            }
        if (!redundant) reduced.push_back(s);
    }

    // Enumerate minimal hitting sets (bounded).
    std::vector<std::set<int>> hits;
    long budget = 200000;
    std::set<int> cur;
    std::function<void()> rec = [&]() {
        if (--budget < 0) { unresolved = true; return; }
        const std::set<int>* unhit = nullptr;
        for (const auto& s : reduced) {
            bool h = false;
            for (int v : s)
                if (cur.count(v)) { h = true; break; }
            if (!h) { unhit = &s; break; }
        }
        if (!unhit) {
            hits.push_back(cur);
            return;
        }
        for (int v : *unhit) {
            cur.insert(v);
            rec();
            cur.erase(v);
        }
    };
    rec();

    // Minimality filter + dedup.
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    std::vector<std::set<int>> minimal;
    for (const auto& h : hits) {
        bool dominated = false;
        for (const auto& o : hits)
            if (o != h && std::includes(h.begin(), h.end(), o.begin(), o.end())) {
                dominated = true;
                break;
            }
        if (!dominated) minimal.push_back(h);
    }

    std::vector<BranchChild> out;
    for (const auto& h : minimal) {
        BranchChild c;
        c.zero_vars.assign(h.begin(), h.end());
        for (int v : all_params)
            if (!h.count(v)) c.kept_vars.push_back(v);
        out.push_back(std::move(c));
    }
    return out;
}

bool transpose_related(const LiftResult& res, const BranchChild& a, const BranchChild& b) {
    if (res.orders.empty()) return false;
    const OrderSolution& s1 = res.orders[0];
    auto space = [&](const BranchChild& c, bool transpose) {
        RowsQ rows;
        std::set<int> zero(c.zero_vars.begin(), c.zero_vars.end());
        for (size_t i = 0; i < s1.param_ids.size(); ++i) {
            if (zero.count(s1.param_ids[i])) continue;
            std::vector<GRat> v(16);
            for (int r = 0; r < 4; ++r)
                for (int cc = 0; cc < 4; ++cc)
                    v[r * 4 + cc] = transpose ? s1.comp[i][cc * 4 + r] : s1.comp[i][r * 4 + cc];
            rows.push_back(std::move(v));
        }
        return rows;
    };
    RowsQ sa = space(a, true), sb = space(b, false);
    if (sa.size() != sb.size()) return false;
    RowsQ joint = sa;
    joint.insert(joint.end(), sb.begin(), sb.end());
    return rank_exact(joint, 16) == rank_exact(sb, 16);
}

// ------------------------------------------------------------- matching

namespace {

// Truncated series in h = u-v whose coefficients are exact polynomials in the
// unknown Taylor coefficients of the candidate's free functions.
struct PSer {
    std::vector<Poly> c;

    static PSer con(const Poly& p, int n) {
        PSer s;
        s.c.assign(n + 1, Poly());
        s.c[0] = p;
        return s;
    }
    int ord() const { return static_cast<int>(c.size()) - 1; }

    PSer operator+(const PSer& o) const {
        PSer r = *this;
        for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
        return r;
    }
    PSer operator-() const {
        PSer r = *this;
        for (auto& p : r.c) p = -p;
        return r;
    }
    PSer operator-(const PSer& o) const { return *this + (-o); }
    PSer operator*(const PSer& o) const {
        PSer r = PSer::con(Poly(), ord());
        for (int i = 0; i <= ord(); ++i)
            for (int j = 0; i + j <= ord(); ++j) r.c[i + j] += c[i] * o.c[j];
        return r;
    }
};

struct MatchEval {
    int order;
    int* next_var;
    std::map<int, std::string>* var_name;
    std::map<std::string, PSer> fn_series;

    PSer eval(const ExprPtr& e) {
        switch (e->kind) {
            case Expr::Kind::Num:
                return PSer::con(Poly::con(GRat(rat_from_decimal(e->text))), order);
            case Expr::Kind::Id: {
                // expand at u = h/2, v = -h/2
                if (e->text == "u" || e->text == "v") {
                    PSer s = PSer::con(Poly(), order);
                    if (order >= 1) s.c[1] = Poly::con(GRat(e->text == "u" ? 1 : -1, 2));
                    return s;
                }
                throw EvalError("match: candidate has unbound parameter '" + e->text + "'");
            }
            case Expr::Kind::Neg:
                return -eval(e->args[0]);
            case Expr::Kind::Pow: {
                if (e->ipow < 0) throw EvalError("match: negative powers unsupported");
                PSer b = eval(e->args[0]);
                PSer r = PSer::con(Poly::con(GRat(1)), order);
                for (int i = 0; i < e->ipow; ++i) r = r * b;
                return r;
            }
            case Expr::Kind::Bin: {
                PSer l = eval(e->args[0]);
                PSer r = eval(e->args[1]);
                switch (e->op) {
                    case '+': return l + r;
                    case '-': return l - r;
                    case '*': return l * r;
                    case '/': {
                        // only division by a constant series is needed here
                        for (int k = 1; k <= order; ++k)
                            if (!r.c[k].is_zero())
                                throw EvalError("match: non-constant division unsupported");
                        if (!r.c[0].is_constant() || r.c[0].cterm().is_zero())
                            throw EvalError("match: non-constant division unsupported");
                        GRat inv = r.c[0].cterm().inv();
                        PSer out = l;
                        for (auto& p : out.c) p = p.scaled(inv);
                        return out;
                    }
                }
                throw EvalError("match: bad operator");
            }
            case Expr::Kind::Call: {
                if (e->text == "exp") {
                    PSer a = eval(e->args[0]);
                    if (!a.c[0].is_zero())
                        throw EvalError("match: exp needs a vanishing constant term");
                    PSer r = PSer::con(Poly::con(GRat(1)), order);
                    PSer term = PSer::con(Poly::con(GRat(1)), order);
                    GRat fact(1);
                    for (int k = 1; k <= order; ++k) {
                        term = term * a;
                        fact *= GRat(k);
                        PSer t2 = term;
                        GRat inv = fact.inv();
                        for (auto& p : t2.c) p = p.scaled(inv);
                        r = r + t2;
                    }
                    return r;
                }
                // free function: unknown Taylor series in h, one per name
                auto it = fn_series.find(e->text);
                if (it != fn_series.end()) return it->second;
                PSer s = PSer::con(Poly(), order);
                for (int k = 0; k <= order; ++k) {
                    int id = (*next_var)++;
                    (*var_name)[id] = "phi_" + e->text + "_" + std::to_string(k);
                    s.c[k] = Poly::var(id);
                }
                fn_series[e->text] = s;
                return s;
            }
        }
        throw EvalError("match: bad expression node");
    }
};

// Solve affine equations over the given unknowns exactly; pivots get their
// forced values, free unknowns get zero. Returns false if inconsistent.
bool solve_affine(const std::vector<Poly>& eqs, std::map<int, GRat>& out) {
    std::set<int> vars;
    for (const Poly& e : eqs)
        for (int v : e.support()) vars.insert(v);
    std::vector<int> unk(vars.begin(), vars.end());
    std::map<int, int> col;
    for (size_t i = 0; i < unk.size(); ++i) col[unk[i]] = static_cast<int>(i);
    int n = static_cast<int>(unk.size());
    RowsQ rows;
    for (const Poly& e : eqs) {
        std::vector<GRat> row(n + 1);
        for (const auto& [mono, c] : e.t) {
            if (mono.empty()) row[n] = row[n] - c;  // move constant to RHS
            else if (mono.size() == 1) row[col[mono[0]]] += c;
            else return false;  // genuinely nonlinear: cannot certify
        }
        rows.push_back(std::move(row));
    }
    RrefQ rr = rref_exact(rows, n + 1);
    for (size_t r = 0; r < rr.rows.size(); ++r)
        if (rr.piv[r] == n) return false;  // 0 = nonzero
    std::map<int, GRat> sol;
    for (int v : unk) sol[v] = GRat(0);
    for (size_t r = 0; r < rr.rows.size(); ++r) {
        // free columns are pinned to zero, so the pivot value is just the RHS
        sol[unk[rr.piv[r]]] = rr.rows[r][n];
    }
    // verify (guards the free-to-zero convention against dependent columns)
    for (const Poly& e : eqs)
        if (!e.subst(sol).is_zero()) return false;
    for (auto& [k, v] : sol) out[k] = v;
    return true;
}

struct AugRow2 {
    std::vector<GRat> a;
    Poly b;
};

// Solve equations that are affine in the listed unknowns but whose constant
// parts may still contain other symbols. Pivot unknowns get polynomial
// values, free unknowns get zero; fails if any reduced row demands a nonzero
// polynomial identity.
bool solve_affine_symbolic(const std::vector<Poly>& eqs, const std::vector<int>& unknowns,
                           std::map<int, Poly>& out) {
    std::map<int, int> col;
    for (size_t i = 0; i < unknowns.size(); ++i) col[unknowns[i]] = static_cast<int>(i);
    int n = static_cast<int>(unknowns.size());
    std::vector<AugRow2> rows;
    for (const Poly& e : eqs) {
        AugRow2 row;
        row.a.assign(n, GRat(0));
        for (const auto& [mono, c] : e.t) {
            int cnt = 0, id = -1;
            for (int v : mono)
                if (col.count(v)) { id = v; ++cnt; }
            if (cnt == 0) row.b.add_term(mono, -c);  // move to the RHS
            else if (cnt == 1 && mono.size() == 1) row.a[col[id]] += c;
            else return false;  // unknown multiplied by another symbol
        }
        rows.push_back(std::move(row));
    }
    int rank = 0, nrows = static_cast<int>(rows.size());
    std::vector<int> piv;
    for (int c = 0; c < n && rank < nrows; ++c) {
        int sel = -1;
        for (int i = rank; i < nrows; ++i)
            if (!rows[i].a[c].is_zero()) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(rows[rank], rows[sel]);
        GRat inv = rows[rank].a[c].inv();
        for (int j = 0; j < n; ++j) rows[rank].a[j] *= inv;
        rows[rank].b = rows[rank].b.scaled(inv);
        for (int i = 0; i < nrows; ++i) {
            if (i == rank || rows[i].a[c].is_zero()) continue;
            GRat f = rows[i].a[c];
            for (int j = 0; j < n; ++j) rows[i].a[j] -= f * rows[rank].a[j];
            rows[i].b = rows[i].b - rows[rank].b.scaled(f);
        }
        piv.push_back(c);
        ++rank;
    }
    for (int i = rank; i < nrows; ++i)
        if (!rows[i].b.is_zero()) return false;  // 0 = nonzero polynomial

    std::map<int, Poly> sol;
    for (int v : unknowns) sol[v] = Poly();
    for (int r = 0; r < rank; ++r) {
        Poly val = rows[r].b;
        // free columns are pinned to zero, so drop their contributions
        sol[unknowns[piv[r]]] = val;
    }
    for (const Poly& e : eqs)
        if (!e.subst_poly(sol).is_zero()) return false;
    for (auto& [k, v] : sol) out[k] = v;
    return true;
}

}  // namespace

MatchReport match_family(const LiftResult& res, const Record& candidate,
                         const std::map<int, GRat>& preset) {
    MatchReport rep;
    rep.candidate = candidate.id;
    int order = static_cast<int>(res.orders.size());

    int next_var = res.next_var + 1000;
    std::map<int, std::string> names = res.var_name;
    MatchEval ev{order, &next_var, &names, {}};

    std::array<PSer, 16> cand;
    try {
        for (int i = 0; i < 16; ++i) cand[i] = ev.eval(candidate.matrix[i]);
    } catch (const EvalError&) {
        rep.matched = false;
        return rep;
    }

    std::map<int, GRat> assign = preset;

    // order 0: candidate(u,u) must be a nonzero multiple of R^(0)
    int lam0 = next_var++;
    {
        std::vector<Poly> eqs;
        for (int i = 0; i < 16; ++i)
            eqs.push_back(cand[i].c[0].subst(assign) - Poly::var(lam0, res.v0[i]));
        bool ok = solve_affine(eqs, assign);
        if (ok) {
            auto it = assign.find(lam0);
            ok = it != assign.end() && !it->second.is_zero();
        }
        rep.per_order.push_back(ok);
        if (!ok) return rep;
    }
    GRat lam0v = assign[lam0];

    // Beyond order 0 the candidate's free-function Taylor coefficients stay
    // symbolic: containment has to hold for the whole family, not just for
    // one special member.
    std::map<int, Poly> passign;
    for (const auto& [k, v] : assign) passign[k] = Poly::con(v);

    for (int n = 1; n <= order; ++n) {
        const OrderSolution& sol = res.orders[n - 1];
        int lamn = next_var++;
        std::vector<int> unknowns;
        for (int id : sol.param_ids)
            if (!passign.count(id)) unknowns.push_back(id);
        unknowns.push_back(lamn);
        std::vector<Poly> eqs;
        for (int i = 0; i < 16; ++i) {
            // lam0^{-1} * cand_n  ==  particular + sum t*comp + lamn * v0
            Poly rhs = sol.particular[i];
            for (size_t kk = 0; kk < sol.param_ids.size(); ++kk)
                rhs += Poly::var(sol.param_ids[kk], sol.comp[kk][i]);
            rhs += Poly::var(lamn, res.v0[i]);
            eqs.push_back(cand[i].c[n].subst_poly(passign).scaled(lam0v.inv()) -
                          rhs.subst_poly(passign));
        }
        bool ok = solve_affine_symbolic(eqs, unknowns, passign);
        rep.per_order.push_back(ok);
        if (!ok) return rep;
    }
    rep.matched = true;
    return rep;
}

// ------------------------------------------------------------- ledger JSON

nlohmann::ordered_json lift_ledger_json(const Record& seed, const LiftJob& job,
                                        const LiftResult& res) {
    nlohmann::ordered_json j;
    j["seed"] = seed.id;
    nlohmann::ordered_json bj = nlohmann::ordered_json::object();
    for (const auto& [k, v] : job.branch) bj[k] = v.str();
    j["branch"] = bj;
    j["order"] = job.order;

    auto mat16 = [&](auto get) {
        nlohmann::ordered_json m = nlohmann::ordered_json::array();
        for (int r = 0; r < 4; ++r) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int c = 0; c < 4; ++c) row.push_back(get(r * 4 + c));
            m.push_back(row);
        }
        return m;
    };

    j["r0"] = mat16([&](int i) { return res.r0.a[i].str(); });
    j["dims"] = nlohmann::ordered_json::array();
    for (const OrderSolution& s : res.orders) j["dims"].push_back(s.span_dim);

    nlohmann::ordered_json orders = nlohmann::ordered_json::array();
    for (const OrderSolution& s : res.orders) {
        nlohmann::ordered_json o;
        o["order"] = s.order;
        o["raw_dim"] = s.raw_dim;
        o["gauged_dim"] = s.gauged_dim;
        o["dim"] = s.span_dim;
        o["gauge_in_span"] = s.gauge_in_span;
        nlohmann::ordered_json comp = nlohmann::ordered_json::array();
        for (const auto& v : s.comp)
            comp.push_back(mat16([&](int i) { return v[i].str(); }));
        o["complement"] = comp;
        o["particular"] = mat16([&](int i) { return poly_str(s.particular[i], res.var_name); });
        nlohmann::ordered_json nl = nlohmann::ordered_json::array();
        for (const Poly& p : s.nonlinear) nl.push_back(poly_str(p, res.var_name));
        o["nonlinear"] = nl;
        nlohmann::ordered_json pid = nlohmann::ordered_json::array();
        for (int id : s.param_ids) pid.push_back(res.var_name.at(id));
        o["params"] = pid;
        orders.push_back(o);
    }
    j["orders"] = orders;

    nlohmann::ordered_json la = nlohmann::ordered_json::array();
    for (const Poly& p : res.lookahead) la.push_back(poly_str(p, res.var_name));
    j["lookahead"] = la;
    return j;
}

}  // namespace ybx
