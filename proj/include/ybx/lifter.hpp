#pragma once
// Order-by-order lifting of a constant solution to a spectral one: expand
// R(u,v) = sum_m (u-v)^m R^(m), solve the resulting exact linear systems per
// order, track the normalization gauge, branch on quadratic constraints, and
// match the resulting series spaces against catalog families.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ybx/catalog.hpp"
#include "ybx/poly.hpp"

#include "json.hpp"

namespace ybx {

struct LiftJob {
    std::string seed_id;
    std::map<std::string, GRat> branch;  // parameter values for the seed
    int order = 4;
};

struct OrderSolution {
    int order = 0;
    int raw_dim = 0;            // homogeneous nullspace dimension
    int gauged_dim = 0;         // after removing the R^(0) rescaling direction
    int span_dim = 0;           // span of attainable coefficient matrices
    bool gauge_in_span = false; // R^(0) direction lies in the homogeneous space
    std::vector<std::vector<GRat>> comp;  // complement basis (16-vectors)
    std::vector<Poly> particular;         // 16 entries, in lower-order parameters
    std::vector<Poly> nonlinear;          // constraints among lower-order parameters
    std::vector<int> param_ids;           // variable ids of this order's parameters
};

struct LiftResult {
    Mat<GRat> r0;
    std::vector<GRat> v0;                // vec(R^(0))
    std::vector<OrderSolution> orders;
    std::vector<Poly> lookahead;         // order-(N+1) rows free of new unknowns
    std::map<int, std::string> var_name; // parameter id -> display name
    int next_var = 0;
};

LiftResult lift(const Record& seed, const std::map<std::string, GRat>& branch, int order);

struct BranchChild {
    std::vector<int> zero_vars;      // parameters forced to zero
    std::vector<int> kept_vars;      // remaining order-wise parameters
};

// Children = complements of the minimal hitting sets of the constraint
// monomial supports. unresolved is set when a constraint cannot be resolved
// by zeroing parameters (constant term, or enumeration capped).
std::vector<BranchChild> branch_on_nonlinear(const LiftResult& res, bool& unresolved);

// Do two children's order-1 kept spaces map to each other under transposition?
bool transpose_related(const LiftResult& res, const BranchChild& a, const BranchChild& b);

struct MatchReport {
    std::string candidate;
    bool matched = false;
    std::vector<bool> per_order;  // containment verdict, orders 0..N
};

// Expand the candidate (free functions as unknown Taylor series in u-v) and
// test per-order containment of its coefficients in the lifted spaces.
// preset pins parameters (e.g. a branch child's zero set) before solving.
MatchReport match_family(const LiftResult& res, const Record& candidate,
                         const std::map<int, GRat>& preset = {});

nlohmann::ordered_json lift_ledger_json(const Record& seed, const LiftJob& job,
                                        const LiftResult& res);

}  // namespace ybx
