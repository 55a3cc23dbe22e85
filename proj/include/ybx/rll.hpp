#pragma once
// Lax operators, the solution space of the fundamental commutation relation,
// transfer matrices, conserved charges and Hamiltonian densities.

#include <string>
#include <vector>

#include "ybx/catalog.hpp"
#include "ybx/verifier.hpp"

#include "json.hpp"

namespace ybx {

struct LaxOperator {
    const Record* source = nullptr;
    Assignment asg;
    LEval eval;  // u -> 4x4, ordered (auxiliary) x (quantum)
    bool regular = false;
    C64 reg_scalar{};
    double reg_deviation = 0.0;
};

// L(u) = R(u, 0) for the given record and bindings.
LaxOperator lax_from_solution(const Record& rec, const Assignment& asg, double tol = 1e-9);

struct FcrTemplateMatch {
    std::string id;
    double residual = 0.0;
};

struct FcrSpace {
    C64 u{}, v{};
    int dim = 0;
    bool zero_map = false;             // the commutation map vanished identically
    std::vector<Mat<C64>> basis;
    Eigen::VectorXd singular_values;
    std::vector<FcrTemplateMatch> template_matches;
};

FcrSpace solve_fcr_space(const LaxOperator& lax, C64 u, C64 v, double tau = 1e-10);

// Relative distance of X from the span of the space's basis.
double fcr_membership(const FcrSpace& space, const Mat<C64>& x);

// Instantiate every solution-space template whose declared Lax source matches,
// reusing the source bindings for shared function slots, and record residuals.
void match_templates(const Catalog& cat, const LaxOperator& lax, FcrSpace& space, Draw& d);

// Braiding-conjugate inverse (P R(v,u) P)^{-1}.
REval rhat(const REval& r);

// Trace over the auxiliary space of L_{aN}(u) ... L_{a1}(u); 2 <= sites <= 8.
Mat<C64> transfer_matrix(const LEval& lax, int sites, C64 u);

struct ChargeSet {
    int sites = 0;
    int orders = 0;
    std::vector<Mat<C64>> qtilde;               // coefficients of t(u)
    bool log_defined = false;                   // t(0) invertible
    std::vector<Mat<C64>> q;                    // q[n] = Q_{n+2}, from the series log
    std::vector<std::vector<double>> qtilde_comm;
    std::vector<std::vector<double>> q_comm;
};

ChargeSet charges(const Record& rec, const Assignment& asg, int sites, int orders);

// Two-site density P L'(0) (normalized by the regularity scalar), and its
// periodic sum over the chain.
Mat<C64> hamiltonian_density(const Record& rec, const Assignment& asg);
Mat<C64> hamiltonian_periodic(const Mat<C64>& density, int sites);

double comm_norm(const Mat<C64>& a, const Mat<C64>& b);

nlohmann::ordered_json fcr_space_json(const FcrSpace& space);
nlohmann::ordered_json charges_json(const ChargeSet& cs);

}  // namespace ybx
