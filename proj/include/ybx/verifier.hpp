#pragma once
// Residual evaluation for the algebraic relations: the Yang-Baxter equation
// (constant, spectral, formal), braiding unitarity, regularity, the
// fundamental commutation relation, the hexagon operator and the modified
// Yang-Baxter factor.

#include <functional>
#include <string>
#include <vector>

#include "ybx/catalog.hpp"
#include "ybx/linsys.hpp"
#include "ybx/mat.hpp"

#include "json.hpp"

namespace ybx {

struct SamplePlan {
    uint64_t seed = 1;
    int count = 20;
    double tol = 1e-9;
};

struct ResidualReport {
    std::string relation;
    std::vector<double> residuals;
    double max_residual = 0.0;
    double tol = 1e-9;
    uint64_t seed = 0;
    bool pass = true;

    void add(double r) {
        residuals.push_back(r);
        max_residual = std::max(max_residual, r);
        pass = max_residual <= tol;
    }
    nlohmann::ordered_json to_json() const;
};

struct ScalarFit {
    C64 c{};
    double deviation = 0.0;
};

using LEval = std::function<Mat<C64>(C64)>;

// Fit A ~ c * target using the largest-magnitude entry of target as pivot.
ScalarFit fit_scalar_multiple(const Mat<C64>& a, const Mat<C64>& target);

double ybe_residual(const REval& r, C64 u, C64 v, C64 w);
double constant_ybe_residual(const Mat<C64>& r);
bool constant_ybe_exact(const Mat<GRat>& r);

// Identity check in the formal variables x1 = e^{u-v}, x2 = e^{v-w}.
bool ybe_formal_identity(const Record& rec, const std::map<std::string, GRat>& params);

ScalarFit braiding_check(const REval& r, C64 u, C64 v);
ScalarFit regularity_check(const REval& r, C64 u);

double fcr_residual(const Mat<C64>& rcand, const LEval& lax, C64 u, C64 v);

Mat<C64> hexagon_operator(const REval& r, C64 u, C64 v, C64 w);

struct ModifiedYbe {
    Mat<C64> m;                 // multiplicative factor, or additive difference
    bool multiplicative = true; // false: RHS was singular, m = LHS - RHS
    bool scalar_like = false;   // m within 1e-9 of c * Id
    C64 scalar{};
    double scalar_deviation = 0.0;
};
ModifiedYbe modified_ybe_factor(const REval& r, C64 u, C64 v, C64 w);

REval similarity_transform(const REval& r, const Mat<C64>& q2);

// Multiplicative cocycle test: f(u,w) = f(u,v) * f(v,w) at sampled triples.
double cocycle_residual(const ExprPtr& f, C64 u, C64 v, C64 w);

// Sample helpers shared by CLI and tests.
C64 draw_spectral_point(Draw& d);
void draw_spectral_pair(Draw& d, C64& u, C64& v);    // keeps |u-v| >= 0.05
void draw_spectral_triple(Draw& d, C64& u, C64& v, C64& w);

Eigen::MatrixXcd to_eigen(const Mat<C64>& m);
Mat<C64> from_eigen(const Eigen::MatrixXcd& m);

}  // namespace ybx
