#pragma once
// Exact reduced-row-echelon / nullspace over Gaussian rationals, and an
// SVD-thresholded nullspace for the floating backend.

#include <Eigen/Dense>
#include <vector>

#include "ybx/grat.hpp"

namespace ybx {

using RowsQ = std::vector<std::vector<GRat>>;

struct RrefQ {
    RowsQ rows;              // reduced nonzero rows
    std::vector<int> piv;    // pivot column per row
};

inline RrefQ rref_exact(RowsQ rows, int ncols) {
    RrefQ out;
    int r = 0;
    int nrows = static_cast<int>(rows.size());
    for (int c = 0; c < ncols && r < nrows; ++c) {
        int sel = -1;
        for (int i = r; i < nrows; ++i)
            if (!rows[i][c].is_zero()) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(rows[r], rows[sel]);
        GRat inv = rows[r][c].inv();
        for (int j = c; j < ncols; ++j) rows[r][j] *= inv;
        for (int i = 0; i < nrows; ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            GRat f = rows[i][c];
            for (int j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        out.piv.push_back(c);
        ++r;
    }
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

// Homogeneous nullspace basis of A x = 0 given rows of A.
inline RowsQ nullspace_exact(const RowsQ& arows, int ncols) {
    RrefQ rr = rref_exact(arows, ncols);
    std::vector<bool> ispiv(ncols, false);
    for (int c : rr.piv) ispiv[c] = true;
    RowsQ basis;
    for (int c = 0; c < ncols; ++c) {
        if (ispiv[c]) continue;
        std::vector<GRat> v(ncols);
        v[c] = GRat(1);
        for (size_t r = 0; r < rr.rows.size(); ++r) v[rr.piv[r]] = -rr.rows[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline int rank_exact(const RowsQ& rows, int ncols) {
    return static_cast<int>(rref_exact(rows, ncols).piv.size());
}

struct SvdNullspace {
    Eigen::MatrixXcd basis;          // columns span the nullspace
    Eigen::VectorXd singular_values; // descending
    int dim = 0;
    bool zero_map = false;           // the whole map vanished
};

// Nullspace with relative threshold tau * sigma_max; a vanishing map
// (sigma_max ~ 0) means every vector is in the kernel.
inline SvdNullspace svd_nullspace(const Eigen::MatrixXcd& a, double tau = 1e-10) {
    SvdNullspace out;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    out.singular_values = svd.singularValues();
    int ncols = static_cast<int>(a.cols());
    int nsv = static_cast<int>(out.singular_values.size());
    double smax = nsv ? out.singular_values(0) : 0.0;
    if (smax <= 1e-13) {
        out.zero_map = true;
        out.dim = ncols;
        out.basis = Eigen::MatrixXcd::Identity(ncols, ncols);
        return out;
    }
    int rank = 0;
    for (int i = 0; i < nsv; ++i)
        if (out.singular_values(i) > tau * smax) ++rank;
    out.dim = ncols - rank;
    out.basis = svd.matrixV().rightCols(out.dim);
    return out;
}

}  // namespace ybx
