#pragma once

#include <vector>

#include "latfusion/numeric.hpp"

namespace latfusion {

// Dense row-major matrices. Mat (rational) is used for bases and Gram
// matrices; IMat (integer) for Hermite/Smith normal form work.
using Mat = std::vector<Vec>;
using IMat = std::vector<std::vector<Int>>;

Mat mat_identity(size_t n);
Mat mat_transpose(const Mat& a);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_scale(const Rat& c, const Mat& a);
Vec row_times_mat(const Vec& x, const Mat& a);

// Determinant by exact Gaussian elimination; square input.
Rat mat_det(const Mat& a);

// Inverse of a square nonsingular matrix; throws std::invalid_argument if
// singular.
Mat mat_inverse(const Mat& a);

// Rank over Q.
size_t mat_rank(Mat a);

// Solve x·A = b exactly (row vector times matrix). Returns empty optional if
// inconsistent. A may be rectangular; when the solution is not unique the
// one produced by elimination with free variables 0 is returned.
bool solve_left(const Mat& a, const Vec& b, Vec& x_out);

// Row-style Hermite normal form of the lattice generated by the rows of A:
// returns a full-row-rank echelon basis (pivot columns strictly increasing,
// pivots positive, entries below a pivot reduced into [0, pivot)).
IMat hnf_row_basis(IMat a);

// Smith normal form with column transform tracked: computes diagonal
// invariant factors d1 | d2 | ... of the square nonsingular A together with
// unimodular Q, Qinv such that the row-space reduction w = y·Q,
// w_i mod d_i, y' = w·Qinv canonicalizes y modulo the row lattice of A.
struct Snf {
    std::vector<Int> diag;
    IMat q;
    IMat qinv;
};
Snf smith_normal_form(IMat a);

IMat imat_mul(const IMat& a, const IMat& b);

// Basis (full row rank) of the lattice spanned over Z by the given rational
// rows: clears denominators, runs hnf_row_basis, scales back.
Mat rational_row_basis(const Mat& rows);

}  // namespace latfusion
