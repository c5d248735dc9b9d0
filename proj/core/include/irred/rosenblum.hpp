#pragma once

#include "irred/linalg.hpp"

namespace irred {

/// AX - XB = C with A (m x m), B (k x k), C (m x k).
struct SylvesterProblem {
    CMatrix a;
    CMatrix b;
    Matrix c;
    /// min |alpha - beta| over alpha in sigma(A), beta in sigma(B).
    double spectral_gap;
};

/// Validates shapes and computes the spectral gap. Throws ShapeMismatch.
SylvesterProblem make_sylvester_problem(CMatrix a, CMatrix b, Matrix c);

double spectral_gap(const CMatrix& a, const CMatrix& b);

/// 1e-8 * (1 + ||A|| + ||B||); below this gap uniqueness is not numerically meaningful.
double gap_floor(const CMatrix& a, const CMatrix& b);

/// The Rosenblum operator X -> AX - XB. Throws ShapeMismatch.
Matrix rosenblum_apply(const CMatrix& a, const CMatrix& b, const Matrix& x);

/// Matrix of the Rosenblum operator on column-major vec(X): I_k (x) A - B^T (x) I_m.
Matrix rosenblum_matrix(const CMatrix& a, const CMatrix& b);

/// Unique solution of AX - XB = C by Bartels-Stewart on complex Schur forms.
/// Throws SpectraOverlap when the gap is at or below gap_floor.
Matrix sylvester_solve(const SylvesterProblem& p, double tol = kDefaultTol);

/// Same contract, solved as the (mk) x (mk) linear system on vec(X).
Matrix sylvester_solve_dense(const SylvesterProblem& p, double tol = kDefaultTol);

/// ||AX - XB - C||.
double sylvester_residual(const SylvesterProblem& p, const Matrix& x);

/// tol * (||A|| + ||B||) * ||X|| + tol * ||C||.
double sylvester_residual_bound(const SylvesterProblem& p, const Matrix& x, double tol);

/// dim {X : AX = XB}.
int rosenblum_kernel_dim(const CMatrix& a, const CMatrix& b, double tol = kDefaultTol);

} // namespace irred
