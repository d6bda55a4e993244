#pragma once

#include "eigsample/matrix.hpp"

#include <cstddef>
#include <vector>

namespace eigsample {

inline constexpr double kDefaultSolverTol = 1e-10;

// Symmetric tridiagonal form: diag has n entries, off has n-1 (off[i] couples
// rows i and i+1).
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;
};

struct SymEigen {
    Spectrum values;
    Matrix vectors;  // column k is the unit eigenvector of values[k]
};

// Householder reduction to tridiagonal form. Orthogonally similar to `a`.
Tridiagonal tridiagonalize(const SymMatrix& a);

// All eigenvalues via Householder tridiagonalization followed by implicit QL
// with Wilkinson-style shifts. `tol` is the relative deflation threshold on the
// tridiagonal off-diagonal (never tighter than machine precision). Throws
// SolverError if an eigenvalue fails to converge within the iteration budget.
Spectrum sym_eigvals(const SymMatrix& a, double tol = kDefaultSolverTol);

// Eigenvalues plus eigenvectors. Same scheme with the transformations
// accumulated; meant for validation, O(n^3) extra work.
SymEigen sym_eig(const SymMatrix& a, double tol = kDefaultSolverTol);

// Number of eigenvalues of `t` strictly less than x (Sturm sequence count).
std::size_t sturm_count(const Tridiagonal& t, double x);

// ||A||_2 = max(|lambda_max|, |lambda_min|), each extreme located by Sturm
// bisection on the tridiagonal form to relative accuracy `tol`. Independent of
// the QL iteration used by sym_eigvals.
double spectral_norm(const SymMatrix& a, double tol = kDefaultSolverTol);

// Singular values of a rectangular matrix, non-increasing, length
// min(rows, cols). Computed from the symmetric embedding [[0, Z], [Z^T, 0]],
// whose eigenvalues are +/- the singular values.
Spectrum singular_values(const Matrix& z, double tol = kDefaultSolverTol);

}  // namespace eigsample
