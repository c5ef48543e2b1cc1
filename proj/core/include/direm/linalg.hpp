#pragma once

#include <utility>

#include "direm/types.hpp"

namespace direm {

// ---------------------------------------------------------------------------
// Basic dense helpers
// ---------------------------------------------------------------------------

Vector row_sums(const DenseMatrix& m);
DenseMatrix transpose(const DenseMatrix& m);
Vector matvec(const DenseMatrix& m, const Vector& v);

/// (n x n) * (n x d) product, streamed row by row.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

double max_abs(const DenseMatrix& m);
double frobenius_norm(const DenseMatrix& m);

/// Connected components of the positivity pattern of a nonnegative square
/// matrix, treating edges as undirected. Returns component sizes, largest
/// first is not guaranteed; order follows discovery.
std::vector<index_t> component_sizes(const DenseMatrix& m);

// ---------------------------------------------------------------------------
// Spec operations
// ---------------------------------------------------------------------------

/// Eigenvalues and eigenvectors of a symmetric matrix: the k algebraically
/// largest eigenvalues, orthonormal eigenvectors, decreasing order, and the
/// sign convention of EigenPairs.
///
/// Cyclic Jacobi for n <= 512. Above that, Householder tridiagonalization
/// followed by implicit-shift QL; when k is small relative to n the QL pass
/// computes eigenvalues only and the selected eigenvectors come from
/// tridiagonal inverse iteration with cluster reorthogonalization, then are
/// back-transformed.
///
/// Throws SymmetryViolation if M is not symmetric within 1e-10 * max|M|,
/// ConvergenceFailure if the iteration budget is exhausted.
EigenPairs sym_eigs(const DenseMatrix& m, index_t k);

/// Row-stochastic normalization. Returns (H, degrees) with H = diag(deg)^-1 M.
/// Throws DegenerateDegree on a zero or negative row sum.
std::pair<DenseMatrix, Vector> row_normalize(const DenseMatrix& m);

/// diag(d)^power * M * diag(d)^power. Throws DegenerateDegree when some
/// d_i <= 0. The powers -1, -0.5, 0, 0.5, 1 are computed without std::pow.
DenseMatrix diag_sandwich(const DenseMatrix& m, const Vector& d, double power);

/// Stationary left eigenvector of row_normalize(V) for symmetric nonnegative
/// irreducible V, by the closed form pi_i ∝ sum_j V_ij, normalized to sum 1.
/// Throws SymmetryViolation, Disconnected.
Vector stationary_left(const DenseMatrix& v);

namespace detail {

/// Scale factor d_i^power with exact special cases for the common powers.
double scale_power(double d, double power);

/// In-place Householder tridiagonalization of the lower triangle of a. On
/// return diag/sub hold the tridiagonal form and the reflector vectors remain
/// in the rows of a (strictly lower part), with the factor for reflector i in
/// hfac[i]; hfac[i] == 0 marks a skipped (zero) reflection.
void tridiagonalize(DenseMatrix& a, Vector& diag, Vector& sub, Vector& hfac);

/// All eigenvalues of a symmetric tridiagonal matrix (diag, sub) by the
/// implicit-shift QL iteration; sub[i] couples rows i and i+1 and is
/// destroyed. Unsorted on return.
void ql_eigenvalues(Vector& diag, Vector& sub);

/// QL iteration that also rotates the columns of z (initialized by the caller,
/// typically to the accumulated Householder Q). Eigenvalue j on return pairs
/// with column j of z.
void ql_eigenvectors(Vector& diag, Vector& sub, DenseMatrix& z);

/// Explicit accumulation of the Householder Q stored by tridiagonalize.
DenseMatrix accumulate_q(const DenseMatrix& a, const Vector& hfac);

/// Applies the accumulated Householder Q to the columns of x in place
/// (x <- Q x), used to back-transform selected tridiagonal eigenvectors.
void apply_q(const DenseMatrix& a, const Vector& hfac, DenseMatrix& x);

/// Selected eigenvectors of the tridiagonal (diag, sub) by inverse iteration,
/// one per entry of lambdas, orthogonalized within clusters of close
/// eigenvalues. lambdas must be sorted decreasingly.
DenseMatrix tridiagonal_vectors(const Vector& diag, const Vector& sub,
                                const Vector& lambdas);

/// Cyclic Jacobi eigendecomposition; returns all n pairs sorted decreasingly,
/// before the sign convention is applied.
void jacobi(DenseMatrix a, Vector& values, DenseMatrix& vectors);

/// Sorts pairs decreasingly by value (stable) and enforces the sign rule.
void finalize_pairs(EigenPairs& p);

}  // namespace detail
}  // namespace direm
