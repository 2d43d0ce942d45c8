#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace qcopula {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kDefaultRankTol = 1e-10;

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues are ascending; each
/// eigenvector column has its first non-negligible component real positive.
struct HermitianSpectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;

  double min() const { return eigenvalues(0); }
  double max() const { return eigenvalues(eigenvalues.size() - 1); }
};

// Largest entry magnitude; all relative tolerances in this library scale by it.
double max_abs(const CMatrix& a);
// Maximum absolute row sum.
double inf_norm(const CMatrix& a);

bool all_finite(const CMatrix& a);
void require_finite(const CMatrix& a, const char* what);
void require_square(const CMatrix& a, const char* what);

bool is_hermitian(const CMatrix& a, double rel_tol = 1e-10);
CMatrix hermitian_part(const CMatrix& a);

CMatrix identity(Eigen::Index n);
// E_ij: a single unit entry at (i, j), zero-based.
CMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j);

HermitianSpectrum eig_hermitian(const CMatrix& a);

// V f(diag(lambda)) V* for a Hermitian input.
CMatrix spectral_apply(const HermitianSpectrum& spec, const std::function<double(double)>& f);

/// Canonical factor psi with psi* psi = a: the Hermitian square root.
/// Throws NotPositiveDefinite when min eig <= 1e-12 * max eig.
CMatrix cholesky_like_factor(const CMatrix& a);

/// Alternative factor: the upper-triangular R = L* from a = L L*, so that
/// R* R = a. Same preconditions as cholesky_like_factor.
CMatrix cholesky_factor(const CMatrix& a);

/// Moore-Penrose pseudo-inverse of a Hermitian PSD matrix; eigenvalues at or
/// below rank_tol * lambda_max are treated as kernel.
CMatrix inv_psd(const CMatrix& a, double rank_tol = kDefaultRankTol);

/// (A (x) B)[(i p + k), (j q + l)] = A[i, j] B[k, l] for b of shape p x q.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Hilbert-Schmidt product Tr(x* y).
Complex frobenius_inner(const CMatrix& x, const CMatrix& y);

// Ratio of extreme singular values; +inf for singular input.
double condition_number(const CMatrix& a);

}  // namespace qcopula
