#include "qcopula/matcore.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qcopula/error.hpp"

namespace qcopula {

double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double inf_norm(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().rowwise().sum().maxCoeff();
}

bool all_finite(const CMatrix& a) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const Complex z = a.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void require_finite(const CMatrix& a, const char* what) {
  if (!all_finite(a)) throw Error(ErrorCode::NonFinite, std::string(what) + " has NaN/Inf entries");
}

void require_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream os;
    os << what << " must be square and non-empty, got " << a.rows() << "x" << a.cols();
    throw Error(ErrorCode::ShapeMismatch, os.str());
  }
}

bool is_hermitian(const CMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const CMatrix diff = a - a.adjoint();
  return inf_norm(diff) <= rel_tol * std::max(inf_norm(a), std::numeric_limits<double>::min());
}

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

CMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

HermitianSpectrum eig_hermitian(const CMatrix& a) {
  require_square(a, "eig_hermitian input");
  require_finite(a, "eig_hermitian input");
  if (!is_hermitian(a, 1e-10)) throw Error(ErrorCode::NotHermitian, "eig_hermitian input is not Hermitian");

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a));
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NonFinite, "eigen solver failed");

  HermitianSpectrum out{solver.eigenvalues(), solver.eigenvectors()};
  // Phase convention: first non-negligible component real positive.
  for (Eigen::Index c = 0; c < out.eigenvectors.cols(); ++c) {
    auto col = out.eigenvectors.col(c);
    for (Eigen::Index r = 0; r < col.size(); ++r) {
      const double mag = std::abs(col(r));
      if (mag > 1e-10) {
        col *= std::conj(col(r)) / mag;
        col(r) = Complex(col(r).real(), 0.0);
        break;
      }
    }
  }
  return out;
}

CMatrix spectral_apply(const HermitianSpectrum& spec, const std::function<double(double)>& f) {
  RVector mapped(spec.eigenvalues.size());
  for (Eigen::Index k = 0; k < mapped.size(); ++k) mapped(k) = f(spec.eigenvalues(k));
  const CMatrix& v = spec.eigenvectors;
  return v * mapped.cast<Complex>().asDiagonal() * v.adjoint();
}

namespace {

HermitianSpectrum require_pd(const CMatrix& a, const char* what) {
  HermitianSpectrum spec = eig_hermitian(a);
  if (!(spec.max() > 0.0) || spec.min() <= 1e-12 * spec.max()) {
    std::ostringstream os;
    os << what << " is not positive definite (min eigenvalue " << spec.min() << ", max " << spec.max() << ")";
    throw Error(ErrorCode::NotPositiveDefinite, os.str());
  }
  return spec;
}

}  // namespace

CMatrix cholesky_like_factor(const CMatrix& a) {
  const HermitianSpectrum spec = require_pd(a, "factor input");
  return hermitian_part(spectral_apply(spec, [](double x) { return std::sqrt(x); }));
}

CMatrix cholesky_factor(const CMatrix& a) {
  require_pd(a, "factor input");
  Eigen::LLT<CMatrix> llt(hermitian_part(a));
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "Cholesky factorization failed");
  return llt.matrixU();
}

CMatrix inv_psd(const CMatrix& a, double rank_tol) {
  const HermitianSpectrum spec = eig_hermitian(a);
  const double cutoff = rank_tol * std::max(spec.max(), 0.0);
  return hermitian_part(spectral_apply(spec, [cutoff](double x) { return x > cutoff ? 1.0 / x : 0.0; }));
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index p = b.rows();
  const Eigen::Index q = b.cols();
  CMatrix out(a.rows() * p, a.cols() * q);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * p, j * q, p, q) = a(i, j) * b;
  return out;
}

Complex frobenius_inner(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw Error(ErrorCode::ShapeMismatch, "frobenius_inner operands differ in shape");
  // Tr(x* y) = sum_ij conj(x_ij) y_ij
  return x.conjugate().cwiseProduct(y).sum();
}

double condition_number(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return std::numeric_limits<double>::infinity();
  const double smin = s(s.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

}  // namespace qcopula
