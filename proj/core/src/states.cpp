#include "qcopula/states.hpp"

#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "qcopula/error.hpp"

namespace qcopula {

namespace {

[[noreturn]] void invalid(const std::string& invariant, const std::string& detail) {
  throw Error(ErrorCode::InvalidState, invariant + " invariant violated: " + detail);
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix mat, int dim_a, int dim_b, double tol) : dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a < 1 || dim_b < 1) {
    std::ostringstream os;
    os << "dimensions must be positive, got (" << dim_a << ", " << dim_b << ")";
    invalid("dims", os.str());
  }
  const Eigen::Index d = static_cast<Eigen::Index>(dim_a) * dim_b;
  if (mat.rows() != d || mat.cols() != d) {
    std::ostringstream os;
    os << "matrix is " << mat.rows() << "x" << mat.cols() << " but dims (" << dim_a << ", " << dim_b << ") need "
       << d << "x" << d;
    invalid("dims", os.str());
  }
  if (!all_finite(mat)) invalid("finite", "matrix has NaN/Inf entries");
  if (!is_hermitian(mat, tol)) invalid("Hermitian", "matrix is not Hermitian");
  mat_ = hermitian_part(mat);

  const double tr = mat_.trace().real();
  if (std::abs(tr - 1.0) > tol) {
    std::ostringstream os;
    os.precision(17);
    os << "trace is " << tr << ", expected 1";
    invalid("trace", os.str());
  }
  const double lmin = eig_hermitian(mat_).min();
  if (lmin < -tol) {
    std::ostringstream os;
    os << "minimum eigenvalue " << lmin << " is negative";
    invalid("PSD", os.str());
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int dim_a, int dim_b) {
  const int d = dim_a * dim_b;
  return DensityMatrix(identity(d) / static_cast<double>(d), dim_a, dim_b);
}

std::string_view to_string(Separability s) noexcept {
  switch (s) {
    case Separability::Separable: return "Separable";
    case Separability::Entangled: return "Entangled";
    case Separability::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

CMatrix partial_trace_first(const CMatrix& rho, int n, int m) {
  CMatrix out = CMatrix::Zero(m, m);
  for (int i = 0; i < n; ++i) out += rho.block(i * m, i * m, m, m);
  return out;
}

CMatrix partial_trace_second(const CMatrix& rho, int n, int m) {
  CMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = rho.block(i * m, j * m, m, m).trace();
  return out;
}

CMatrix partial_transpose_second(const CMatrix& rho, int n, int m) {
  CMatrix out(rho.rows(), rho.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.block(i * m, j * m, m, m) = rho.block(i * m, j * m, m, m).transpose();
  return out;
}

CMatrix partial_trace_first(const DensityMatrix& rho) {
  return partial_trace_first(rho.matrix(), rho.dim_a(), rho.dim_b());
}

CMatrix partial_trace_second(const DensityMatrix& rho) {
  return partial_trace_second(rho.matrix(), rho.dim_a(), rho.dim_b());
}

CMatrix partial_transpose_second(const DensityMatrix& rho) {
  return partial_transpose_second(rho.matrix(), rho.dim_a(), rho.dim_b());
}

double marginal_residual(const DensityMatrix& rho) {
  const int n = rho.dim_a();
  const int m = rho.dim_b();
  const double r1 = (partial_trace_first(rho) - identity(m) / static_cast<double>(m)).norm();
  const double r2 = (partial_trace_second(rho) - identity(n) / static_cast<double>(n)).norm();
  return std::max(r1, r2);
}

bool is_precopula(const DensityMatrix& rho, double tol) { return marginal_residual(rho) <= tol; }

DensityMatrix product_state(const CMatrix& first, const CMatrix& second) {
  return DensityMatrix(kron(first, second), static_cast<int>(first.rows()), static_cast<int>(second.rows()));
}

DensityMatrix product_state(const DensityMatrix& first, const DensityMatrix& second) {
  return product_state(first.matrix(), second.matrix());
}

DensityMatrix local_conjugate(const DensityMatrix& rho, const CMatrix& u, const CMatrix& v) {
  if (u.rows() != rho.dim_a() || v.rows() != rho.dim_b())
    throw Error(ErrorCode::ShapeMismatch, "local_conjugate factor sizes do not match the state dims");
  const CMatrix w = kron(u, v);
  return DensityMatrix(w * rho.matrix() * w.adjoint(), rho.dim_a(), rho.dim_b());
}

CMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix g(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    g.data()[k] = Complex(re, im);
  }
  return g;
}

CMatrix haar_unitary(int n, Rng& rng) {
  const CMatrix z = ginibre(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

CMatrix random_state_matrix(int n, Rng& rng) {
  const CMatrix g = ginibre(n, n, rng);
  const CMatrix w = g * g.adjoint();
  return hermitian_part(w / w.trace().real());
}

DensityMatrix random_full_rank_state(int n, int m, Rng& rng) {
  if (n < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "random_full_rank_state needs n, m >= 1");
  constexpr int kAttempts = 10;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    CMatrix w = random_state_matrix(n * m, rng);
    if (eig_hermitian(w).min() > 1e-12) return DensityMatrix(std::move(w), n, m);
  }
  throw Error(ErrorCode::DegenerateSample, "could not draw a full-rank state in 10 attempts");
}

DensityMatrix random_full_rank_state(int n, int m, std::uint64_t seed) {
  Rng rng(seed);
  return random_full_rank_state(n, m, rng);
}

DensityMatrix random_separable_state(int n, int m, int terms, Rng& rng) {
  if (n < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "random_separable_state needs n, m >= 1");
  if (terms < 1) throw Error(ErrorCode::InvalidArgument, "random_separable_state needs terms >= 1");

  std::exponential_distribution<double> expo(1.0);
  std::vector<double> weights(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (auto& w : weights) total += (w = expo(rng));

  constexpr int kAttempts = 10;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    CMatrix acc = CMatrix::Zero(n * m, n * m);
    for (int t = 0; t < terms; ++t) {
      const CMatrix a = random_state_matrix(n, rng);
      const CMatrix b = random_state_matrix(m, rng);
      acc += (weights[static_cast<std::size_t>(t)] / total) * kron(a, b);
    }
    acc = hermitian_part(acc / acc.trace().real());
    if (eig_hermitian(acc).min() > 1e-12) return DensityMatrix(std::move(acc), n, m);
  }
  throw Error(ErrorCode::DegenerateSample, "could not draw a full-rank separable state in 10 attempts");
}

DensityMatrix random_separable_state(int n, int m, int terms, std::uint64_t seed) {
  Rng rng(seed);
  return random_separable_state(n, m, terms, rng);
}

SeparabilityVerdict ppt_verdict(const DensityMatrix& rho) {
  const double lmin = eig_hermitian(partial_transpose_second(rho)).min();
  const int n = rho.dim_a();
  const int m = rho.dim_b();
  const bool exact = (n == 1 || m == 1) || (n == 2 && m == 2) || (n == 2 && m == 3) || (n == 3 && m == 2);
  if (lmin < -kStateTol) return {Separability::Entangled, lmin};
  return {exact ? Separability::Separable : Separability::Inconclusive, lmin};
}

}  // namespace qcopula
