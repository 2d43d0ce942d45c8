#include "qcopula/choi.hpp"

#include <cassert>
#include <sstream>

#include "qcopula/error.hpp"

namespace qcopula {

namespace {

void require_shape(const CMatrix& x, int rows, int cols, const char* what) {
  if (x.rows() != rows || x.cols() != cols) {
    std::ostringstream os;
    os << what << " must be " << rows << "x" << cols << ", got " << x.rows() << "x" << x.cols();
    throw Error(ErrorCode::ShapeMismatch, os.str());
  }
}

}  // namespace

ChoiOperator::ChoiOperator(CMatrix choi, int dim_in, int dim_out)
    : choi_(std::move(choi)), dim_in_(dim_in), dim_out_(dim_out) {
  if (dim_in < 1 || dim_out < 1) throw Error(ErrorCode::InvalidArgument, "Choi dims must be positive");
  require_shape(choi_, dim_in * dim_out, dim_in * dim_out, "Choi matrix");
  require_finite(choi_, "Choi matrix");
  hermitian_ = is_hermitian(choi_, 1e-10);
}

CMatrix ChoiOperator::block(int i, int j) const {
  return choi_.block(static_cast<Eigen::Index>(i) * dim_out_, static_cast<Eigen::Index>(j) * dim_out_, dim_out_,
                     dim_out_);
}

ChoiOperator choi_from_state(const DensityMatrix& rho) {
  return ChoiOperator(rho.matrix(), rho.dim_a(), rho.dim_b());
}

ChoiOperator choi_from_map(const LinearMap& f, int dim_in, int dim_out) {
  CMatrix choi(dim_in * dim_out, dim_in * dim_out);
  for (int i = 0; i < dim_in; ++i) {
    for (int j = 0; j < dim_in; ++j) {
      const CMatrix out = f(matrix_unit(dim_in, i, j));
      require_shape(out, dim_out, dim_out, "map output");
      choi.block(i * dim_out, j * dim_out, dim_out, dim_out) = out;
    }
  }
  return ChoiOperator(std::move(choi), dim_in, dim_out);
}

CMatrix apply_map(const ChoiOperator& phi, const CMatrix& x) {
  const int n = phi.dim_in();
  const int m = phi.dim_out();
  require_shape(x, n, n, "apply input");
  const CMatrix& c = phi.matrix();
  CMatrix out = CMatrix::Zero(m, m);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out += x(i, j) * c.block(i * m, j * m, m, m);
#ifndef NDEBUG
  if (max_abs(x) > 0.0) {
    const double scale = max_abs(x) * std::max(max_abs(c), 1.0) * n * n;
    assert(max_abs(out - apply_partial_trace_form(phi, x)) <= 1e-13 * scale);
  }
#endif
  return out;
}

CMatrix apply_partial_trace_form(const ChoiOperator& phi, const CMatrix& x) {
  const int n = phi.dim_in();
  const int m = phi.dim_out();
  require_shape(x, n, n, "apply input");
  const CMatrix lifted = kron(x.transpose(), identity(m)) * phi.matrix();
  return partial_trace_first(lifted, n, m);
}

CMatrix apply_adjoint(const ChoiOperator& phi, const CMatrix& y) {
  const int n = phi.dim_in();
  const int m = phi.dim_out();
  require_shape(y, m, m, "apply_adjoint input");
  const CMatrix& c = phi.matrix();
  CMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = frobenius_inner(c.block(i * m, j * m, m, m), y);
  return out;
}

ChoiOperator adjoint_operator(const ChoiOperator& phi) {
  return choi_from_map([&phi](const CMatrix& y) { return apply_adjoint(phi, y); }, phi.dim_out(), phi.dim_in());
}

ChoiOperator left_multiply_output(const ChoiOperator& phi, const CMatrix& b) {
  require_shape(b, phi.dim_out(), phi.dim_out(), "output-side multiplier");
  return ChoiOperator(kron(identity(phi.dim_in()), b) * phi.matrix(), phi.dim_in(), phi.dim_out());
}

ChoiOperator right_multiply_output(const ChoiOperator& phi, const CMatrix& b) {
  require_shape(b, phi.dim_out(), phi.dim_out(), "output-side multiplier");
  return ChoiOperator(phi.matrix() * kron(identity(phi.dim_in()), b), phi.dim_in(), phi.dim_out());
}

ChoiOperator left_multiply_input(const ChoiOperator& phi, const CMatrix& a) {
  require_shape(a, phi.dim_in(), phi.dim_in(), "input-side multiplier");
  return ChoiOperator(kron(a.transpose(), identity(phi.dim_out())) * phi.matrix(), phi.dim_in(), phi.dim_out());
}

ChoiOperator right_multiply_input(const ChoiOperator& phi, const CMatrix& a) {
  require_shape(a, phi.dim_in(), phi.dim_in(), "input-side multiplier");
  return ChoiOperator(phi.matrix() * kron(a.transpose(), identity(phi.dim_out())), phi.dim_in(), phi.dim_out());
}

ChoiOperator sandwich_transform(const ChoiOperator& phi, const CMatrix& a, const CMatrix& b) {
  require_shape(a, phi.dim_in(), phi.dim_in(), "sandwich input factor");
  require_shape(b, phi.dim_out(), phi.dim_out(), "sandwich output factor");
  const double ca = condition_number(a);
  const double cb = condition_number(b);
  if (!(ca <= kMaxTransformCondition) || !(cb <= kMaxTransformCondition)) {
    std::ostringstream os;
    os << "transform factors are ill-conditioned (cond(a) = " << ca << ", cond(b) = " << cb << ")";
    throw Error(ErrorCode::SingularTransform, os.str());
  }
  const CMatrix w = kron(a.transpose(), b);
  return ChoiOperator(w * phi.matrix() * w.adjoint(), phi.dim_in(), phi.dim_out());
}

bool is_strictly_positive_sample(const ChoiOperator& phi, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "strict-positivity probe needs trials >= 1");
  Rng rng(seed);
  const int n = phi.dim_in();
  for (int t = 0; t < trials; ++t) {
    CMatrix v = ginibre(n, 1, rng);
    v /= v.norm();
    const CMatrix image = hermitian_part(apply_map(phi, v * v.adjoint()));
    const double tr = image.trace().real();
    if (!(tr > 0.0)) return false;
    const RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(image, Eigen::EigenvaluesOnly).eigenvalues();
    if (!(ev(0) > 1e-12 * tr)) return false;
  }
  return true;
}

}  // namespace qcopula
