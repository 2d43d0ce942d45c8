#include "qcopula/sinkhorn.hpp"

#include <cmath>
#include <sstream>

#include "qcopula/error.hpp"

namespace qcopula {

namespace {

bool close(double x, double y, double tol) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(y)); }

}  // namespace

double doubly_stochastic_defect(const RMatrix& s) {
  const double rows = (s.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double cols = (s.colwise().sum().array() - 1.0).abs().maxCoeff();
  return std::max(rows, cols);
}

ScalingPair sinkhorn_scale(const RMatrix& a, double tol, int max_iter, const std::optional<RVector>& init_d2) {
  if (a.rows() != a.cols() || a.rows() == 0) throw Error(ErrorCode::ShapeMismatch, "Sinkhorn needs a square matrix");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "Sinkhorn tolerance must be positive");
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const double v = a.data()[k];
    if (!std::isfinite(v) || !(v > 0.0)) {
      std::ostringstream os;
      os << "entry " << k << " is " << v << "; every entry must be strictly positive";
      throw Error(ErrorCode::NonPositiveEntry, os.str());
    }
  }
  const Eigen::Index n = a.rows();

  RVector d2 = init_d2.value_or(RVector::Ones(n));
  if (d2.size() != n || !(d2.minCoeff() > 0.0))
    throw Error(ErrorCode::InvalidArgument, "initial column scaling must be positive and of length n");
  RVector d1(n);

  ScalingPair out;
  for (int it = 1; it <= max_iter; ++it) {
    d1 = (a * d2).cwiseInverse();
    d2 = (a.transpose() * d1).cwiseInverse();
    const RMatrix s = d1.asDiagonal() * a * d2.asDiagonal();
    if (doubly_stochastic_defect(s) <= tol) {
      out.iterations = it;
      const double c = d1(0);
      out.d1 = d1 / c;
      out.d2 = d2 * c;
      out.scaled = out.d1.asDiagonal() * a * out.d2.asDiagonal();
      return out;
    }
  }
  std::ostringstream os;
  os << "Sinkhorn scaling did not reach tolerance " << tol << " in " << max_iter << " iterations";
  throw Error(ErrorCode::NotConverged, os.str());
}

std::optional<double> scaling_constant(const ScalingPair& p1, const ScalingPair& p2, double tol) {
  if (p1.d1.size() != p2.d1.size() || p1.d2.size() != p2.d2.size() || p1.d1.size() == 0) return std::nullopt;
  const double c = p2.d1(0) / p1.d1(0);
  if (!(c > 0.0)) return std::nullopt;
  for (Eigen::Index i = 0; i < p1.d1.size(); ++i)
    if (!close(p2.d1(i), c * p1.d1(i), tol)) return std::nullopt;
  for (Eigen::Index i = 0; i < p1.d2.size(); ++i)
    if (!close(p2.d2(i), p1.d2(i) / c, tol)) return std::nullopt;
  return c;
}

bool verify_uniqueness(const RMatrix& a, const ScalingPair& p1, const ScalingPair& p2, double tol) {
  for (const ScalingPair* p : {&p1, &p2}) {
    if (p->d1.size() != a.rows() || p->d2.size() != a.cols()) return false;
    const RMatrix s = p->d1.asDiagonal() * a * p->d2.asDiagonal();
    // A pair that does not scale `a` to a doubly stochastic matrix is not a solution for `a`.
    if (doubly_stochastic_defect(s) > 1e-9) return false;
  }
  return scaling_constant(p1, p2, tol).has_value();
}

}  // namespace qcopula
