#pragma once

#include <random>

#include "qcopula/qcopula.hpp"

namespace testing_support {

using namespace qcopula;

inline CMatrix random_hermitian(int n, Rng& rng) {
  const CMatrix g = ginibre(n, n, rng);
  return (g + g.adjoint()) / 2.0;
}

inline CMatrix random_pd(int n, Rng& rng) {
  const CMatrix g = ginibre(n, n, rng);
  return g * g.adjoint() + 0.1 * identity(n);
}

inline double rel_err(const CMatrix& a, const CMatrix& b) {
  const double scale = std::max(b.norm(), 1e-300);
  return (a - b).norm() / scale;
}

inline CMatrix bell_matrix() {
  CMatrix v = CMatrix::Zero(4, 1);
  v(0, 0) = v(3, 0) = 1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

inline DensityMatrix bell_state() { return DensityMatrix(bell_matrix(), 2, 2); }

inline CMatrix diag(std::initializer_list<double> d) {
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) {
    out(i, i) = x;
    ++i;
  }
  return out;
}

}  // namespace testing_support
