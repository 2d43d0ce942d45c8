#pragma once

#include <optional>

#include "qcopula/matcore.hpp"

namespace qcopula {

/// Result of classical Sinkhorn scaling: scaled = diag(d1) A diag(d2) is doubly
/// stochastic, with the gauge d1[0] = 1.
struct ScalingPair {
  RVector d1;
  RVector d2;
  RMatrix scaled;
  int iterations = 0;
};

/// Alternating row-then-column normalization of a strictly positive square
/// matrix until every row and column sum is within tol of 1. `init_d2` seeds
/// the column scaling (defaults to ones).
/// Throws NonPositiveEntry, ShapeMismatch or NotConverged.
ScalingPair sinkhorn_scale(const RMatrix& a, double tol = 1e-12, int max_iter = 10000,
                           const std::optional<RVector>& init_d2 = std::nullopt);

/// Largest deviation of a row or column sum from 1.
double doubly_stochastic_defect(const RMatrix& s);

/// The constant c > 0 with p2.d1 = c p1.d1 and p2.d2 = p1.d2 / c (relative
/// tolerance tol, c taken from the first components), if it exists.
std::optional<double> scaling_constant(const ScalingPair& p1, const ScalingPair& p2, double tol);

bool verify_uniqueness(const RMatrix& a, const ScalingPair& p1, const ScalingPair& p2, double tol);

}  // namespace qcopula
