#pragma once

#include <cstdint>
#include <limits>

#include "qcopula/choi.hpp"
#include "qcopula/matcore.hpp"

namespace qcopula {

/// Extended non-negative real: a finite distance or +infinity (returned
/// exactly when the two arguments have different supports).
class ProjectiveDistance {
 public:
  static ProjectiveDistance finite(double v) { return ProjectiveDistance(v, false); }
  static ProjectiveDistance infinity() { return ProjectiveDistance(0.0, true); }

  bool is_finite() const noexcept { return !infinite_; }
  bool is_infinite() const noexcept { return infinite_; }
  // +inf for the infinite branch.
  double value() const noexcept { return infinite_ ? std::numeric_limits<double>::infinity() : value_; }

 private:
  ProjectiveDistance(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

inline constexpr double kSupportAngleTol = 1e-8;

/// Hilbert projective (Birkhoff) distance on the PSD cone:
///   d_H(A, B) = log(max sigma / min sigma) of B^{-1/2} A B^{-1/2} on the
/// common support, and +inf when supp A != supp B.
///
/// Supports are the eigenspaces above rank_tol * lambda_max; they are deemed
/// equal when the ranks agree and the sine of the largest principal angle
/// between them is below 1e-8. The argument pair is put in a canonical order
/// before computing, so d_H(A, B) and d_H(B, A) are bitwise identical.
ProjectiveDistance hilbert_distance(const CMatrix& a, const CMatrix& b, double rank_tol = kDefaultRankTol);

/// Monte-Carlo lower bound on the projective diameter of Phi. Samples pairs of
/// interior states and of near-boundary states (rank-one projectors mixed with
/// a random state at weights 1e-2, 1e-4, 1e-6). Throws InfiniteDistance if any
/// image pair lands on different supports.
double estimate_diameter(const ChoiOperator& phi, int samples, std::uint64_t seed);

/// Monte-Carlo lower bound on the Birkhoff contraction ratio:
///   max d_H(Phi(r), Phi(r')) / d_H(r, r') over sampled pairs with
///   d_H(r, r') >= 1e-8.
double estimate_contraction(const ChoiOperator& phi, int samples, std::uint64_t seed);

struct ContractionDiagnostic {
  double sampled_ratio;       // lower bound of delta(Phi)
  double diameter_estimate;   // lower bound of Delta(Phi)
  double birkhoff_hopf_bound; // tanh(diameter_estimate / 4)
};

ContractionDiagnostic contraction_diagnostic(const ChoiOperator& phi, int samples, std::uint64_t seed);

}  // namespace qcopula
