#include "qcopula/pmetric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "qcopula/error.hpp"
#include "qcopula/states.hpp"

namespace qcopula {

namespace {

struct Support {
  CMatrix basis;  // orthonormal columns spanning the support
  RVector values; // eigenvalues on the support
};

Support support_of(const CMatrix& a, double rank_tol, const char* what) {
  const HermitianSpectrum spec = eig_hermitian(a);
  const double lmax = spec.max();
  if (!(lmax > 0.0)) throw Error(ErrorCode::NotPSD, std::string(what) + " has no positive eigenvalue");
  if (spec.min() < -1e-10 * lmax) throw Error(ErrorCode::NotPSD, std::string(what) + " is not positive semi-definite");

  const double cutoff = rank_tol * lmax;
  Eigen::Index first = 0;
  while (first < spec.eigenvalues.size() && spec.eigenvalues(first) <= cutoff) ++first;
  const Eigen::Index r = spec.eigenvalues.size() - first;
  return {spec.eigenvectors.rightCols(r), spec.eigenvalues.tail(r)};
}

// Lexicographic order on (re, im) of the column-major data.
bool canonical_less(const CMatrix& a, const CMatrix& b) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const Complex x = a.data()[k];
    const Complex y = b.data()[k];
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

Rng pair_rng(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return Rng(seq);
}

CMatrix rank_one_projector(int n, Rng& rng) {
  CMatrix v = ginibre(n, 1, rng);
  v /= v.norm();
  return v * v.adjoint();
}

constexpr std::array<double, 3> kBoundaryWeights{1e-2, 1e-4, 1e-6};

// Pair kinds cycle with the sample index: interior/interior, then one
// boundary weight per kind, then (contraction only) a nearby perturbation.
std::pair<CMatrix, CMatrix> sample_pair(int n, int kind, Rng& rng) {
  if (kind == 0) return {random_state_matrix(n, rng), random_state_matrix(n, rng)};
  if (kind <= static_cast<int>(kBoundaryWeights.size())) {
    const double w = kBoundaryWeights[static_cast<std::size_t>(kind - 1)];
    auto boundary = [&] { return CMatrix((1.0 - w) * rank_one_projector(n, rng) + w * random_state_matrix(n, rng)); };
    CMatrix first = boundary();
    return {std::move(first), boundary()};
  }
  CMatrix base = random_state_matrix(n, rng);
  const CMatrix other = random_state_matrix(n, rng);
  const double t = 1e-3;
  CMatrix near = (1.0 - t) * base + t * other;
  return {std::move(base), std::move(near)};
}

double image_distance(const ChoiOperator& phi, const CMatrix& x, const CMatrix& y) {
  const ProjectiveDistance d =
      hilbert_distance(hermitian_part(apply_map(phi, x)), hermitian_part(apply_map(phi, y)), kDefaultRankTol);
  if (d.is_infinite())
    throw Error(ErrorCode::InfiniteDistance, "images of two states have different supports; map is not strictly positive");
  return d.value();
}

void require_samples(int samples) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "estimators need samples >= 2");
}

}  // namespace

ProjectiveDistance hilbert_distance(const CMatrix& a_in, const CMatrix& b_in, double rank_tol) {
  require_square(a_in, "hilbert_distance argument");
  if (a_in.rows() != b_in.rows() || a_in.cols() != b_in.cols())
    throw Error(ErrorCode::ShapeMismatch, "hilbert_distance arguments differ in shape");
  if (a_in.norm() <= 1e-14 || b_in.norm() <= 1e-14)
    throw Error(ErrorCode::ZeroMatrix, "hilbert_distance is undefined at the zero matrix");
  require_finite(a_in, "hilbert_distance argument");
  require_finite(b_in, "hilbert_distance argument");
  if (!is_hermitian(a_in) || !is_hermitian(b_in))
    throw Error(ErrorCode::NotPSD, "hilbert_distance arguments must be Hermitian PSD");

  const bool swap = canonical_less(b_in, a_in);
  const CMatrix& a = swap ? b_in : a_in;
  const CMatrix& b = swap ? a_in : b_in;

  const Support sa = support_of(a, rank_tol, "first argument");
  const Support sb = support_of(b, rank_tol, "second argument");
  if (sa.basis.cols() != sb.basis.cols()) return ProjectiveDistance::infinity();
  if (sa.basis.cols() < a.rows()) {
    const CMatrix pa = sa.basis * sa.basis.adjoint();
    const CMatrix pb = sb.basis * sb.basis.adjoint();
    // For equal ranks ||Pa - Pb||_2 is the sine of the largest principal angle.
    const double sine = Eigen::JacobiSVD<CMatrix>(pa - pb).singularValues()(0);
    if (sine > kSupportAngleTol) return ProjectiveDistance::infinity();
  }

  // B^{-1/2} A B^{-1/2} expressed in the eigenbasis of B restricted to its support.
  const RVector inv_sqrt = sb.values.cwiseSqrt().cwiseInverse();
  const CMatrix restricted = sb.basis.adjoint() * a * sb.basis;
  const CMatrix scaled = inv_sqrt.cast<Complex>().asDiagonal() * restricted * inv_sqrt.cast<Complex>().asDiagonal();
  const RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(hermitian_part(scaled), Eigen::EigenvaluesOnly).eigenvalues();
  const double lo = ev(0);
  const double hi = ev(ev.size() - 1);
  if (!(lo > 0.0)) return ProjectiveDistance::infinity();
  return ProjectiveDistance::finite(std::max(0.0, std::log(hi / lo)));
}

double estimate_diameter(const ChoiOperator& phi, int samples, std::uint64_t seed) {
  require_samples(samples);
  const int kinds = 1 + static_cast<int>(kBoundaryWeights.size());
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    Rng rng = pair_rng(seed, k);
    const auto [x, y] = sample_pair(phi.dim_in(), k % kinds, rng);
    best = std::max(best, image_distance(phi, x, y));
  }
  return best;
}

double estimate_contraction(const ChoiOperator& phi, int samples, std::uint64_t seed) {
  require_samples(samples);
  const int kinds = 2 + static_cast<int>(kBoundaryWeights.size());
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    Rng rng = pair_rng(seed, k);
    const auto [x, y] = sample_pair(phi.dim_in(), k % kinds, rng);
    const ProjectiveDistance din = hilbert_distance(x, y);
    if (din.is_infinite() || din.value() < 1e-8) continue;
    best = std::max(best, image_distance(phi, x, y) / din.value());
  }
  return best;
}

ContractionDiagnostic contraction_diagnostic(const ChoiOperator& phi, int samples, std::uint64_t seed) {
  const double ratio = estimate_contraction(phi, samples, seed);
  const double diameter = estimate_diameter(phi, samples, seed);
  return {ratio, diameter, std::tanh(diameter / 4.0)};
}

}  // namespace qcopula
