#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "qcopula/matcore.hpp"

namespace qcopula {

using Rng = std::mt19937_64;

inline constexpr double kStateTol = 1e-10;

/// A bipartite density matrix on M_n (x) M_m. The first tensor factor has
/// dimension n = dim_a(); composite index (i, k) maps to row i * m + k.
///
/// Construction validates the dims, Hermiticity (relative), unit trace and
/// PSD-ness (eigenvalues >= -tol, absolute). The stored matrix is the exact
/// Hermitian part of the input.
class DensityMatrix {
 public:
  DensityMatrix(CMatrix mat, int dim_a, int dim_b, double tol = kStateTol);

  static DensityMatrix maximally_mixed(int dim_a, int dim_b);

  const CMatrix& matrix() const noexcept { return mat_; }
  int dim_a() const noexcept { return dim_a_; }
  int dim_b() const noexcept { return dim_b_; }
  int dim() const noexcept { return dim_a_ * dim_b_; }

 private:
  CMatrix mat_;
  int dim_a_;
  int dim_b_;
};

enum class Separability { Separable, Entangled, Inconclusive };
std::string_view to_string(Separability s) noexcept;

struct SeparabilityVerdict {
  Separability tag;
  double min_pt_eigenvalue;
};

// Raw-matrix forms; the DensityMatrix overloads forward here.
CMatrix partial_trace_first(const CMatrix& rho, int n, int m);
CMatrix partial_trace_second(const CMatrix& rho, int n, int m);
CMatrix partial_transpose_second(const CMatrix& rho, int n, int m);

/// Tr_1 rho, the m x m marginal of the second subsystem.
CMatrix partial_trace_first(const DensityMatrix& rho);
/// Tr_2 rho, the n x n marginal of the first subsystem.
CMatrix partial_trace_second(const DensityMatrix& rho);
CMatrix partial_transpose_second(const DensityMatrix& rho);

/// max(||Tr_1 rho - I_m/m||_F, ||Tr_2 rho - I_n/n||_F)
double marginal_residual(const DensityMatrix& rho);
bool is_precopula(const DensityMatrix& rho, double tol);

DensityMatrix product_state(const DensityMatrix& first, const DensityMatrix& second);
DensityMatrix product_state(const CMatrix& first, const CMatrix& second);

/// (u (x) v) rho (u (x) v)*, re-validated as a state.
DensityMatrix local_conjugate(const DensityMatrix& rho, const CMatrix& u, const CMatrix& v);

// Sampling primitives. All of them draw only from the generator passed in.
CMatrix ginibre(int rows, int cols, Rng& rng);
CMatrix haar_unitary(int n, Rng& rng);
// G G* / Tr(G G*) for an n x n Ginibre G.
CMatrix random_state_matrix(int n, Rng& rng);

DensityMatrix random_full_rank_state(int n, int m, std::uint64_t seed);
DensityMatrix random_full_rank_state(int n, int m, Rng& rng);

/// sum_i p_i rho1_i (x) rho2_i with random full-rank factors and a flat
/// Dirichlet probability vector.
DensityMatrix random_separable_state(int n, int m, int terms, std::uint64_t seed);
DensityMatrix random_separable_state(int n, int m, int terms, Rng& rng);

/// Peres-Horodecki test on the partial transpose of the second factor. Exact
/// for 2x2, 2x3 and 3x2; larger dims report Inconclusive for PPT states.
SeparabilityVerdict ppt_verdict(const DensityMatrix& rho);

}  // namespace qcopula
