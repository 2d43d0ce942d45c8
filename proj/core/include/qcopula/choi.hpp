#pragma once

#include <cstdint>
#include <functional>

#include "qcopula/matcore.hpp"
#include "qcopula/states.hpp"

namespace qcopula {

/// A linear map Phi: M_n -> M_m held as its Choi matrix
///   rho_Phi = sum_ij E_ij (x) Phi(E_ij),
/// so that the m x m block (i, j) of the matrix is Phi(E_ij).
class ChoiOperator {
 public:
  ChoiOperator(CMatrix choi, int dim_in, int dim_out);

  const CMatrix& matrix() const noexcept { return choi_; }
  int dim_in() const noexcept { return dim_in_; }
  int dim_out() const noexcept { return dim_out_; }
  // Whether the Choi matrix is Hermitian (i.e. Phi preserves Hermiticity).
  bool hermitian() const noexcept { return hermitian_; }

  // Phi(E_ij)
  CMatrix block(int i, int j) const;

 private:
  CMatrix choi_;
  int dim_in_;
  int dim_out_;
  bool hermitian_;
};

using LinearMap = std::function<CMatrix(const CMatrix&)>;

/// Reinterprets the state as the Choi matrix of Phi_rho: M_n -> M_m.
ChoiOperator choi_from_state(const DensityMatrix& rho);

/// Builds sum_ij E_ij (x) f(E_ij) by evaluating f on the matrix units.
ChoiOperator choi_from_map(const LinearMap& f, int dim_in, int dim_out);

/// Phi(X) = sum_ij X[i, j] Phi(E_ij).
CMatrix apply_map(const ChoiOperator& phi, const CMatrix& x);

/// Phi(X) = Tr_1((X^T (x) I_m) rho_Phi). Slower; kept as an independent route.
CMatrix apply_partial_trace_form(const ChoiOperator& phi, const CMatrix& x);

/// Hilbert-Schmidt adjoint: Phi*(Y)[i, j] = <Phi(E_ij), Y> = Tr(Phi(E_ij)* Y),
/// the unique map with <Phi(X), Y> = <X, Phi*(Y)>.
CMatrix apply_adjoint(const ChoiOperator& phi, const CMatrix& y);

/// The Choi operator of Phi*: M_m -> M_n.
ChoiOperator adjoint_operator(const ChoiOperator& phi);

// Multiplication transforms at the Choi level (A^T is the entrywise transpose):
//   L_B o Phi -> (I_n (x) B) rho_Phi
//   R_B o Phi -> rho_Phi (I_n (x) B)
//   Phi o L_A -> (A^T (x) I_m) rho_Phi
//   Phi o R_A -> rho_Phi (A^T (x) I_m)
ChoiOperator left_multiply_output(const ChoiOperator& phi, const CMatrix& b);
ChoiOperator right_multiply_output(const ChoiOperator& phi, const CMatrix& b);
ChoiOperator left_multiply_input(const ChoiOperator& phi, const CMatrix& a);
ChoiOperator right_multiply_input(const ChoiOperator& phi, const CMatrix& a);

inline constexpr double kMaxTransformCondition = 1e12;

/// Choi operator of X -> B Phi(A X A*) B*, i.e.
///   rho_Phi -> (A^T (x) B) rho_Phi (A^T (x) B)*.
/// Throws SingularTransform if cond(a) or cond(b) exceeds 1e12.
ChoiOperator sandwich_transform(const ChoiOperator& phi, const CMatrix& a, const CMatrix& b);

/// Falsification probe for strict positivity: draws `trials` random rank-one
/// projectors P and checks lambda_min(Phi(P)) > 1e-12 Tr(Phi(P)). A pass does
/// not prove strict positivity.
bool is_strictly_positive_sample(const ChoiOperator& phi, int trials, std::uint64_t seed);

}  // namespace qcopula
