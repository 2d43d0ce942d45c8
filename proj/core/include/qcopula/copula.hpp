#pragma once

#include <optional>
#include <vector>

#include "qcopula/choi.hpp"
#include "qcopula/matcore.hpp"
#include "qcopula/states.hpp"

namespace qcopula {

struct SolverConfig {
  double tol = 1e-12;           // fixed-point stopping threshold, in d_H
  double marginal_tol = 1e-10;  // precopula check on the output
  int max_iter = 1000;
  double rank_tol = 1e-10;      // full-rank threshold on the input state
  bool regularize = false;      // replace rho by (1 - eps) rho + eps I/(nm)
  double reg_eps = 1e-8;
};

/// Which factor psi with psi* psi = phi is used to build the copula
/// representative. Different factors give representatives that differ by a
/// local unitary.
enum class Factorization { HermitianSqrt, Cholesky };

struct FixedPointReport {
  CMatrix phi_ray;            // trace-one fixed ray
  double lambda = 0.0;        // T(phi_ray) = lambda * phi_ray
  int iterations = 0;
  double final_step = 0.0;    // d_H between the last two iterates
  bool converged = false;
  std::vector<double> steps;  // d_H(rho_{k+1}, rho_k) for every iteration
};

/// Iterates rho <- T(rho) / Tr T(rho) with T = inv o Phi* o inv o Phi, starting
/// from `init` (or I_n / n), until d_H between successive iterates is <= tol.
/// Returns converged = false after max_iter steps instead of throwing.
/// Throws SingularIntermediate when an inverse meets an eigenvalue below
/// 1e-14 * lambda_max.
FixedPointReport fixed_point_iterate(const ChoiOperator& phi, double tol, int max_iter,
                                     const std::optional<CMatrix>& init = std::nullopt);

/// The positive-definite pair solving
///   Phi(phi0^{-1}) = phi1^{-1} / m,   Phi*(phi1) = phi0 / n
/// together with factors psi_k* psi_k = phi_k.
struct ScalerPair {
  CMatrix phi0;
  CMatrix phi1;
  CMatrix psi0;
  CMatrix psi1;
};

struct ScalingResiduals {
  double output_side;  // ||Phi(phi0^{-1}) - phi1^{-1}/m||_F / ||phi1^{-1}/m||_F
  double input_side;   // ||Phi*(phi1) - phi0/n||_F / ||phi0/n||_F
};

ScalingResiduals scaling_residuals(const ChoiOperator& phi, const CMatrix& phi0, const CMatrix& phi1);

inline constexpr double kScalerVerifyTol = 1e-9;

/// phi1 = (Phi(phi_ray))^{-1} / m and phi0 = n Phi*(phi1), then factors them.
/// Throws VerificationFailed if either scaling equation misses 1e-9 relative.
ScalerPair extract_scalers(const ChoiOperator& phi, const FixedPointReport& report,
                           Factorization factorization = Factorization::HermitianSqrt);

struct CopulaResult {
  DensityMatrix chi;
  ScalerPair scalers;
  FixedPointReport report;
  double marginal_residual = 0.0;
  bool regularized = false;  // chi is the copula of the eps-perturbed state
  double reg_eps = 0.0;
};

/// Runs the full pipeline: Choi map of rho, fixed point, scalers, then
///   chi = ((psi0^{-1})^T (x) psi1) rho ((psi0^{-1})^T (x) psi1)*
/// trace-normalized and checked to be a precopula at cfg.marginal_tol.
CopulaResult copula_of(const DensityMatrix& rho, const SolverConfig& cfg = {},
                       Factorization factorization = Factorization::HermitianSqrt);

/// Invertible (a, b) with chi = (a* (x) b*) rho (a (x) b) for a copula result:
/// a = conj(psi0^{-1}), b = psi1*.
std::pair<CMatrix, CMatrix> connection_matrices(const CopulaResult& result);

/// ||(a* (x) b*) rho (a (x) b) / Tr(...) - chi||_F
double verify_connection(const DensityMatrix& rho, const DensityMatrix& chi, const CMatrix& a, const CMatrix& b);

/// Local-unitary invariants of a precopula: ascending spectrum of chi, then
/// Tr chi^2, Tr chi^3, then the ascending spectrum of its partial transpose.
/// Equal fingerprints are necessary (not sufficient) for two precopulas to be
/// the same copula. Throws NotPrecopula if the marginal residual exceeds tol.
std::vector<double> copula_invariants(const DensityMatrix& chi, double tol = 1e-8);

}  // namespace qcopula
