#include "qcopula/copula.hpp"

#include <cmath>
#include <sstream>

#include "qcopula/error.hpp"
#include "qcopula/pmetric.hpp"

namespace qcopula {

namespace {

constexpr double kSingularRatio = 1e-14;

// Inverse of a Hermitian positive-definite intermediate of the iteration.
CMatrix invert_intermediate(const CMatrix& x, const char* stage) {
  const HermitianSpectrum spec = eig_hermitian(hermitian_part(x));
  if (!(spec.max() > 0.0) || spec.min() < kSingularRatio * spec.max()) {
    std::ostringstream os;
    os << stage << " is numerically singular (eigenvalues " << spec.min() << " .. " << spec.max()
       << "); consider regularizing the input";
    throw Error(ErrorCode::SingularIntermediate, os.str());
  }
  return hermitian_part(spectral_apply(spec, [](double v) { return 1.0 / v; }));
}

// T = inv o Phi* o inv o Phi
CMatrix apply_t(const ChoiOperator& phi, const CMatrix& x) {
  const CMatrix forward = invert_intermediate(apply_map(phi, x), "Phi(rho)");
  return invert_intermediate(apply_adjoint(phi, forward), "Phi*(Phi(rho)^-1)");
}

CMatrix trace_normalized(const CMatrix& x) { return hermitian_part(x / x.trace().real()); }

double relative(const CMatrix& diff, const CMatrix& ref) { return diff.norm() / ref.norm(); }

CMatrix factor(const CMatrix& a, Factorization f) {
  return f == Factorization::Cholesky ? cholesky_factor(a) : cholesky_like_factor(a);
}

}  // namespace

FixedPointReport fixed_point_iterate(const ChoiOperator& phi, double tol, int max_iter,
                                     const std::optional<CMatrix>& init) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "fixed-point tolerance must be positive");
  if (max_iter < 1) throw Error(ErrorCode::InvalidArgument, "max_iter must be at least 1");
  const int n = phi.dim_in();

  CMatrix rho;
  if (init) {
    if (init->rows() != n || init->cols() != n) throw Error(ErrorCode::ShapeMismatch, "initial ray has the wrong size");
    const HermitianSpectrum spec = eig_hermitian(*init);
    if (!(spec.min() > 0.0)) throw Error(ErrorCode::InvalidArgument, "initial ray must be positive definite");
    rho = trace_normalized(*init);
  } else {
    rho = identity(n) / static_cast<double>(n);
  }

  FixedPointReport report;
  for (int k = 1; k <= max_iter; ++k) {
    CMatrix next = trace_normalized(apply_t(phi, rho));
    const ProjectiveDistance step = hilbert_distance(next, rho);
    rho = std::move(next);
    report.iterations = k;
    report.final_step = step.value();
    report.steps.push_back(step.value());
    if (step.is_finite() && step.value() <= tol) {
      report.converged = true;
      break;
    }
  }
  report.lambda = apply_t(phi, rho).trace().real();
  report.phi_ray = std::move(rho);
  return report;
}

ScalingResiduals scaling_residuals(const ChoiOperator& phi, const CMatrix& phi0, const CMatrix& phi1) {
  const double n = phi.dim_in();
  const double m = phi.dim_out();
  const CMatrix target_out = inv_psd(phi1, 0.0) / m;
  const CMatrix target_in = phi0 / n;
  return {relative(apply_map(phi, inv_psd(phi0, 0.0)) - target_out, target_out),
          relative(apply_adjoint(phi, phi1) - target_in, target_in)};
}

ScalerPair extract_scalers(const ChoiOperator& phi, const FixedPointReport& report, Factorization factorization) {
  if (!report.converged) throw Error(ErrorCode::NotConverged, "extract_scalers needs a converged fixed-point report");
  const double n = phi.dim_in();
  const double m = phi.dim_out();

  const CMatrix phi1 = invert_intermediate(apply_map(phi, report.phi_ray), "Phi(phi)") / m;
  const CMatrix phi0 = hermitian_part(n * apply_adjoint(phi, phi1));

  const ScalingResiduals res = scaling_residuals(phi, phi0, phi1);
  if (!(res.output_side <= kScalerVerifyTol) || !(res.input_side <= kScalerVerifyTol)) {
    std::ostringstream os;
    os << "scaling equations not satisfied (output side " << res.output_side << ", input side " << res.input_side
       << ")";
    throw Error(ErrorCode::VerificationFailed, os.str());
  }
  return {phi0, phi1, factor(phi0, factorization), factor(phi1, factorization)};
}

CopulaResult copula_of(const DensityMatrix& rho_in, const SolverConfig& cfg, Factorization factorization) {
  const int n = rho_in.dim_a();
  const int m = rho_in.dim_b();
  const double lmin = eig_hermitian(rho_in.matrix()).min();

  CMatrix work = rho_in.matrix();
  if (cfg.regularize) {
    if (!(cfg.reg_eps > 0.0 && cfg.reg_eps < 1.0))
      throw Error(ErrorCode::InvalidArgument, "reg_eps must lie in (0, 1)");
    work = (1.0 - cfg.reg_eps) * work + cfg.reg_eps * identity(n * m) / static_cast<double>(n * m);
  } else if (!(lmin > cfg.rank_tol)) {
    std::ostringstream os;
    os << "state is not full rank (min eigenvalue " << lmin << " <= " << cfg.rank_tol
       << "); enable regularization to compute the copula of a perturbed state";
    throw Error(ErrorCode::RankDeficient, os.str());
  }
  const DensityMatrix rho(work, n, m);
  const ChoiOperator phi = choi_from_state(rho);

  FixedPointReport report = fixed_point_iterate(phi, cfg.tol, cfg.max_iter);
  if (!report.converged) {
    std::ostringstream os;
    os << "fixed-point iteration stopped after " << report.iterations << " iterations with step "
       << report.final_step << " > " << cfg.tol;
    throw Error(ErrorCode::NotConverged, os.str());
  }
  ScalerPair scalers = extract_scalers(phi, report, factorization);

  // psi0 need not be Hermitian (Cholesky), so invert it as a general matrix.
  const CMatrix psi0_inv = scalers.psi0.inverse();
  const CMatrix w = kron(psi0_inv.transpose(), scalers.psi1);
  CMatrix chi = w * rho.matrix() * w.adjoint();
  chi = hermitian_part(chi / chi.trace().real());

  DensityMatrix chi_state(std::move(chi), n, m);
  const double residual = marginal_residual(chi_state);
  if (!(residual <= cfg.marginal_tol)) {
    std::ostringstream os;
    os << "copula representative has marginal residual " << residual << " > " << cfg.marginal_tol;
    throw Error(ErrorCode::PrecopulaCheckFailed, os.str());
  }
  return CopulaResult{std::move(chi_state), std::move(scalers), std::move(report), residual, cfg.regularize,
                      cfg.regularize ? cfg.reg_eps : 0.0};
}

std::pair<CMatrix, CMatrix> connection_matrices(const CopulaResult& result) {
  return {result.scalers.psi0.inverse().conjugate(), result.scalers.psi1.adjoint()};
}

double verify_connection(const DensityMatrix& rho, const DensityMatrix& chi, const CMatrix& a, const CMatrix& b) {
  if (a.rows() != rho.dim_a() || a.cols() != rho.dim_a() || b.rows() != rho.dim_b() || b.cols() != rho.dim_b() ||
      chi.dim_a() != rho.dim_a() || chi.dim_b() != rho.dim_b())
    throw Error(ErrorCode::ShapeMismatch, "verify_connection operands have inconsistent dims");
  const CMatrix w = kron(a, b);
  CMatrix lhs = w.adjoint() * rho.matrix() * w;
  lhs /= lhs.trace();
  return (lhs - chi.matrix()).norm();
}

std::vector<double> copula_invariants(const DensityMatrix& chi, double tol) {
  const double residual = marginal_residual(chi);
  if (!(residual <= tol)) {
    std::ostringstream os;
    os << "state is not a precopula (marginal residual " << residual << ")";
    throw Error(ErrorCode::NotPrecopula, os.str());
  }
  const CMatrix& c = chi.matrix();
  std::vector<double> out;
  const RVector spec = eig_hermitian(c).eigenvalues;
  out.insert(out.end(), spec.begin(), spec.end());
  const CMatrix c2 = c * c;
  out.push_back(c2.trace().real());
  out.push_back((c2 * c).trace().real());
  const RVector pt = eig_hermitian(partial_transpose_second(chi)).eigenvalues;
  out.insert(out.end(), pt.begin(), pt.end());
  return out;
}

}  // namespace qcopula
