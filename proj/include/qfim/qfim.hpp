#pragma once

#include <qfim/state_model.hpp>

namespace qfim {

struct ParameterDiagnostics {
  std::string name;
  double cond_C = 1.0;            // 1-norm condition estimate of C = rho^B G11
  double cond_D = 1.0;            // of D = 1 (x) C + conj(C) (x) 1
  double lyapunov_residual = 0.0; // max|2 drho - L G rho - rho G L| on B_mu
  double drho_scale = 0.0;        // max|drho^{B_mu}|
};

struct QfimReport {
  RMatrix H;                   // symmetric
  RMatrix Gamma;               // antisymmetric
  std::vector<CMatrix> slds;   // L_mu on B_mu coordinates
  std::vector<ParameterDiagnostics> diagnostics;
  double rank_tol = kRankTol;
  // Worst |Im tr(L G drho G)| and |H - Re tr(rho G L G L G)| seen during
  // assembly, as cross-checks of the real/imaginary-part relation.
  double max_imag_H = 0.0;
  double max_cross_check_dev = 0.0;
};

// Solution of the Lyapunov equation 2 drho = L G rho + rho G L on B_mu,
// assembled block-wise:
//   L11 = 2 mat(D^-1 vec[drho11 - E - E^dag]),  L12 = 2 C^-1 drho12,
//   L21 = L12^dag,                              L22 = 0,
// with C = rho G11, D = 1 (x) C + conj(C) (x) 1, E = C^-1 drho12 G21 rho.
// The 11 block is polished by iterative refinement against the residual.
CMatrix sld_nonortho(const StateModel& m, Index mu);

// Full report: per-parameter SLDs, H per tr(L_mu G drho_nu G) on the joint
// basis B_{mu,nu}, Gamma as the imaginary part of tr(rho G L_mu G L_nu G)
// (H cross-checked as the real part of the same trace).
QfimReport qfim(const StateModel& m);

// Scalar special case evaluated directly on B_mu.
double qfi_single(const StateModel& m, Index mu);

// Commutation-condition matrix alone.
RMatrix gamma(const StateModel& m);

struct PairFlags {
  Index mu = 0, nu = 0;
  bool commutation = false;   // |Gamma_{mu,nu}| <= tol * scale
  bool independence = false;  // |H_{mu,nu}|     <= tol * scale
};

struct CompatibilityReport {
  std::vector<PairFlags> pairs;  // one entry per off-diagonal pair mu < nu
  bool all_commute = true;
  bool all_independent = true;
};

// Flags each off-diagonal pair against tol * sqrt(H_mumu * H_nunu) (falling
// back to tol * max|H| when a diagonal vanishes). The initial-state condition
// is out of scope here: the probe state is fixed.
CompatibilityReport compatibility(const StateModel& m, double tol = 1e-6);

// QFIM for rho(theta) = exp(-i sum K_mu theta_mu) rho0 exp(+i ...) with
// pairwise commuting generators, via derivatives -i[K_mu, rho0] fed through
// the same block machinery. The result carries no theta dependence.
RMatrix qfim_unitary(const StateModel& rho0, const std::vector<CMatrix>& generators);

// J^T H J for a change of parameters with Jacobian J = d(old)/d(new).
RMatrix reparameterize(const RMatrix& h, const RMatrix& jacobian);

}  // namespace qfim
