#pragma once

#include <qfim/basis.hpp>

#include <string>
#include <vector>

namespace qfim {

// Per-parameter data: the kets appended to B to form B_mu (all of them must be
// genuinely outside span(B); extend_basis drops in-span ones before a slot is
// built), and the coefficients of d(rho)/d(theta_mu) on B_mu. The 22 block of
// drho_coeffs is zero: by the chain rule a derivative pairs an extension ket
// with a support ket, never two extensions.
struct ParameterSlot {
  std::string name;
  CMatrix extension_kets;  // ambient_dim x e, possibly zero columns
  CMatrix drho_coeffs;     // (|B|+e) x (|B|+e), Hermitian, 22 block zero
};

struct StateModel {
  BasisSet basis;      // B, support_size == size
  CMatrix rho_coeffs;  // rho^B, Hermitian, full rank, tr(rho^B G^B) = 1
  std::vector<ParameterSlot> params;
};

// Validates every invariant (Hermiticity, Gram-rule traces, full rank of
// G^(1/2) rho G^(1/2), slot shapes, independence of extension kets) and
// returns the assembled model. trace_tol bounds |tr(rho G) - 1| and
// |tr(drho G)|.
StateModel make_state_model(BasisSet basis, CMatrix rho_coeffs,
                            std::vector<ParameterSlot> params,
                            double rank_tol = kRankTol, double trace_tol = 1e-10);

// Basis spanning supp(rho) and supp(d_mu rho): B extended by the slot's kets.
BasisSet parameter_basis(const StateModel& m, Index mu);

// Ambient representations (used by the oracle cross-checks).
CMatrix rho_ambient(const StateModel& m);
CMatrix drho_ambient(const StateModel& m, Index mu);

}  // namespace qfim
