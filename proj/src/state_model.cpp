#include <qfim/state_model.hpp>

#include <qfim/tensor.hpp>

namespace qfim {

StateModel make_state_model(BasisSet basis, CMatrix rho_coeffs,
                            std::vector<ParameterSlot> params, double rank_tol,
                            double trace_tol) {
  if (basis.support_size != basis.size()) {
    throw DimensionError("make_state_model: basis must contain support kets only");
  }
  const Index r = basis.size();
  if (rho_coeffs.rows() != r || rho_coeffs.cols() != r) {
    throw DimensionError("make_state_model: rho_coeffs must be |B| x |B|");
  }
  const double rho_scale = std::max(1.0, max_abs(rho_coeffs));
  if (hermiticity_deviation(rho_coeffs) > kHermitianTol * rho_scale) {
    throw NotHermitianError("make_state_model: rho_coeffs not Hermitian",
                            hermiticity_deviation(rho_coeffs));
  }
  const double tr = (rho_coeffs * basis.gram).trace().real();
  if (std::abs(tr - 1.0) > trace_tol) {
    throw QfimError("make_state_model: tr(rho G) = " + std::to_string(tr) + ", expected 1");
  }
  // Full rank of rho on its support: eigenvalues of G^(1/2) rho G^(1/2).
  const HermitianEigen ge = eig_hermitian(basis.gram);
  const CMatrix gsqrt =
      ge.vectors * ge.values.cwiseMax(0.0).cwiseSqrt().asDiagonal() * ge.vectors.adjoint();
  const HermitianEigen se = eig_hermitian(CMatrix(gsqrt * rho_coeffs * gsqrt));
  const double emax = se.values.cwiseAbs().maxCoeff();
  if (!(se.values.minCoeff() > rank_tol * emax)) {
    throw RankDeficientError("make_state_model: rho not full rank on its support", {},
                             se.values.minCoeff(), emax);
  }
  for (Index mu = 0; mu < static_cast<Index>(params.size()); ++mu) {
    auto& slot = params[mu];
    const Index e = slot.extension_kets.cols();
    const Index n = r + e;
    if (e > 0 && slot.extension_kets.rows() != basis.ambient_dim()) {
      throw DimensionError("slot '" + slot.name + "': extension ket dimension mismatch");
    }
    if (slot.drho_coeffs.rows() != n || slot.drho_coeffs.cols() != n) {
      throw DimensionError("slot '" + slot.name + "': drho_coeffs must be (|B|+e)^2");
    }
    const double dscale = std::max(1.0, max_abs(slot.drho_coeffs));
    if (hermiticity_deviation(slot.drho_coeffs) > kHermitianTol * dscale) {
      throw NotHermitianError("slot '" + slot.name + "': drho_coeffs not Hermitian",
                              hermiticity_deviation(slot.drho_coeffs));
    }
    if (e > 0 && max_abs(CMatrix(slot.drho_coeffs.bottomRightCorner(e, e))) >
                     kHermitianTol * dscale) {
      throw QfimError("slot '" + slot.name + "': drho 22 block must be zero");
    }
    // Every stored extension ket must survive extension (be outside span).
    const BasisExtension ext = extend_basis_tracked(basis, slot.extension_kets, rank_tol);
    for (Index j = 0; j < e; ++j) {
      if (ext.position[j] < 0) {
        throw RankDeficientError("slot '" + slot.name +
                                     "': extension ket lies in span(B); drop it "
                                     "and fold its components into the 11 block",
                                 {j}, 0.0, 1.0);
      }
    }
    const double dtr = (slot.drho_coeffs * ext.basis.gram).trace().real();
    if (std::abs(dtr) > trace_tol * dscale) {
      throw QfimError("slot '" + slot.name + "': tr(drho G) = " + std::to_string(dtr) +
                      ", expected 0");
    }
  }
  StateModel m;
  m.basis = std::move(basis);
  m.rho_coeffs = std::move(rho_coeffs);
  m.params = std::move(params);
  return m;
}

BasisSet parameter_basis(const StateModel& m, Index mu) {
  if (mu < 0 || mu >= static_cast<Index>(m.params.size())) {
    throw DimensionError("parameter_basis: index out of range");
  }
  return extend_basis(m.basis, m.params[mu].extension_kets, m.basis.rank_tol);
}

CMatrix rho_ambient(const StateModel& m) { return assemble_ambient(m.basis, m.rho_coeffs); }

CMatrix drho_ambient(const StateModel& m, Index mu) {
  const BasisSet bmu = parameter_basis(m, mu);
  return assemble_ambient(bmu, m.params[mu].drho_coeffs);
}

}  // namespace qfim
