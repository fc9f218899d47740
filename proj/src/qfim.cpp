#include <qfim/qfim.hpp>

#include <qfim/tensor.hpp>

#include <cmath>

namespace qfim {

namespace {

struct SldSolution {
  CMatrix L;
  double cond_C = 1.0;
  double cond_D = 1.0;
  double residual = 0.0;
  double drho_scale = 0.0;
};

CMatrix padded(const CMatrix& block11, Index total) {
  CMatrix out = CMatrix::Zero(total, total);
  out.topLeftCorner(block11.rows(), block11.cols()) = block11;
  return out;
}

// Block solution of 2 drho = L G rho + rho G L on the basis bmu, rho living
// on the leading support block. The 11 block comes from the vectorized system
// D vec(L11) = 2 vec(drho11 - E - E^dag); a few refinement sweeps against the
// measured residual remove the cancellation error between the E terms and the
// off-diagonal blocks, which otherwise grows like cond(C)^2 near critical
// points.
SldSolution solve_lyapunov_block(const CMatrix& rho, const BasisSet& bmu,
                                 const CMatrix& drho, double solve_tol = kSolveTol,
                                 int max_refine = 10) {
  const Index r = rho.rows();
  const Index n = bmu.size();
  const Index e = n - r;
  SldSolution out;
  out.drho_scale = max_abs(drho);
  if (out.drho_scale == 0.0) {
    out.L = CMatrix::Zero(n, n);
    return out;
  }
  const CMatrix& G = bmu.gram;
  const CMatrix G11 = G.topLeftCorner(r, r);
  const CMatrix G21 = G.bottomLeftCorner(e, r);
  const CMatrix C = rho * G11;
  const InverseResult cinv = inv(C, solve_tol);
  out.cond_C = cinv.condition;

  const CMatrix D = kron(CMatrix::Identity(r, r), C) +
                    kron(C.conjugate(), CMatrix::Identity(r, r));
  Eigen::PartialPivLU<CMatrix> dlu(D);
  const double rcond = dlu.rcond();
  out.cond_D = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(rcond > solve_tol)) {
    throw SingularMatrixError("sld: D singular to tolerance (rho^B not full rank?)",
                              out.cond_D);
  }

  const CMatrix d11 = drho.topLeftCorner(r, r);
  const CMatrix d12 = drho.topRightCorner(r, e);
  const CMatrix E = e > 0 ? CMatrix(cinv.inverse * d12 * G21 * rho)
                          : CMatrix(CMatrix::Zero(r, r));
  CMatrix L = CMatrix::Zero(n, n);
  L.topLeftCorner(r, r) =
      hermitian_part(2.0 * mat(dlu.solve(vec(CMatrix(d11 - E - E.adjoint()))), r));
  if (e > 0) {
    L.topRightCorner(r, e) = 2.0 * cinv.inverse * d12;
    L.bottomLeftCorner(e, r) = L.topRightCorner(r, e).adjoint();
  }

  const CMatrix rho_pad = padded(rho, n);
  double best_res = std::numeric_limits<double>::infinity();
  CMatrix best_L = L;
  for (int it = 0; it <= max_refine; ++it) {
    const CMatrix R = 2.0 * drho - L * G * rho_pad - rho_pad * G * L;
    const double res = max_abs(R);
    if (res < best_res) {
      best_res = res;
      best_L = L;
    }
    if (res <= 1e-10 * out.drho_scale || it == max_refine) break;
    const CMatrix r11 = hermitian_part(R.topLeftCorner(r, r));
    L.topLeftCorner(r, r) =
        hermitian_part(L.topLeftCorner(r, r) + mat(dlu.solve(vec(r11)), r));
  }
  out.L = std::move(best_L);
  out.residual = best_res;
  return out;
}

// Entries of src placed into an m x m matrix at the given index map.
CMatrix place(const CMatrix& src, const std::vector<Index>& map, Index m) {
  CMatrix out = CMatrix::Zero(m, m);
  for (Index j = 0; j < src.cols(); ++j)
    for (Index i = 0; i < src.rows(); ++i) out(map[i], map[j]) = src(i, j);
  return out;
}

}  // namespace

CMatrix sld_nonortho(const StateModel& m, Index mu) {
  const BasisSet bmu = parameter_basis(m, mu);
  return solve_lyapunov_block(m.rho_coeffs, bmu, m.params[mu].drho_coeffs).L;
}

QfimReport qfim(const StateModel& m) {
  const Index n = static_cast<Index>(m.params.size());
  const Index r = m.basis.size();
  QfimReport rep;
  rep.rank_tol = m.basis.rank_tol;
  rep.H = RMatrix::Zero(n, n);
  rep.Gamma = RMatrix::Zero(n, n);

  std::vector<BasisSet> bases;
  std::vector<CMatrix> drho_amb;
  std::vector<CMatrix> sld_amb;
  bases.reserve(n);
  for (Index mu = 0; mu < n; ++mu) {
    bases.push_back(parameter_basis(m, mu));
    const SldSolution s = solve_lyapunov_block(m.rho_coeffs, bases[mu],
                                               m.params[mu].drho_coeffs);
    rep.slds.push_back(s.L);
    rep.diagnostics.push_back({m.params[mu].name, s.cond_C, s.cond_D, s.residual,
                               s.drho_scale});
    drho_amb.push_back(assemble_ambient(bases[mu], m.params[mu].drho_coeffs));
    sld_amb.push_back(assemble_ambient(bases[mu], s.L));
  }

  for (Index mu = 0; mu < n; ++mu) {
    for (Index nu = mu; nu < n; ++nu) {
      BasisSet joint = bases[mu];
      CMatrix lnu_joint, dnu_joint;
      if (nu == mu) {
        lnu_joint = rep.slds[mu];
        dnu_joint = m.params[mu].drho_coeffs;
      } else {
        const BasisExtension ext = extend_basis_tracked(
            bases[mu], m.params[nu].extension_kets, m.basis.rank_tol);
        joint = ext.basis;
        bool all_kept = true;
        for (Index p : ext.position) all_kept = all_kept && p >= 0;
        if (all_kept) {
          // B_nu is literally a subset of B_{mu,nu}: zero-padding is exact.
          std::vector<Index> map(r + ext.position.size());
          for (Index i = 0; i < r; ++i) map[i] = i;
          for (std::size_t j = 0; j < ext.position.size(); ++j)
            map[r + j] = ext.position[j];
          lnu_joint = place(rep.slds[nu], map, joint.size());
          dnu_joint = place(m.params[nu].drho_coeffs, map, joint.size());
        } else {
          // A nu extension collapsed into span(B + ext_mu); re-express the
          // operators exactly from their ambient forms.
          lnu_joint = decompose_on_basis(joint, sld_amb[nu]).coeffs;
          dnu_joint = decompose_on_basis(joint, drho_amb[nu]).coeffs;
        }
      }
      const Index mj = joint.size();
      const CMatrix lmu_joint = padded(rep.slds[mu], mj);
      const CMatrix& G = joint.gram;
      const CMatrix rho_pad = padded(m.rho_coeffs, mj);

      const Complex h = (lmu_joint * G * dnu_joint * G).trace();
      const Complex t = (rho_pad * G * lmu_joint * G * lnu_joint * G).trace();
      rep.H(mu, nu) = rep.H(nu, mu) = h.real();
      rep.Gamma(mu, nu) = t.imag();
      rep.Gamma(nu, mu) = -t.imag();
      rep.max_imag_H = std::max(rep.max_imag_H, std::abs(h.imag()));
      rep.max_cross_check_dev =
          std::max(rep.max_cross_check_dev, std::abs(t.real() - h.real()));
    }
  }
  rep.Gamma.diagonal().setZero();
  return rep;
}

double qfi_single(const StateModel& m, Index mu) {
  const BasisSet bmu = parameter_basis(m, mu);
  const SldSolution s = solve_lyapunov_block(m.rho_coeffs, bmu, m.params[mu].drho_coeffs);
  const CMatrix& G = bmu.gram;
  return (s.L * G * m.params[mu].drho_coeffs * G).trace().real();
}

RMatrix gamma(const StateModel& m) { return qfim(m).Gamma; }

CompatibilityReport compatibility(const StateModel& m, double tol) {
  const QfimReport rep = qfim(m);
  const Index n = rep.H.rows();
  const double hmax = max_abs(rep.H);
  CompatibilityReport out;
  for (Index mu = 0; mu < n; ++mu) {
    for (Index nu = mu + 1; nu < n; ++nu) {
      double scale = std::sqrt(std::max(rep.H(mu, mu), 0.0) * std::max(rep.H(nu, nu), 0.0));
      if (scale == 0.0) scale = hmax;
      PairFlags f;
      f.mu = mu;
      f.nu = nu;
      f.commutation = std::abs(rep.Gamma(mu, nu)) <= tol * scale;
      f.independence = std::abs(rep.H(mu, nu)) <= tol * scale;
      out.all_commute = out.all_commute && f.commutation;
      out.all_independent = out.all_independent && f.independence;
      out.pairs.push_back(f);
    }
  }
  return out;
}

RMatrix qfim_unitary(const StateModel& rho0, const std::vector<CMatrix>& generators) {
  if (!rho0.params.empty()) {
    throw DimensionError("qfim_unitary: rho0 model must carry no parameter slots");
  }
  const Index dim = rho0.basis.ambient_dim();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const CMatrix& k = generators[i];
    if (k.rows() != dim || k.cols() != dim) {
      throw DimensionError("qfim_unitary: generator dimension mismatch");
    }
    if (!is_hermitian(k)) {
      throw NotHermitianError("qfim_unitary: generator not Hermitian",
                              hermiticity_deviation(k));
    }
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      const CMatrix comm = k * generators[j] - generators[j] * k;
      const double scale = std::max(1.0, max_abs(k) * max_abs(generators[j]));
      if (max_abs(comm) > 1e-10 * scale) {
        throw QfimError("qfim_unitary: generators do not commute to tolerance");
      }
    }
  }

  const CMatrix rho_amb = rho_ambient(rho0);
  std::vector<ParameterSlot> slots;
  const Complex im(0.0, 1.0);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const CMatrix& k = generators[i];
    const CMatrix drho = hermitian_part(CMatrix(-im * (k * rho_amb - rho_amb * k)));
    const CMatrix candidates = k * rho0.basis.kets;
    const BasisExtension ext =
        extend_basis_tracked(rho0.basis, candidates, rho0.basis.rank_tol);
    ParameterSlot slot;
    slot.name = "K" + std::to_string(i);
    slot.extension_kets.resize(dim, ext.basis.size() - rho0.basis.size());
    Index at = 0;
    for (Index j = 0; j < candidates.cols(); ++j) {
      if (ext.position[j] >= 0) slot.extension_kets.col(at++) = candidates.col(j);
    }
    OperatorDecomposition dec = decompose_on_basis(ext.basis, drho);
    const double scale = std::max(1.0, max_abs(drho));
    if (dec.residual_max_abs > 1e-9 * scale) {
      throw QfimError("qfim_unitary: commutator not supported on the extended basis");
    }
    const Index e = slot.extension_kets.cols();
    if (e > 0) dec.coeffs.bottomRightCorner(e, e).setZero();
    slot.drho_coeffs = std::move(dec.coeffs);
    slots.push_back(std::move(slot));
  }
  const StateModel model =
      make_state_model(rho0.basis, rho0.rho_coeffs, std::move(slots), rho0.basis.rank_tol);
  return qfim(model).H;
}

RMatrix reparameterize(const RMatrix& h, const RMatrix& jacobian) {
  if (jacobian.rows() != h.rows()) {
    throw DimensionError("reparameterize: Jacobian rows must match H dimension");
  }
  return jacobian.transpose() * h * jacobian;
}

}  // namespace qfim
