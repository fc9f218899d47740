#include <qfim/reference.hpp>

#include <qfim/tensor.hpp>

namespace qfim {

namespace {

void check_oracle_inputs(const CMatrix& rho, const std::vector<CMatrix>& drhos) {
  if (rho.rows() != rho.cols()) throw DimensionError("oracle: rho not square");
  if (!is_hermitian(rho)) {
    throw NotHermitianError("oracle: rho not Hermitian", hermiticity_deviation(rho));
  }
  for (const CMatrix& d : drhos) {
    if (d.rows() != rho.rows() || d.cols() != rho.cols()) {
      throw DimensionError("oracle: drho dimension mismatch");
    }
    if (!is_hermitian(d)) {
      throw NotHermitianError("oracle: drho not Hermitian", hermiticity_deviation(d));
    }
  }
}

}  // namespace

RMatrix qfim_oracle_eigen(const CMatrix& rho, const std::vector<CMatrix>& drhos,
                          double eig_cut) {
  check_oracle_inputs(rho, drhos);
  const HermitianEigen eig = eig_hermitian(rho);
  const Index d = rho.rows();
  const Index n = static_cast<Index>(drhos.size());
  std::vector<CMatrix> in_eigbasis;
  in_eigbasis.reserve(n);
  for (const CMatrix& dr : drhos) {
    in_eigbasis.push_back(eig.vectors.adjoint() * dr * eig.vectors);
  }
  RMatrix h = RMatrix::Zero(n, n);
  for (Index mu = 0; mu < n; ++mu) {
    for (Index nu = mu; nu < n; ++nu) {
      double acc = 0.0;
      for (Index j = 0; j < d; ++j) {
        for (Index k = 0; k < d; ++k) {
          const double s = eig.values(j) + eig.values(k);
          if (s > eig_cut) {
            acc += 2.0 *
                   (in_eigbasis[mu](j, k) * in_eigbasis[nu](k, j)).real() / s;
          }
        }
      }
      h(mu, nu) = h(nu, mu) = acc;
    }
  }
  return h;
}

RMatrix gamma_oracle_eigen(const CMatrix& rho, const std::vector<CMatrix>& drhos,
                           double eig_cut) {
  check_oracle_inputs(rho, drhos);
  const HermitianEigen eig = eig_hermitian(rho);
  const Index d = rho.rows();
  const Index n = static_cast<Index>(drhos.size());
  std::vector<CMatrix> slds;
  slds.reserve(n);
  for (const CMatrix& dr : drhos) {
    const CMatrix de = eig.vectors.adjoint() * dr * eig.vectors;
    CMatrix l = CMatrix::Zero(d, d);
    for (Index j = 0; j < d; ++j) {
      for (Index k = 0; k < d; ++k) {
        const double s = eig.values(j) + eig.values(k);
        if (s > eig_cut) l(j, k) = 2.0 * de(j, k) / s;
      }
    }
    slds.push_back(eig.vectors * l * eig.vectors.adjoint());
  }
  RMatrix g = RMatrix::Zero(n, n);
  for (Index mu = 0; mu < n; ++mu) {
    for (Index nu = mu + 1; nu < n; ++nu) {
      const double v = (rho * slds[mu] * slds[nu]).trace().imag();
      g(mu, nu) = v;
      g(nu, mu) = -v;
    }
  }
  return g;
}

RMatrix qfim_safranek(const CMatrix& rho, const std::vector<CMatrix>& drhos,
                      double solve_tol) {
  check_oracle_inputs(rho, drhos);
  const Index d = rho.rows();
  const Index n = static_cast<Index>(drhos.size());
  const CMatrix lhs = kron(rho.conjugate(), CMatrix::Identity(d, d)) +
                      kron(CMatrix::Identity(d, d), rho);
  Eigen::PartialPivLU<CMatrix> lu(lhs);
  const double rcond = lu.rcond();
  if (!(rcond > solve_tol)) {
    throw SingularMatrixError("qfim_safranek: conj(rho) (x) 1 + 1 (x) rho singular",
                              rcond > 0.0 ? 1.0 / rcond
                                          : std::numeric_limits<double>::infinity());
  }
  std::vector<CVector> vecs, sols;
  for (const CMatrix& dr : drhos) {
    vecs.push_back(vec(dr));
    sols.push_back(lu.solve(vecs.back()));
  }
  RMatrix h = RMatrix::Zero(n, n);
  for (Index mu = 0; mu < n; ++mu) {
    for (Index nu = mu; nu < n; ++nu) {
      h(mu, nu) = h(nu, mu) = 2.0 * (vecs[mu].dot(sols[nu])).real();
    }
  }
  return h;
}

RegularizedQfim qfim_safranek_regularized(const CMatrix& rho,
                                          const std::vector<CMatrix>& drhos,
                                          std::vector<double> s_sequence,
                                          double spread_tol) {
  check_oracle_inputs(rho, drhos);
  if (s_sequence.size() < 2) {
    throw DimensionError("qfim_safranek_regularized: need at least two s values");
  }
  for (std::size_t i = 0; i + 1 < s_sequence.size(); ++i) {
    if (!(s_sequence[i] > s_sequence[i + 1]) || !(s_sequence.back() > 0.0)) {
      throw DimensionError(
          "qfim_safranek_regularized: s sequence must be strictly decreasing positive");
    }
  }
  const Index d = rho.rows();
  std::vector<RMatrix> table;
  for (double s : s_sequence) {
    const CMatrix rho_s = (1.0 - s) * rho + (s / static_cast<double>(d)) *
                                                CMatrix::Identity(d, d);
    std::vector<CMatrix> drho_s;
    drho_s.reserve(drhos.size());
    for (const CMatrix& dr : drhos) drho_s.push_back((1.0 - s) * dr);
    table.push_back(qfim_safranek(rho_s, drho_s));
  }
  // Neville extrapolation to s = 0, entrywise over the matrix sequence.
  const std::size_t k = table.size();
  RMatrix prev_level = table[k - 2];
  for (std::size_t level = 1; level < k; ++level) {
    for (std::size_t i = 0; i + level < k; ++i) {
      const double s0 = s_sequence[i], s1 = s_sequence[i + level];
      table[i] = (s0 * table[i + 1] - s1 * table[i]) / (s0 - s1);
    }
    if (level == k - 2) prev_level = table[0];
  }
  RegularizedQfim out;
  out.H = table[0];
  out.spread = k >= 2 ? max_abs(RMatrix(out.H - prev_level)) : 0.0;
  const double scale = std::max(1.0, max_abs(out.H));
  out.converged = out.spread <= spread_tol * scale;
  return out;
}

}  // namespace qfim
