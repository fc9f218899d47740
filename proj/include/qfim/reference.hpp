#pragma once

#include <qfim/types.hpp>

#include <vector>

namespace qfim {

// Spectral QFIM: H_{mu,nu} = 2 sum_{j,k} Re(<j|d_mu rho|k><k|d_nu rho|j>) /
// (lambda_j + lambda_k), restricted to pairs with lambda_j + lambda_k >
// eig_cut. Inputs are ambient matrices in an orthonormal basis.
RMatrix qfim_oracle_eigen(const CMatrix& rho, const std::vector<CMatrix>& drhos,
                          double eig_cut = kEigCut);

// Gamma from the spectral SLDs, for cross-checks against the block path.
RMatrix gamma_oracle_eigen(const CMatrix& rho, const std::vector<CMatrix>& drhos,
                           double eig_cut = kEigCut);

// Safranek's vectorized form for full-rank rho in an orthonormal basis:
// H_{mu,nu} = 2 vec(d_mu rho)^dag (conj(rho) (x) 1 + 1 (x) rho)^-1 vec(d_nu rho).
RMatrix qfim_safranek(const CMatrix& rho, const std::vector<CMatrix>& drhos,
                      double solve_tol = kSolveTol);

struct RegularizedQfim {
  RMatrix H;
  double spread = 0.0;   // max entrywise gap between the last two extrapolants
  bool converged = true; // spread within spread_tol * scale
};

// Evaluates Safranek's form at rho_s = (1-s) rho + (s/d) 1 over a strictly
// decreasing positive s sequence and Richardson-extrapolates to s -> 0. A
// non-convergent sequence is flagged; the value is still returned.
RegularizedQfim qfim_safranek_regularized(const CMatrix& rho,
                                          const std::vector<CMatrix>& drhos,
                                          std::vector<double> s_sequence = {1e-3, 1e-4,
                                                                            1e-5},
                                          double spread_tol = 1e-6);

}  // namespace qfim
