#pragma once

#include <qfim/types.hpp>

namespace qfim {

// Ordered set of linearly independent ambient kets with cached Gram matrix.
// The first support_size kets span supp(rho); any further columns are
// derivative extensions appended by extend_basis.
struct BasisSet {
  CMatrix kets;        // ambient_dim x size, column j = |psi_j>
  Index support_size = 0;
  CMatrix gram;        // kets^dag * kets, Hermitian
  double rank_tol = kRankTol;

  Index ambient_dim() const { return kets.rows(); }
  Index size() const { return kets.cols(); }
};

// Certifies linear independence (smallest singular value of the ket matrix
// >= rank_tol * largest) and caches the Gram matrix. On failure throws
// RankDeficientError naming the kets whose projection residual onto the span
// of the preceding ones is below tolerance.
BasisSet build_basis(const CMatrix& kets, Index support_size, double rank_tol = kRankTol);

// Appends the given kets, dropping any whose residual after projection onto
// the running span is below rank_tol * |ket| (they are representable in the
// existing blocks). support_size is unchanged.
BasisSet extend_basis(const BasisSet& b, const CMatrix& new_kets, double rank_tol = kRankTol);

// extend_basis variant reporting, for each appended ket, the column index it
// received in the result (-1 when it was dropped as in-span).
struct BasisExtension {
  BasisSet basis;
  std::vector<Index> position;
};
BasisExtension extend_basis_tracked(const BasisSet& b, const CMatrix& new_kets,
                                    double rank_tol = kRankTol);

// Coefficients X with kets * X * kets^dag = op, by least squares through a QR
// factorization of the ket matrix (exact when op is supported on the span).
// The result is Hermitized; residual_max_abs reports |kets X kets^dag - op|.
struct OperatorDecomposition {
  CMatrix coeffs;
  double residual_max_abs;
};
OperatorDecomposition decompose_on_basis(const BasisSet& b, const CMatrix& op);

// Ambient operator represented by a coefficient matrix on this basis.
CMatrix assemble_ambient(const BasisSet& b, const CMatrix& coeffs);

}  // namespace qfim
