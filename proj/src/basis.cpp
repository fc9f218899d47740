#include <qfim/basis.hpp>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace qfim {

namespace {

// Indices of kets whose residual after projection onto the span of the
// preceding columns falls below tol * |ket|.
std::vector<Index> dependent_indices(const CMatrix& kets, double rank_tol) {
  std::vector<Index> out;
  for (Index j = 1; j < kets.cols(); ++j) {
    const auto head = kets.leftCols(j);
    const CVector v = kets.col(j);
    const CVector coeff = head.colPivHouseholderQr().solve(v);
    const double resid = (v - head * coeff).norm();
    if (resid <= rank_tol * v.norm()) out.push_back(j);
  }
  return out;
}

void certify_independent(const CMatrix& kets, double rank_tol, const char* who) {
  if (kets.cols() == 0) return;
  Eigen::JacobiSVD<CMatrix> svd(kets);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (kets.cols() > kets.rows() || !(smin > rank_tol * smax)) {
    throw RankDeficientError(std::string(who) + ": kets not linearly independent to tolerance",
                             dependent_indices(kets, rank_tol), smin, smax);
  }
}

}  // namespace

BasisSet build_basis(const CMatrix& kets, Index support_size, double rank_tol) {
  if (support_size < 0 || support_size > kets.cols()) {
    throw DimensionError("build_basis: support_size out of range");
  }
  certify_independent(kets, rank_tol, "build_basis");
  BasisSet b;
  b.kets = kets;
  b.support_size = support_size;
  b.gram = hermitian_part(kets.adjoint() * kets);
  b.rank_tol = rank_tol;
  return b;
}

BasisExtension extend_basis_tracked(const BasisSet& b, const CMatrix& new_kets,
                                    double rank_tol) {
  if (new_kets.cols() > 0 && new_kets.rows() != b.ambient_dim()) {
    throw DimensionError("extend_basis: ambient dimension mismatch");
  }
  CMatrix cols = b.kets;
  std::vector<Index> position(new_kets.cols(), -1);
  for (Index j = 0; j < new_kets.cols(); ++j) {
    const CVector v = new_kets.col(j);
    double resid = v.norm();
    if (cols.cols() > 0) {
      const CVector coeff = cols.colPivHouseholderQr().solve(v);
      resid = (v - cols * coeff).norm();
    }
    if (resid <= rank_tol * v.norm()) continue;  // representable in the running span
    cols.conservativeResize(Eigen::NoChange, cols.cols() + 1);
    cols.col(cols.cols() - 1) = v;
    position[j] = cols.cols() - 1;
  }
  BasisExtension ext;
  ext.basis = build_basis(cols, b.support_size, rank_tol);
  ext.position = std::move(position);
  return ext;
}

BasisSet extend_basis(const BasisSet& b, const CMatrix& new_kets, double rank_tol) {
  return extend_basis_tracked(b, new_kets, rank_tol).basis;
}

OperatorDecomposition decompose_on_basis(const BasisSet& b, const CMatrix& op) {
  if (op.rows() != b.ambient_dim() || op.cols() != b.ambient_dim()) {
    throw DimensionError("decompose_on_basis: operator dimension mismatch");
  }
  const Index m = b.size();
  // Thin QR of the ket matrix; solving through R keeps the conditioning at
  // cond(kets) instead of cond(gram).
  Eigen::HouseholderQR<CMatrix> qr(b.kets);
  const CMatrix q = qr.householderQ() * CMatrix::Identity(b.ambient_dim(), m);
  const CMatrix r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  const CMatrix y = q.adjoint() * op * q;
  const auto rt = r.triangularView<Eigen::Upper>();
  CMatrix x = rt.solve(y);                    // R^-1 Y
  x = rt.solve(CMatrix(x.adjoint())).adjoint();  // (R^-1 (R^-1 Y)^dag)^dag = R^-1 Y R^-dag
  x = hermitian_part(x);
  const double resid = max_abs(CMatrix(b.kets * x * b.kets.adjoint() - op));
  return {std::move(x), resid};
}

CMatrix assemble_ambient(const BasisSet& b, const CMatrix& coeffs) {
  if (coeffs.rows() != b.size() || coeffs.cols() != b.size()) {
    throw DimensionError("assemble_ambient: coefficient dimension mismatch");
  }
  return b.kets * coeffs * b.kets.adjoint();
}

}  // namespace qfim
