#include <qfim/tensor.hpp>

#include <cmath>

namespace qfim {

namespace {

void check_partition(const CMatrix& m, const BlockPartition& p, const char* who) {
  if (p.row_split < 0 || p.row_split > m.rows() || p.col_split < 0 ||
      p.col_split > m.cols()) {
    throw DimensionError(std::string(who) + ": partition out of range");
  }
}

}  // namespace

CVector vec(const CMatrix& m) { return m.reshaped(); }

CMatrix mat(const CVector& v, Index n) {
  if (n < 0 || v.size() != n * n) {
    throw DimensionError("mat: vector length " + std::to_string(v.size()) +
                         " is not " + std::to_string(n) + "^2");
  }
  return v.reshaped(n, n);
}

CVector vecb(const CMatrix& m, const BlockPartition& p) {
  check_partition(m, p, "vecb");
  const Index r = p.row_split, c = p.col_split;
  const Index rr = m.rows() - r, cr = m.cols() - c;
  CVector out(m.size());
  Index at = 0;
  const auto append = [&](const CMatrix& block) {
    out.segment(at, block.size()) = block.reshaped();
    at += block.size();
  };
  append(m.topLeftCorner(r, c));
  append(m.bottomLeftCorner(rr, c));
  append(m.topRightCorner(r, cr));
  append(m.bottomRightCorner(rr, cr));
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix tracy_singh(const CMatrix& a, const BlockPartition& pa, const CMatrix& b,
                    const BlockPartition& pb) {
  check_partition(a, pa, "tracy_singh");
  check_partition(b, pb, "tracy_singh");
  const Index ar[2] = {pa.row_split, a.rows() - pa.row_split};
  const Index ac[2] = {pa.col_split, a.cols() - pa.col_split};
  const Index br[2] = {pb.row_split, b.rows() - pb.row_split};
  const Index bc[2] = {pb.col_split, b.cols() - pb.col_split};
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  Index row0 = 0;
  for (int ia = 0; ia < 2; ++ia) {
    for (int ib = 0; ib < 2; ++ib) {
      Index col0 = 0;
      for (int ja = 0; ja < 2; ++ja) {
        for (int jb = 0; jb < 2; ++jb) {
          out.block(row0, col0, ar[ia] * br[ib], ac[ja] * bc[jb]) =
              kron(a.block(ia * ar[0], ja * ac[0], ar[ia], ac[ja]),
                   b.block(ib * br[0], jb * bc[0], br[ib], bc[jb]));
          col0 += ac[ja] * bc[jb];
        }
      }
      row0 += ar[ia] * br[ib];
    }
  }
  return out;
}

SolveResult solve(const CMatrix& a, const CVector& rhs, double singular_tol) {
  if (a.rows() != a.cols()) throw DimensionError("solve: matrix not square");
  if (a.rows() != rhs.size()) throw DimensionError("solve: rhs size mismatch");
  if (a.size() == 0) return {CVector(0), 1.0};
  Eigen::PartialPivLU<CMatrix> lu(a);
  const double rcond = lu.rcond();
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(rcond > singular_tol)) {
    throw SingularMatrixError("solve: matrix singular to tolerance", cond);
  }
  return {lu.solve(rhs), cond};
}

InverseResult inv(const CMatrix& a, double singular_tol) {
  if (a.rows() != a.cols()) throw DimensionError("inv: matrix not square");
  if (a.size() == 0) return {CMatrix(0, 0), 1.0};
  Eigen::PartialPivLU<CMatrix> lu(a);
  const double rcond = lu.rcond();
  const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(rcond > singular_tol)) {
    throw SingularMatrixError("inv: matrix singular to tolerance", cond);
  }
  return {lu.inverse(), cond};
}

HermitianEigen eig_hermitian(const CMatrix& a, double hermitian_tol) {
  if (a.rows() != a.cols()) throw DimensionError("eig_hermitian: matrix not square");
  const double dev = hermiticity_deviation(a);
  const double scale = std::max(1.0, max_abs(a));
  if (dev > hermitian_tol * scale) {
    throw NotHermitianError("eig_hermitian: input not Hermitian to tolerance", dev);
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a));
  if (es.info() != Eigen::Success) {
    throw QfimError("eig_hermitian: eigensolver failed to converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace qfim
