#pragma once

#include <qfim/types.hpp>

namespace qfim {

// Column-stacking vectorization. With the column-major entry layout this is a
// copy of the entry buffer in storage order.
CVector vec(const CMatrix& m);

// Inverse of vec on square matrices: the first n entries become column 0, the
// next n column 1, and so forth. Throws DimensionError unless v.size() == n*n.
CMatrix mat(const CVector& v, Index n);

// Block-wise vectorization for a 2x2 partition:
//   vecb(A) = [vec(A11); vec(A21); vec(A12); vec(A22)].
CVector vecb(const CMatrix& m, const BlockPartition& p);

// Kronecker product.
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Tracy--Singh product of 2x2-partitioned matrices: block ((ia,ib),(ja,jb)) of
// the result is A_{ia,ja} (x) B_{ib,jb}, with the a-index outer and the
// b-index inner on both rows and columns. With trivial partitions this reduces
// to kron, and it satisfies vecb(A B C) = (C^T (.) A) vecb(B) for conformable
// partitions.
CMatrix tracy_singh(const CMatrix& a, const BlockPartition& pa, const CMatrix& b,
                    const BlockPartition& pb);

struct SolveResult {
  CVector x;
  double condition;  // 1-norm condition estimate of the coefficient matrix
};

// Dense linear solve with conditioning diagnostics. Throws SingularMatrixError
// when the reciprocal condition estimate falls below singular_tol.
SolveResult solve(const CMatrix& a, const CVector& rhs, double singular_tol = kSolveTol);

struct InverseResult {
  CMatrix inverse;
  double condition;
};

InverseResult inv(const CMatrix& a, double singular_tol = kSolveTol);

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // unitary, columns are eigenvectors
};

// Eigendecomposition restricted to Hermitian inputs. The input is checked
// against hermitian_tol (relative) and symmetrized before factorization.
HermitianEigen eig_hermitian(const CMatrix& a, double hermitian_tol = kHermitianTol);

}  // namespace qfim
