#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfim {

// All dense values are complex double matrices in Eigen's default column-major
// layout. vec() below is therefore a straight memory reinterpretation of the
// entry buffer, and mat() its inverse.
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;
using Complex = std::complex<double>;

static_assert(!CMatrix::IsRowMajor, "column-major layout is part of the vec() contract");

// Default tolerances. All of them are relative to the scale of the inputs and
// can be overridden per call.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kSolveTol = 1e-12;
inline constexpr double kRankTol = 1e-10;
inline constexpr double kEigCut = 1e-12;

class QfimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public QfimError {
 public:
  using QfimError::QfimError;
};

class NotHermitianError : public QfimError {
 public:
  NotHermitianError(const std::string& what, double deviation)
      : QfimError(what), deviation(deviation) {}
  double deviation;
};

class SingularMatrixError : public QfimError {
 public:
  SingularMatrixError(const std::string& what, double condition)
      : QfimError(what), condition(condition) {}
  double condition;  // 1-norm condition estimate at the point of failure
};

// Raised when a set of kets fails the linear-independence certificate. The
// offending indices are the kets whose projection residual onto the span of
// the preceding ones fell below tolerance (Appendix-C critical points; the
// caller must reduce the basis).
class RankDeficientError : public QfimError {
 public:
  RankDeficientError(const std::string& what, std::vector<Index> indices,
                     double sigma_min, double sigma_max)
      : QfimError(what),
        indices(std::move(indices)),
        sigma_min(sigma_min),
        sigma_max(sigma_max) {}
  std::vector<Index> indices;
  double sigma_min;
  double sigma_max;
};

// 2x2 block layout of a matrix; block 11 has size row_split x col_split.
struct BlockPartition {
  Index row_split = 0;
  Index col_split = 0;
};

inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const RMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_deviation(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : max_abs(CMatrix(m - m.adjoint()));
}

inline bool is_hermitian(const CMatrix& m, double tol = kHermitianTol) {
  if (m.rows() != m.cols()) return false;
  return hermiticity_deviation(m) <= tol * std::max(1.0, max_abs(m));
}

inline CMatrix hermitian_part(const CMatrix& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace qfim
