#include <qfim/closed_forms.hpp>

namespace qfim {
namespace closed_forms {

RMatrix two_source_qfim(const GeneratorMoments& m, double p1,
                        const Eigen::Vector3d& delta) {
  if (!(p1 > 0.0) || !(p1 < 1.0)) {
    throw QfimError("two_source_qfim: p1 must lie strictly between 0 and 1");
  }
  const Eigen::Vector3d h = imaging::cov_g_delta_g(m, delta);
  const double var_dg = imaging::var_delta_g(m, delta);
  RMatrix out = RMatrix::Zero(7, 7);
  out.block<3, 3>(0, 0) = m.cov;
  out.block<3, 3>(3, 3) = m.cov;
  out.block<3, 3>(0, 3) = (2.0 * p1 - 1.0) * m.cov;
  out.block<3, 3>(3, 0) = (2.0 * p1 - 1.0) * m.cov;
  out.block<3, 1>(3, 6) = 2.0 * h;
  out.block<1, 3>(6, 3) = 2.0 * h.transpose();
  out(6, 6) = var_dg / (p1 * (1.0 - p1));
  return 4.0 * out;
}

RMatrix two_source_gamma(const GeneratorMoments& m, double p1,
                         const Eigen::Vector3d& delta) {
  if (!(p1 > 0.0) || !(p1 < 1.0)) {
    throw QfimError("two_source_gamma: p1 must lie strictly between 0 and 1");
  }
  const Eigen::Vector3d h = imaging::cov_g_delta_g(m, delta);
  const double var_dg = imaging::var_delta_g(m, delta);
  const Eigen::Vector3d g23 = imaging::gamma23_combination(m, delta);
  if (!(var_dg > 0.0)) {
    throw QfimError("two_source_gamma: Var(delta.g) vanishes");
  }
  const Eigen::Matrix3d g12 = 2.0 * p1 * (p1 - 1.0) * g23 * h.transpose() / var_dg;
  RMatrix out = RMatrix::Zero(7, 7);
  out.block<3, 3>(3, 0) = g12;
  out.block<3, 3>(0, 3) = -g12.transpose();
  out.block<3, 1>(0, 6) = g23;
  out.block<1, 3>(6, 0) = -g23.transpose();
  out.block<3, 1>(3, 6) = (2.0 * p1 - 1.0) * g23;
  out.block<1, 3>(6, 3) = -(2.0 * p1 - 1.0) * g23.transpose();
  return 4.0 * out;
}

double three_source_distance_qfi(const GeneratorMoments& m, double p2) {
  return 4.0 * (1.0 - p2) * m.cov(0, 0);
}

double two_source_scaled_qfi(const GeneratorMoments& m, double q, double p2) {
  return (1.0 + 4.0 * q * q + 4.0 * q * (2.0 * p2 - 1.0)) * m.cov(0, 0);
}

RMatrix three_source_intensity_qfim(const GeneratorMoments& m, double p1, double p2,
                                    double delta_x) {
  const double denom = (1.0 - p2) * (4.0 * p1 + p2) - 4.0 * p1 * p1;
  if (std::abs(denom) < 1e-14) {
    throw QfimError("three_source_intensity_qfim: vanishing denominator");
  }
  const double pre = delta_x * delta_x * m.cov(0, 0) / denom;
  RMatrix out(2, 2);
  out(0, 0) = 16.0 * (1.0 - p2);
  out(0, 1) = out(1, 0) = 4.0 * (1.0 + 2.0 * p1 - p2);
  out(1, 1) = 1.0 + 8.0 * p1;
  return pre * out;
}

}  // namespace closed_forms
}  // namespace qfim
