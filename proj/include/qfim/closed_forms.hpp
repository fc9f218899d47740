#pragma once

#include <qfim/imaging.hpp>

namespace qfim {
namespace closed_forms {

using imaging::GeneratorMoments;

// Lowest-paraxial-order 7x7 QFIM for two sources in (dx,dy,dz,cx,cy,cz,p1)
// ordering:
//   H = 4 [ Cov        (2p1-1)Cov   0                      ]
//       [ (2p1-1)Cov  Cov          2 h                     ]
//       [ 0           2 h^T        Var(delta.g)/(p1(1-p1)) ]
// with h = Cov(g) delta. The relative-coordinate rows decouple from p1; the
// centroid rows carry the h coupling.
RMatrix two_source_qfim(const GeneratorMoments& m, double p1, const Eigen::Vector3d& delta);

// Matching commutation-condition matrix. The diagonal blocks vanish; with
// g23 = 2 E[(g-<g>)(delta.g-<delta.g>)^2]:
//   Gamma(c,d)  = 4 * 2 p1 (p1-1) g23 h^T / Var(delta.g)
//   Gamma(d,p1) = 4 * g23
//   Gamma(c,p1) = 4 * (2p1-1) g23
RMatrix two_source_gamma(const GeneratorMoments& m, double p1, const Eigen::Vector3d& delta);

// Distance QFI for three equidistant x-axis sources (x = c -/0/+ dx), known
// intensities: H = 4 (1 - p2) Var(gx).
double three_source_distance_qfi(const GeneratorMoments& m, double p2);

// Two x-axis sources at x = c + dx(q -/+ 1/2), known intensities (p2 on the
// moving-ordered second source): H = [1 + 4q^2 + 4q(2 p2 - 1)] Var(gx).
double two_source_scaled_qfi(const GeneratorMoments& m, double q, double p2);

// Intensity QFIM for three equidistant x-axis sources, estimating (p1, p2):
//   dx^2 Var(gx) / [(1-p2)(4p1+p2) - 4p1^2] *
//   [ 16(1-p2)       4(1+2p1-p2) ]
//   [ 4(1+2p1-p2)    1+8p1       ]
RMatrix three_source_intensity_qfim(const GeneratorMoments& m, double p1, double p2,
                                    double delta_x);

}  // namespace closed_forms
}  // namespace qfim
