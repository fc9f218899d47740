#pragma once

#include <qfim/qfim.hpp>

#include <array>
#include <optional>

namespace qfim {
namespace imaging {

enum class Axis { X = 0, Y = 1, Z = 2 };

struct Source {
  double x = 0.0, y = 0.0, z = 0.0;
  double intensity = 1.0;
};

struct CollectionPoint {
  double v = 0.0, w = 0.0;
};

// One estimated parameter: either the relative intensity p_s of a source (the
// last source's probability is eliminated by normalization), or a linear
// combination of source position coordinates, d(theta) moving source `source`
// along `axis` with weight `coeff`. A plain coordinate is a single-term combo.
struct PositionTerm {
  Index source = 0;
  Axis axis = Axis::X;
  double coeff = 1.0;
};

struct ParamSpec {
  std::string name;
  std::vector<PositionTerm> terms;        // empty for intensity parameters
  std::optional<Index> intensity_source;  // set for intensity parameters

  static ParamSpec position(Index source, Axis axis, std::string name = {});
  static ParamSpec intensity(Index source, std::string name = {});
  static ParamSpec combo(std::vector<PositionTerm> terms, std::string name);
};

struct ImagingScene {
  std::vector<Source> sources;
  std::vector<CollectionPoint> collection_points;
  double k = 0.0;   // wavenumber
  double z0 = 0.0;  // source-to-collection-plane distance
  std::vector<ParamSpec> estimate;

  Index num_sources() const { return static_cast<Index>(sources.size()); }
  Index num_points() const { return static_cast<Index>(collection_points.size()); }
  // p_s = I_s / I_tot
  RVector probabilities() const;
};

// Hard validation (counts, positivity); returns paraxial-sanity warnings when
// coordinates exceed 0.1 * z0.
std::vector<std::string> validate_scene(const ImagingScene& scene);

// Diagonal commuting generators in the collection-point basis:
// Gx = k V / z0, Gy = k W / z0, Gz = k (V^2 + W^2) / (2 z0^2).
struct GeneratorSet {
  RVector gx, gy, gz;  // diagonal entries, length Nc
  const RVector& axis(Axis a) const {
    return a == Axis::X ? gx : (a == Axis::Y ? gy : gz);
  }
};

GeneratorSet generators(const ImagingScene& scene);

// Uniform reference ket (1/sqrt(Nc)) sum_j |j>.
CVector reference_state(Index num_points);

// |psi(r_s)> = exp(-i Gx x - i Gy y - i Gz z) |psi(0)>, entrywise since the
// generators are diagonal.
CVector source_ket(const ImagingScene& scene, Index s);

// rho = sum_s p_s |psi_s><psi_s|.
CMatrix photon_state(const ImagingScene& scene);

// Extension kets (columns d|psi_s>/d(theta) = -i G |psi_s> per position term)
// and the ambient derivative of rho for one parameter.
struct DerivativeData {
  CMatrix extension_kets;  // Nc x (#position terms); zero columns for intensity
  CMatrix drho;            // ambient, Hermitian, traceless
};

DerivativeData derivative_kets(const ImagingScene& scene, const ParamSpec& spec);

// StateModel with B = {|psi_s>}, rho^B = diag(p), and one slot per estimate
// entry. Derivative coefficients are obtained by exact decomposition onto the
// extended bases; extension kets falling inside the running span are dropped.
StateModel build_state_model(const ImagingScene& scene, double rank_tol = kRankTol);

// Expectations with respect to the reference state; m3 holds the third
// central moments m3[a](b,c) = E[(g_a - <g_a>)(g_b - <g_b>)(g_c - <g_c>)].
struct GeneratorMoments {
  Eigen::Vector3d mean;
  Eigen::Matrix3d cov;
  std::array<Eigen::Matrix3d, 3> m3;
};

GeneratorMoments generator_moments(const ImagingScene& scene);

// delta-contractions used by the closed forms.
double var_delta_g(const GeneratorMoments& m, const Eigen::Vector3d& delta);
Eigen::Vector3d cov_g_delta_g(const GeneratorMoments& m, const Eigen::Vector3d& delta);
// 2 E[(g - <g>)(delta.g - <delta.g>)^2], the commutation-condition combination.
Eigen::Vector3d gamma23_combination(const GeneratorMoments& m, const Eigen::Vector3d& delta);

// Jacobian d(x1,y1,z1,x2,y2,z2,p1)/d(dx,dy,dz,cx,cy,cz,p1) for the two-source
// centroid/relative change of variables theta_rel = (r1 - r2)/2,
// theta_cen = (r1 + r2)/2.
RMatrix centroid_relative_jacobian();

// The raw seven-parameter list (x1..z2, p1) for a two-source scene.
std::vector<ParamSpec> two_source_raw_params();

}  // namespace imaging
}  // namespace qfim
