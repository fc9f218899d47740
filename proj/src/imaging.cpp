#include <qfim/imaging.hpp>

#include <cmath>

namespace qfim {
namespace imaging {

namespace {

const char* axis_name(Axis a) { return a == Axis::X ? "x" : (a == Axis::Y ? "y" : "z"); }

double coordinate(const Source& s, Axis a) {
  return a == Axis::X ? s.x : (a == Axis::Y ? s.y : s.z);
}

}  // namespace

ParamSpec ParamSpec::position(Index source, Axis axis, std::string name) {
  ParamSpec p;
  p.terms = {{source, axis, 1.0}};
  p.name = name.empty()
               ? std::string(axis_name(axis)) + std::to_string(source + 1)
               : std::move(name);
  return p;
}

ParamSpec ParamSpec::intensity(Index source, std::string name) {
  ParamSpec p;
  p.intensity_source = source;
  p.name = name.empty() ? "p" + std::to_string(source + 1) : std::move(name);
  return p;
}

ParamSpec ParamSpec::combo(std::vector<PositionTerm> terms, std::string name) {
  ParamSpec p;
  p.terms = std::move(terms);
  p.name = std::move(name);
  return p;
}

RVector ImagingScene::probabilities() const {
  RVector p(num_sources());
  for (Index s = 0; s < num_sources(); ++s) p(s) = sources[s].intensity;
  return p / p.sum();
}

std::vector<std::string> validate_scene(const ImagingScene& scene) {
  if (scene.num_points() < 2) throw QfimError("scene: need at least 2 collection points");
  if (scene.num_sources() < 1) throw QfimError("scene: need at least 1 source");
  if (!(scene.k > 0.0)) throw QfimError("scene: wavenumber k must be positive");
  if (!(scene.z0 > 0.0)) throw QfimError("scene: distance z0 must be positive");
  double total = 0.0;
  for (const Source& s : scene.sources) {
    if (s.intensity < 0.0) throw QfimError("scene: negative source intensity");
    total += s.intensity;
  }
  if (!(total > 0.0)) throw QfimError("scene: total intensity must be positive");
  for (const ParamSpec& spec : scene.estimate) {
    if (spec.intensity_source) {
      if (*spec.intensity_source < 0 || *spec.intensity_source >= scene.num_sources()) {
        throw QfimError("scene: intensity parameter source index out of range");
      }
      if (*spec.intensity_source == scene.num_sources() - 1) {
        throw QfimError("scene: the last source's probability is fixed by normalization");
      }
      if (scene.num_sources() < 2) {
        throw QfimError("scene: intensity estimation needs at least 2 sources");
      }
    } else {
      if (spec.terms.empty()) throw QfimError("scene: empty parameter descriptor");
      for (const PositionTerm& t : spec.terms) {
        if (t.source < 0 || t.source >= scene.num_sources()) {
          throw QfimError("scene: position parameter source index out of range");
        }
      }
    }
  }
  std::vector<std::string> warnings;
  double extent = 0.0;
  for (const Source& s : scene.sources) {
    extent = std::max({extent, std::abs(s.x), std::abs(s.y), std::abs(s.z)});
  }
  for (const CollectionPoint& c : scene.collection_points) {
    extent = std::max({extent, std::abs(c.v), std::abs(c.w)});
  }
  if (extent > 0.1 * scene.z0) {
    warnings.push_back("paraxial sanity: max coordinate " + std::to_string(extent) +
                       " exceeds 0.1 * z0");
  }
  return warnings;
}

GeneratorSet generators(const ImagingScene& scene) {
  const Index nc = scene.num_points();
  GeneratorSet g{RVector(nc), RVector(nc), RVector(nc)};
  for (Index j = 0; j < nc; ++j) {
    const double v = scene.collection_points[j].v;
    const double w = scene.collection_points[j].w;
    g.gx(j) = scene.k * v / scene.z0;
    g.gy(j) = scene.k * w / scene.z0;
    g.gz(j) = scene.k * (v * v + w * w) / (2.0 * scene.z0 * scene.z0);
  }
  return g;
}

CVector reference_state(Index num_points) {
  return CVector::Constant(num_points, Complex(1.0 / std::sqrt(double(num_points)), 0.0));
}

CVector source_ket(const ImagingScene& scene, Index s) {
  const GeneratorSet g = generators(scene);
  const Source& src = scene.sources[s];
  const Index nc = scene.num_points();
  CVector ket(nc);
  const double norm = 1.0 / std::sqrt(double(nc));
  for (Index j = 0; j < nc; ++j) {
    const double phase = g.gx(j) * src.x + g.gy(j) * src.y + g.gz(j) * src.z;
    ket(j) = norm * std::exp(Complex(0.0, -phase));
  }
  return ket;
}

CMatrix photon_state(const ImagingScene& scene) {
  const RVector p = scene.probabilities();
  CMatrix rho = CMatrix::Zero(scene.num_points(), scene.num_points());
  for (Index s = 0; s < scene.num_sources(); ++s) {
    const CVector ket = source_ket(scene, s);
    rho += p(s) * ket * ket.adjoint();
  }
  return hermitian_part(rho);
}

DerivativeData derivative_kets(const ImagingScene& scene, const ParamSpec& spec) {
  const Index nc = scene.num_points();
  DerivativeData out;
  if (spec.intensity_source) {
    const CVector ks = source_ket(scene, *spec.intensity_source);
    const CVector kl = source_ket(scene, scene.num_sources() - 1);
    out.extension_kets.resize(nc, 0);
    out.drho = ks * ks.adjoint() - kl * kl.adjoint();
    return out;
  }
  const GeneratorSet g = generators(scene);
  const RVector p = scene.probabilities();
  const Complex im(0.0, 1.0);
  out.extension_kets.resize(nc, static_cast<Index>(spec.terms.size()));
  out.drho = CMatrix::Zero(nc, nc);
  for (std::size_t t = 0; t < spec.terms.size(); ++t) {
    const PositionTerm& term = spec.terms[t];
    const CVector ket = source_ket(scene, term.source);
    const CVector dket = -im * g.axis(term.axis).cast<Complex>().cwiseProduct(ket);
    out.extension_kets.col(static_cast<Index>(t)) = dket;
    out.drho += term.coeff * p(term.source) *
                (dket * ket.adjoint() + ket * dket.adjoint());
  }
  out.drho = hermitian_part(out.drho);
  return out;
}

StateModel build_state_model(const ImagingScene& scene, double rank_tol) {
  validate_scene(scene);
  const Index ns = scene.num_sources();
  CMatrix kets(scene.num_points(), ns);
  for (Index s = 0; s < ns; ++s) kets.col(s) = source_ket(scene, s);
  BasisSet basis;
  try {
    basis = build_basis(kets, ns, rank_tol);
  } catch (const RankDeficientError& err) {
    throw RankDeficientError(
        "build_state_model: source kets dependent (coincident sources?): " +
            std::string(err.what()),
        err.indices, err.sigma_min, err.sigma_max);
  }
  const CMatrix rho = scene.probabilities().cast<Complex>().asDiagonal();

  std::vector<ParameterSlot> slots;
  for (const ParamSpec& spec : scene.estimate) {
    const DerivativeData data = derivative_kets(scene, spec);
    const BasisExtension ext = extend_basis_tracked(basis, data.extension_kets, rank_tol);
    ParameterSlot slot;
    slot.name = spec.name;
    const Index e = ext.basis.size() - ns;
    slot.extension_kets.resize(scene.num_points(), e);
    Index at = 0;
    for (Index j = 0; j < data.extension_kets.cols(); ++j) {
      if (ext.position[j] >= 0) slot.extension_kets.col(at++) = data.extension_kets.col(j);
    }
    OperatorDecomposition dec = decompose_on_basis(ext.basis, data.drho);
    const double scale = std::max(1.0, max_abs(data.drho));
    if (dec.residual_max_abs > 1e-10 * scale) {
      throw QfimError("build_state_model: slot '" + spec.name +
                      "' decomposition residual " + std::to_string(dec.residual_max_abs));
    }
    if (e > 0) dec.coeffs.bottomRightCorner(e, e).setZero();
    slot.drho_coeffs = std::move(dec.coeffs);
    slots.push_back(std::move(slot));
  }
  return make_state_model(std::move(basis), rho, std::move(slots), rank_tol);
}

GeneratorMoments generator_moments(const ImagingScene& scene) {
  const GeneratorSet g = generators(scene);
  const Index nc = scene.num_points();
  const std::array<const RVector*, 3> gs = {&g.gx, &g.gy, &g.gz};
  GeneratorMoments m;
  for (int a = 0; a < 3; ++a) m.mean(a) = gs[a]->mean();
  std::array<RVector, 3> centered;
  for (int a = 0; a < 3; ++a) centered[a] = gs[a]->array() - m.mean(a);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      m.cov(a, b) = centered[a].dot(centered[b]) / static_cast<double>(nc);
    }
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        m.m3[a](b, c) =
            (centered[a].array() * centered[b].array() * centered[c].array()).mean();
      }
    }
  }
  return m;
}

double var_delta_g(const GeneratorMoments& m, const Eigen::Vector3d& delta) {
  return delta.dot(m.cov * delta);
}

Eigen::Vector3d cov_g_delta_g(const GeneratorMoments& m, const Eigen::Vector3d& delta) {
  return m.cov * delta;
}

Eigen::Vector3d gamma23_combination(const GeneratorMoments& m,
                                    const Eigen::Vector3d& delta) {
  Eigen::Vector3d out;
  for (int a = 0; a < 3; ++a) out(a) = 2.0 * delta.dot(m.m3[a] * delta);
  return out;
}

RMatrix centroid_relative_jacobian() {
  // Rows: old parameters (x1,y1,z1,x2,y2,z2,p1); columns: new (dx,dy,dz,
  // cx,cy,cz,p1) with r1 = c + d, r2 = c - d.
  RMatrix j = RMatrix::Zero(7, 7);
  for (int a = 0; a < 3; ++a) {
    j(a, a) = 1.0;
    j(3 + a, a) = -1.0;
    j(a, 3 + a) = 1.0;
    j(3 + a, 3 + a) = 1.0;
  }
  j(6, 6) = 1.0;
  return j;
}

std::vector<ParamSpec> two_source_raw_params() {
  std::vector<ParamSpec> out;
  for (Index s = 0; s < 2; ++s) {
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) out.push_back(ParamSpec::position(s, a));
  }
  out.push_back(ParamSpec::intensity(0));
  return out;
}

}  // namespace imaging
}  // namespace qfim
