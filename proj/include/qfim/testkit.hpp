#pragma once

#include <qfim/state_model.hpp>

#include <random>

namespace qfim {
namespace testkit {

// A random full-rank model on a random (optionally orthonormal) support basis,
// together with the ambient forms the eigendecomposition oracle consumes.
struct RandomModel {
  StateModel model;
  CMatrix rho_ambient;
  std::vector<CMatrix> drhos_ambient;
};

struct RandomModelConfig {
  Index max_ambient_dim = 6;
  Index max_params = 3;
  bool orthonormal_basis = false;
  bool allow_extensions = true;
};

RandomModel random_state_model(std::mt19937_64& rng, const RandomModelConfig& cfg = {});

CMatrix random_hermitian(std::mt19937_64& rng, Index n);
CVector random_ket(std::mt19937_64& rng, Index n);

}  // namespace testkit
}  // namespace qfim
