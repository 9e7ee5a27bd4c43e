#pragma once

#include <optional>
#include <vector>

#include "dicke/model.hpp"

namespace dicke {

// Brute-force search specification over (rho, mu, theta, eta).
struct SearchSpec {
  double rho_max = 2.0;
  double mu_max = 0.95;
  int n_rho = 48;
  int n_mu = 48;
  int n_theta = 32;
  int n_eta = 32;
  double refine_tol = 1e-10;           // max |equilibrium residual| at convergence
  double degeneracy_tol_scale = 1e-9;  // tol = scale * max(1, |E0|)
  double angle_dedup_tol = 1e-4;       // radians

  // rho box scales with the couplings: SP amplitudes grow like zeta_+/omega.
  static SearchSpec default_for(const ModelParams& p);
};

struct MinimizerSet {
  std::vector<MeanFieldState> states;  // deduplicated, sorted by (theta, eta)
  double ground_energy = 0.0;
  // True when distinct angles share the ground energy at fixed (rho, mu):
  // the U(1) continua on the coupling lines.
  bool degenerate_manifold = false;
};

// All local grid minima within an energy window of the best cell,
// deduplicated at grid scale. Deterministic for a given spec.
std::vector<MeanFieldState> grid_search(const ModelParams& p, const SearchSpec& spec);

// Cyclic coordinate descent with golden-section line search per coordinate,
// projected onto rho >= 0, 0 <= mu <= mu_limit, angles mod 2pi. Converges
// when every equilibrium residual is below tol; throws ConvergenceError
// (best-so-far attached) after the iteration cap.
MeanFieldState refine(const ModelParams& p, const MeanFieldState& init, double tol,
                      double mu_limit = kMuMax);

// grid_search + refine + dedup; flags and canonicalizes degenerate manifolds.
MinimizerSet global_minima(const ModelParams& p, const SearchSpec& spec);

inline MinimizerSet global_minima(const ModelParams& p) {
  return global_minima(p, SearchSpec::default_for(p));
}

// Angle relation of a degenerate manifold: eta = theta + offset (corotating)
// or eta = offset - theta. nullopt when the states do not line up on either.
struct ManifoldRelation {
  bool corotating;
  double offset;
};

std::optional<ManifoldRelation> manifold_relation(const std::vector<MeanFieldState>& states);

}  // namespace dicke
