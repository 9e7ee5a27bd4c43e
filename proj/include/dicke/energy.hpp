#pragma once

#include <array>

#include "dicke/model.hpp"

namespace dicke {

// Scaled ground-state energy per atom in the N -> infinity limit:
//   E = omega rho^2 + (Omega + U rho^2)(mu^2 - 1/2) - 2 rho mu C zeta_+
inline double scaled_energy_with_zeta(const ModelParams& p, double rho, double mu,
                                      double zeta_plus) {
  const double mu2 = mu * mu;
  const double rho2 = rho * rho;
  return p.omega * rho2 + (p.Omega + p.U * rho2) * (mu2 - 0.5) -
         2.0 * rho * mu * std::sqrt(1.0 - mu2) * zeta_plus;
}

// Raw evaluation without constructing a state; the degenerate zeta branch is
// selected when rho*mu < kDegenerateRhoMu.
double energy_at(const ModelParams& p, double rho, double mu, double theta, double eta);

double scaled_energy(const ModelParams& p, const MeanFieldState& s);

// Left-hand sides of the four equilibrium equations. A stationary point has
// all four below tolerance. Relation to the energy gradient:
//   dE/drho = 2 r_rho, dE/dmu = 2 r_mu, dE/dtheta = 2 r_theta, dE/deta = -2 r_eta.
struct Residuals {
  double rho;
  double mu;
  double theta;
  double eta;

  double max_abs() const;
};

// Throws DomainError when mu >= kMuMax (the C^{-1} factor diverges).
Residuals equilibrium_residuals(const ModelParams& p, const MeanFieldState& s);

// The 4x4 Hessian of the scaled energy splits into an amplitude block over
// (rho, mu) and a phase block M' [[z+, -z-], [-z-, z+]] with M' = 2 rho mu C.
struct HessianBlocks {
  double a11, a12, a22;  // amplitude sector (a21 = a12)
  double p11, p12, p22;  // phase sector (p21 = p12, p11 = p22)
};

HessianBlocks hessian(const ModelParams& p, const MeanFieldState& s);

// Closed-form eigenvalues: m1 <= m2 from the amplitude block,
// m3 = 2 lambda M' cos(theta - eta), m4 = 2 kappa M' cos(theta + eta).
std::array<double, 4> hessian_eigenvalues(const ModelParams& p, const MeanFieldState& s);

enum class StabilityClass { StableMinimum, Saddle, Maximum, Marginal };

std::string_view to_string(StabilityClass c);

struct StabilityReport {
  std::array<double, 4> m;
  StabilityClass cls;
  bool rank_reduced;  // true when the NP rank-2 rule dropped m3, m4
};

// |m| below this counts as zero when classifying (phase boundaries).
double marginal_tolerance(const ModelParams& p);

// at_np applies the rank-2 reduction: in NP the angles are physically
// undetermined and m3 = m4 = 0 are dropped from the classification.
StabilityReport classify_stability(const ModelParams& p, const MeanFieldState& s, bool at_np);

}  // namespace dicke
