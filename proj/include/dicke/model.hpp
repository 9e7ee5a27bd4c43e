#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string_view>

namespace dicke {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// mu = 1 makes C = 0 and the C^{-1} factors of the equilibrium equations
// singular; every state and search stays below this bound. The analytic
// superradiant solutions satisfy mu^2 <= 1/2, so nothing physical is cut off.
inline constexpr double kMuMax = 0.999;

// Product rho*mu below this selects the degenerate branch of zeta_pm.
inline constexpr double kDegenerateRhoMu = 1e-14;

// Canonical angle range [0, 2*pi).
double wrap_angle(double a);

// Circular distance between two angles, in [0, pi].
double angle_distance(double a, double b);

// Hamiltonian parameters: cavity frequency omega, level splitting Omega,
// corotating coupling lambda, counterrotating coupling kappa, nonlinear
// atom-field interaction U. hbar = 1 throughout.
struct ModelParams {
  double omega;
  double Omega;
  double lambda;
  double kappa;
  double U;

  ModelParams(double omega_, double Omega_, double lambda_, double kappa_, double U_ = 0.0);

  // Ratio t = kappa/lambda; undefined on the lambda = 0 line.
  std::optional<double> t() const;
};

// Variational point: cavity coherence alpha = rho e^{i theta}, spin
// coherence gamma = mu e^{i eta}. Angles are stored canonically in [0, 2*pi).
struct MeanFieldState {
  double rho;
  double mu;
  double theta;
  double eta;

  MeanFieldState(double rho_, double mu_, double theta_, double eta_);

  std::complex<double> alpha() const { return {rho * std::cos(theta), rho * std::sin(theta)}; }
  std::complex<double> gamma() const { return {mu * std::cos(eta), mu * std::sin(eta)}; }
  double spin_c() const { return std::sqrt(1.0 - mu * mu); }  // C = sqrt(1 - mu^2)
};

struct OrderParameters {
  double n_photon;  // <a^dag a>/N
  double jz;        // <J_z>/N
  double jx;        // <J_x>/N
  double jy;        // <J_y>/N
};

enum class PhaseLabel {
  NP,
  X_SP,
  X_RSP,
  P_SP,
  P_RSP,
  SP0,
  RSP0,
  SPX,
  SPP,
  COEX_PSP_NP,
  COEX_PRSP_NP,
  UNSTABLE,
};

std::string_view to_string(PhaseLabel label);

enum class ZetaSector { coherent, degenerate };

struct ZetaPair {
  double plus;
  double minus;
};

// zeta_pm = lambda cos(theta - eta) +- kappa cos(theta + eta); the degenerate
// sector (rho*mu = 0) drops the angle dependence and returns lambda +- kappa.
ZetaPair zeta_pm(double theta, double eta, double lambda, double kappa, ZetaSector sector);

OrderParameters order_parameters(const MeanFieldState& s);

// Abstract position-momentum representation, per-sqrt(N) scale:
// (rho cos theta, rho sin theta, mu cos eta, mu sin eta).
struct Quadratures {
  double xa;
  double pa;
  double xc;
  double pc;
};

Quadratures quadratures(const MeanFieldState& s);

// Max-norm distance in the quadrature representation. Used as the state
// metric everywhere: it identifies states that differ only by angles at
// zero amplitude.
double quadrature_distance(const MeanFieldState& a, const MeanFieldState& b);

}  // namespace dicke
