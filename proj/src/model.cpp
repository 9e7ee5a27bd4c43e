#include "dicke/model.hpp"

#include <cmath>
#include <stdexcept>

namespace dicke {

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // fmod + add can round up to exactly 2*pi
  return r;
}

double angle_distance(double a, double b) {
  double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, kTwoPi - d);
}

ModelParams::ModelParams(double omega_, double Omega_, double lambda_, double kappa_, double U_)
    : omega(omega_), Omega(Omega_), lambda(lambda_), kappa(kappa_), U(U_) {
  if (!(std::isfinite(omega) && std::isfinite(Omega) && std::isfinite(lambda) &&
        std::isfinite(kappa) && std::isfinite(U))) {
    throw std::invalid_argument("ModelParams: parameters must be finite");
  }
  if (!(omega > 0.0) || !(Omega > 0.0)) {
    throw std::invalid_argument("ModelParams: omega and Omega must be positive");
  }
}

std::optional<double> ModelParams::t() const {
  if (lambda == 0.0) return std::nullopt;
  return kappa / lambda;
}

MeanFieldState::MeanFieldState(double rho_, double mu_, double theta_, double eta_)
    : rho(rho_), mu(mu_), theta(wrap_angle(theta_)), eta(wrap_angle(eta_)) {
  if (!(std::isfinite(rho) && std::isfinite(mu) && std::isfinite(theta) && std::isfinite(eta))) {
    throw std::invalid_argument("MeanFieldState: fields must be finite");
  }
  if (rho < 0.0) throw std::invalid_argument("MeanFieldState: rho must be >= 0");
  if (mu < 0.0 || mu > kMuMax) {
    throw std::invalid_argument("MeanFieldState: mu must lie in [0, 0.999]");
  }
}

std::string_view to_string(PhaseLabel label) {
  switch (label) {
    case PhaseLabel::NP: return "NP";
    case PhaseLabel::X_SP: return "X_SP";
    case PhaseLabel::X_RSP: return "X_RSP";
    case PhaseLabel::P_SP: return "P_SP";
    case PhaseLabel::P_RSP: return "P_RSP";
    case PhaseLabel::SP0: return "SP0";
    case PhaseLabel::RSP0: return "RSP0";
    case PhaseLabel::SPX: return "SPX";
    case PhaseLabel::SPP: return "SPP";
    case PhaseLabel::COEX_PSP_NP: return "COEX_PSP_NP";
    case PhaseLabel::COEX_PRSP_NP: return "COEX_PRSP_NP";
    case PhaseLabel::UNSTABLE: return "UNSTABLE";
  }
  return "?";
}

ZetaPair zeta_pm(double theta, double eta, double lambda, double kappa, ZetaSector sector) {
  if (sector == ZetaSector::degenerate) {
    return {lambda + kappa, lambda - kappa};
  }
  const double co = std::cos(theta - eta);
  const double cc = std::cos(theta + eta);
  return {lambda * co + kappa * cc, lambda * co - kappa * cc};
}

OrderParameters order_parameters(const MeanFieldState& s) {
  const double c = s.spin_c();
  return {
      s.rho * s.rho,
      s.mu * s.mu - 0.5,
      c * s.mu * std::cos(s.eta),
      -c * s.mu * std::sin(s.eta),
  };
}

Quadratures quadratures(const MeanFieldState& s) {
  return {
      s.rho * std::cos(s.theta),
      s.rho * std::sin(s.theta),
      s.mu * std::cos(s.eta),
      s.mu * std::sin(s.eta),
  };
}

double quadrature_distance(const MeanFieldState& a, const MeanFieldState& b) {
  const Quadratures qa = quadratures(a);
  const Quadratures qb = quadratures(b);
  double d = std::fabs(qa.xa - qb.xa);
  d = std::max(d, std::fabs(qa.pa - qb.pa));
  d = std::max(d, std::fabs(qa.xc - qb.xc));
  d = std::max(d, std::fabs(qa.pc - qb.pc));
  return d;
}

}  // namespace dicke
