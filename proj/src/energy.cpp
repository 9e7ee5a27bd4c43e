#include "dicke/energy.hpp"

#include <algorithm>
#include <cmath>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

ZetaSector sector_for(double rho, double mu) {
  return rho * mu < kDegenerateRhoMu ? ZetaSector::degenerate : ZetaSector::coherent;
}

void require_mu_regular(double mu) {
  if (mu >= kMuMax) {
    throw DomainError("mu >= 0.999: C^{-1} factor is singular");
  }
}

}  // namespace

double energy_at(const ModelParams& p, double rho, double mu, double theta, double eta) {
  const ZetaPair z = zeta_pm(theta, eta, p.lambda, p.kappa, sector_for(rho, mu));
  return scaled_energy_with_zeta(p, rho, mu, z.plus);
}

double scaled_energy(const ModelParams& p, const MeanFieldState& s) {
  return energy_at(p, s.rho, s.mu, s.theta, s.eta);
}

double Residuals::max_abs() const {
  return std::max({std::fabs(rho), std::fabs(mu), std::fabs(theta), std::fabs(eta)});
}

Residuals equilibrium_residuals(const ModelParams& p, const MeanFieldState& s) {
  require_mu_regular(s.mu);
  const double mu2 = s.mu * s.mu;
  const double c = s.spin_c();
  const ZetaPair z = zeta_pm(s.theta, s.eta, p.lambda, p.kappa, sector_for(s.rho, s.mu));

  const double sm = std::sin(s.theta - s.eta);
  const double sp = std::sin(s.theta + s.eta);
  const double amc = s.rho * s.mu * c;

  return {
      p.omega * s.rho + p.U * s.rho * (mu2 - 0.5) - s.mu * c * z.plus,
      (p.Omega + p.U * s.rho * s.rho) * s.mu - s.rho * (1.0 - 2.0 * mu2) / c * z.plus,
      amc * (p.lambda * sm + p.kappa * sp),
      amc * (p.lambda * sm - p.kappa * sp),
  };
}

HessianBlocks hessian(const ModelParams& p, const MeanFieldState& s) {
  require_mu_regular(s.mu);
  const double mu2 = s.mu * s.mu;
  const double c = s.spin_c();
  const double c3 = c * c * c;
  const ZetaPair z = zeta_pm(s.theta, s.eta, p.lambda, p.kappa, sector_for(s.rho, s.mu));

  const double mprime = 2.0 * s.rho * s.mu * c;
  return {
      2.0 * p.omega + 2.0 * p.U * (mu2 - 0.5),
      4.0 * p.U * s.rho * s.mu - 2.0 * (1.0 - 2.0 * mu2) / c * z.plus,
      2.0 * p.Omega + 2.0 * p.U * s.rho * s.rho + 2.0 * s.rho * s.mu * (3.0 - 2.0 * mu2) / c3 * z.plus,
      mprime * z.plus,
      -mprime * z.minus,
      mprime * z.plus,
  };
}

std::array<double, 4> hessian_eigenvalues(const ModelParams& p, const MeanFieldState& s) {
  const HessianBlocks h = hessian(p, s);
  const double tr = h.a11 + h.a22;
  const double disc = std::hypot(h.a11 - h.a22, 2.0 * h.a12);
  const double mprime = 2.0 * s.rho * s.mu * s.spin_c();
  return {
      0.5 * (tr - disc),
      0.5 * (tr + disc),
      2.0 * p.lambda * mprime * std::cos(s.theta - s.eta),
      2.0 * p.kappa * mprime * std::cos(s.theta + s.eta),
  };
}

std::string_view to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::StableMinimum: return "StableMinimum";
    case StabilityClass::Saddle: return "Saddle";
    case StabilityClass::Maximum: return "Maximum";
    case StabilityClass::Marginal: return "Marginal";
  }
  return "?";
}

double marginal_tolerance(const ModelParams& p) {
  return 1e-8 * std::max(1.0, p.omega + p.Omega);
}

StabilityReport classify_stability(const ModelParams& p, const MeanFieldState& s, bool at_np) {
  const std::array<double, 4> m = hessian_eigenvalues(p, s);
  const double tol = marginal_tolerance(p);
  const std::size_t active = at_np ? 2 : 4;

  int pos = 0, neg = 0, zero = 0;
  for (std::size_t i = 0; i < active; ++i) {
    if (m[i] > tol) {
      ++pos;
    } else if (m[i] < -tol) {
      ++neg;
    } else {
      ++zero;
    }
  }

  StabilityClass cls;
  if (neg > 0 && pos > 0) {
    cls = StabilityClass::Saddle;
  } else if (neg > 0) {
    cls = StabilityClass::Maximum;
  } else if (zero > 0) {
    cls = StabilityClass::Marginal;
  } else {
    cls = StabilityClass::StableMinimum;
  }
  return {m, cls, at_np};
}

}  // namespace dicke
