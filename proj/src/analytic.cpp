#include "dicke/analytic.hpp"

#include <cmath>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

constexpr double kZeroRel = 1e-12;

void require_u_zero(const ModelParams& p, const char* what) {
  if (p.U != 0.0) {
    throw UnsupportedU(std::string(what) + ": closed forms require U = 0");
  }
}

double coupling_scale(const ModelParams& p) {
  return std::max({std::fabs(p.lambda), std::fabs(p.kappa), p.omega});
}

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

// Amplitudes of the superradiant solution for a given zeta_+.
struct SpAmplitudes {
  double mu;
  double c;
  double rho;
};

std::optional<SpAmplitudes> sp_amplitudes(const ModelParams& p, double zeta) {
  const double wW = p.omega * p.Omega;
  if (zeta * zeta < wW) return std::nullopt;
  const double mu2 = 0.5 * (1.0 - wW / (zeta * zeta));
  const double mu = std::sqrt(mu2);
  const double c = std::sqrt(1.0 - mu2);
  return SpAmplitudes{mu, c, zeta * mu * c / p.omega};
}

void require_deg_line(const ModelParams& p, SpBranch branch) {
  if (branch == SpBranch::DEG_LAMBDA && !kappa_is_zero(p)) {
    throw PhaseMismatch("DEG_LAMBDA branch requires kappa = 0");
  }
  if (branch == SpBranch::DEG_KAPPA && !lambda_is_zero(p)) {
    throw PhaseMismatch("DEG_KAPPA branch requires lambda = 0");
  }
}

}  // namespace

std::string_view to_string(SpBranch b) {
  switch (b) {
    case SpBranch::X: return "X";
    case SpBranch::P: return "P";
    case SpBranch::DEG_LAMBDA: return "DEG_LAMBDA";
    case SpBranch::DEG_KAPPA: return "DEG_KAPPA";
  }
  return "?";
}

bool kappa_is_zero(const ModelParams& p) {
  return std::fabs(p.kappa) < kZeroRel * coupling_scale(p);
}

bool lambda_is_zero(const ModelParams& p) {
  return std::fabs(p.lambda) < kZeroRel * coupling_scale(p);
}

double branch_zeta_plus(const ModelParams& p, SpBranch branch) {
  switch (branch) {
    case SpBranch::X: return std::fabs(p.lambda + p.kappa);
    case SpBranch::P: return std::fabs(p.lambda - p.kappa);
    case SpBranch::DEG_LAMBDA: return std::fabs(p.lambda);
    case SpBranch::DEG_KAPPA: return std::fabs(p.kappa);
  }
  return 0.0;
}

CriticalData critical_couplings(const ModelParams& p) {
  require_u_zero(p, "critical_couplings");
  const double sqw = std::sqrt(p.omega * p.Omega);

  CriticalData out;
  out.kappa_c = sqw;

  const auto t = p.t();
  if (!t) return out;  // lambda = 0 line: only kappa_c is meaningful

  out.lambda_c_x = sqw / std::fabs(1.0 + *t);  // +inf at t = -1
  out.lambda_c_p = sqw / std::fabs(1.0 - *t);  // +inf at t = +1

  if (*t < 0.0 && *t != -1.0) {
    const double denom = *t * *t - 1.0;
    if (*t < -1.0) {
      out.delta_L = 2.0 * sqw / denom;
      out.delta = -2.0 / (1.0 + *t);
    } else {
      out.delta_U = 2.0 * *t * sqw / denom;
      out.delta = -2.0 * *t / (1.0 + *t);
    }
  }
  return out;
}

double coexistence_width(const ModelParams& p) {
  require_u_zero(p, "coexistence_width");
  const auto t = p.t();
  if (!t) throw UndefinedAtT("coexistence width undefined on the lambda = 0 line");
  if (*t == 1.0 || *t == -1.0) {
    throw UndefinedAtT("coexistence width undefined at t = +-1");
  }
  if (*t >= 0.0) return 0.0;
  const CriticalData cd = critical_couplings(p);
  return *t < -1.0 ? *cd.delta_L : *cd.delta_U;
}

std::vector<MeanFieldState> sp_solutions(const ModelParams& p, SpBranch branch, int deg_samples) {
  require_u_zero(p, "sp_solutions");
  require_deg_line(p, branch);

  const double zeta = branch_zeta_plus(p, branch);
  const auto amp = sp_amplitudes(p, zeta);
  if (!amp) return {};

  std::vector<MeanFieldState> states;
  switch (branch) {
    case SpBranch::X: {
      // cos(theta)cos(eta) = sign(lambda + kappa) realizes zeta_+ = |lambda + kappa|
      if (sign_of(p.lambda + p.kappa) >= 0) {
        states.emplace_back(amp->rho, amp->mu, 0.0, 0.0);
        states.emplace_back(amp->rho, amp->mu, kPi, kPi);
      } else {
        states.emplace_back(amp->rho, amp->mu, 0.0, kPi);
        states.emplace_back(amp->rho, amp->mu, kPi, 0.0);
      }
      break;
    }
    case SpBranch::P: {
      if (sign_of(p.lambda - p.kappa) >= 0) {
        states.emplace_back(amp->rho, amp->mu, 0.5 * kPi, 0.5 * kPi);
        states.emplace_back(amp->rho, amp->mu, 1.5 * kPi, 1.5 * kPi);
      } else {
        states.emplace_back(amp->rho, amp->mu, 0.5 * kPi, 1.5 * kPi);
        states.emplace_back(amp->rho, amp->mu, 1.5 * kPi, 0.5 * kPi);
      }
      break;
    }
    case SpBranch::DEG_LAMBDA: {
      const double offset = p.lambda >= 0.0 ? 0.0 : kPi;  // eta = theta (+ pi for lambda < 0)
      for (int k = 0; k < deg_samples; ++k) {
        const double th = kTwoPi * k / deg_samples;
        states.emplace_back(amp->rho, amp->mu, th, th + offset);
      }
      break;
    }
    case SpBranch::DEG_KAPPA: {
      const double offset = p.kappa >= 0.0 ? 0.0 : kPi;  // theta + eta = 0 (pi for kappa < 0)
      for (int k = 0; k < deg_samples; ++k) {
        const double th = kTwoPi * k / deg_samples;
        states.emplace_back(amp->rho, amp->mu, th, offset - th);
      }
      break;
    }
  }
  return states;
}

bool np_stable(const ModelParams& p) {
  require_u_zero(p, "np_stable");
  return std::fabs(p.lambda + p.kappa) <= std::sqrt(p.omega * p.Omega);
}

bool sp_stable(const ModelParams& p, SpBranch branch) {
  require_u_zero(p, "sp_stable");
  const double sqw = std::sqrt(p.omega * p.Omega);
  const bool kz = kappa_is_zero(p);
  const bool lz = lambda_is_zero(p);

  switch (branch) {
    case SpBranch::X:
      if (kz || lz) return false;
      return sign_of(p.lambda) == sign_of(p.kappa) && std::fabs(p.lambda + p.kappa) >= sqw;
    case SpBranch::P:
      if (kz || lz) return false;
      return sign_of(p.lambda) != sign_of(p.kappa) && std::fabs(p.lambda - p.kappa) >= sqw;
    case SpBranch::DEG_LAMBDA:
      return kz && std::fabs(p.lambda) >= sqw;
    case SpBranch::DEG_KAPPA:
      return lz && std::fabs(p.kappa) >= sqw;
  }
  return false;
}

std::array<double, 4> sp_hessian_eigenvalues(const ModelParams& p, SpBranch branch) {
  require_u_zero(p, "sp_hessian_eigenvalues");
  require_deg_line(p, branch);

  const double zeta = branch_zeta_plus(p, branch);
  const double wW = p.omega * p.Omega;
  if (zeta * zeta < wW) {
    throw EmptyBranch("sp_hessian_eigenvalues: branch has no superradiant solution");
  }

  const double z2 = zeta * zeta;
  const double z4 = z2 * z2;
  const double s = wW + z2;
  const double R = p.omega * p.omega + (8.0 * wW * wW - 4.0 * z4) / s +
                   4.0 * z4 * z4 / (p.omega * p.omega * s * s);
  const double mid = p.omega + 2.0 * z4 / (p.omega * s);
  const double sqrtR = std::sqrt(std::max(0.0, R));

  // lambda cos(theta-eta) and kappa cos(theta+eta) realized by the branch states
  double lcd = 0.0, kcd = 0.0;
  switch (branch) {
    case SpBranch::X: {
      const double c = sign_of(p.lambda + p.kappa) >= 0 ? 1.0 : -1.0;
      lcd = p.lambda * c;
      kcd = p.kappa * c;
      break;
    }
    case SpBranch::P: {
      const double c = sign_of(p.lambda - p.kappa) >= 0 ? 1.0 : -1.0;
      lcd = p.lambda * c;
      kcd = -p.kappa * c;
      break;
    }
    case SpBranch::DEG_LAMBDA:
      lcd = std::fabs(p.lambda);
      kcd = 0.0;  // flat U(1) direction
      break;
    case SpBranch::DEG_KAPPA:
      lcd = 0.0;
      kcd = std::fabs(p.kappa);
      break;
  }

  const double factor = zeta / p.omega * (1.0 - wW * wW / z4);
  return {mid - sqrtR, mid + sqrtR, lcd * factor, kcd * factor};
}

OrderParameters table1_order_parameters(const ModelParams& p, PhaseLabel phase, BranchSign sign) {
  require_u_zero(p, "table1_order_parameters");

  if (phase == PhaseLabel::NP) {
    return {0.0, -0.5, 0.0, 0.0};
  }

  const bool is_x = phase == PhaseLabel::X_SP || phase == PhaseLabel::X_RSP;
  const bool is_p = phase == PhaseLabel::P_SP || phase == PhaseLabel::P_RSP;
  if (!is_x && !is_p) {
    throw PhaseMismatch("table1_order_parameters: phase has no table row");
  }
  if (kappa_is_zero(p) || lambda_is_zero(p)) {
    throw PhaseMismatch("table1_order_parameters: discrete phases need both couplings nonzero");
  }

  const int sl = sign_of(p.lambda), sk = sign_of(p.kappa);
  if (phase == PhaseLabel::X_SP && !(sl > 0 && sk > 0))
    throw PhaseMismatch("x-SP needs lambda, kappa > 0");
  if (phase == PhaseLabel::X_RSP && !(sl < 0 && sk < 0))
    throw PhaseMismatch("x-RSP needs lambda, kappa < 0");
  if (phase == PhaseLabel::P_SP && !(sl > 0 && sk < 0))
    throw PhaseMismatch("p-SP needs lambda > 0 > kappa");
  if (phase == PhaseLabel::P_RSP && !(sl < 0 && sk > 0))
    throw PhaseMismatch("p-RSP needs kappa > 0 > lambda");

  const double t = p.kappa / p.lambda;
  const double lam2 = p.lambda * p.lambda;
  const double f = is_x ? (1.0 + t) : (1.0 - t);
  const double lc2 = p.omega * p.Omega / (f * f);  // lambda_{c,x/p}^2
  const double r2 = lc2 / lam2;
  const double r4 = r2 * r2;
  if (r4 > 1.0) {
    throw PhaseMismatch("table1_order_parameters: coupling below the critical point");
  }

  const double n = f * f * lam2 / (4.0 * p.omega * p.omega) * (1.0 - r4);
  const double jz = -0.5 * r2;
  const double dip = 0.5 * std::sqrt(1.0 - r4);
  const double upper = sign == BranchSign::upper ? 1.0 : -1.0;

  switch (phase) {
    case PhaseLabel::X_SP: return {n, jz, upper * dip, 0.0};
    case PhaseLabel::X_RSP: return {n, jz, -upper * dip, 0.0};
    case PhaseLabel::P_SP: return {n, jz, 0.0, -upper * dip};
    default: return {n, jz, 0.0, upper * dip};  // P_RSP
  }
}

double sp_ground_energy(const ModelParams& p, SpBranch branch) {
  require_u_zero(p, "sp_ground_energy");
  require_deg_line(p, branch);
  const double zeta = branch_zeta_plus(p, branch);
  const double wW = p.omega * p.Omega;
  if (zeta * zeta < wW) {
    throw EmptyBranch("sp_ground_energy: branch has no superradiant solution");
  }
  const double z2 = zeta * zeta;
  return -(z2 * z2 + wW * wW) / (4.0 * p.omega * z2);
}

}  // namespace dicke
