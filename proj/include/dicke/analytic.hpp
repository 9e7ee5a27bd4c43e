#pragma once

#include <array>
#include <optional>
#include <vector>

#include "dicke/energy.hpp"
#include "dicke/model.hpp"

namespace dicke {

// Superradiant solution branches. X and P carry discrete phase differences;
// the DEG branches are the U(1) continua living on the kappa = 0 and
// lambda = 0 lines.
enum class SpBranch {
  X,           // zeta_+ = |lambda + kappa|, theta, eta in {0, pi}
  P,           // zeta_+ = |lambda - kappa|, theta, eta in {pi/2, 3pi/2}
  DEG_LAMBDA,  // kappa = 0 line, continuum with theta - eta in {0, pi}
  DEG_KAPPA,   // lambda = 0 line, continuum with theta + eta in {0, pi} mod 2pi
};

std::string_view to_string(SpBranch b);

// Relative test for the measure-zero coupling lines.
bool kappa_is_zero(const ModelParams& p);
bool lambda_is_zero(const ModelParams& p);

// The branch coupling zeta_+ realized by the stationary family.
double branch_zeta_plus(const ModelParams& p, SpBranch branch);

struct CriticalData {
  std::optional<double> lambda_c_x;  // sqrt(omega Omega)/|1+t|; empty at lambda = 0
  std::optional<double> lambda_c_p;  // sqrt(omega Omega)/|1-t|; empty at lambda = 0
  double kappa_c;                    // sqrt(omega Omega), lambda = 0 line
  std::optional<double> delta_L;     // coexistence width, t < -1
  std::optional<double> delta_U;     // coexistence width, t in (-1, 0)
  std::optional<double> delta;       // Delta / lambda_c_p
};

// Throws UnsupportedU when U != 0.
CriticalData critical_couplings(const ModelParams& p);

// Width of the p-SP/RSP + NP coexistence interval in |lambda| at fixed t.
// Throws UndefinedAtT at t = +-1 and on the lambda = 0 line; zero for t >= 0.
double coexistence_width(const ModelParams& p);

// Stationary states of the branch; empty when zeta_+^2 < omega*Omega.
// X/P return two representatives, upper branch first; DEG branches return
// deg_samples equally spaced points of the continuum.
std::vector<MeanFieldState> sp_solutions(const ModelParams& p, SpBranch branch,
                                         int deg_samples = 16);

// NP stability (amplitude sector): |lambda + kappa| <= sqrt(omega Omega).
bool np_stable(const ModelParams& p);

// Branch stability: threshold plus the sign constraints of the phase sector
// (lambda, kappa same sign for X, opposite for P; DEG branches own the
// coupling lines).
bool sp_stable(const ModelParams& p, SpBranch branch);

// Closed-form Hessian eigenvalues at the branch solution.
std::array<double, 4> sp_hessian_eigenvalues(const ModelParams& p, SpBranch branch);

enum class BranchSign { upper, lower };  // first/second row entry of the table

// Order parameters of the discrete phases from the printed closed forms.
// phase must be one of NP, X_SP, X_RSP, P_SP, P_RSP.
OrderParameters table1_order_parameters(const ModelParams& p, PhaseLabel phase, BranchSign sign);

// Ground energy at the branch solution: -(zeta_+^4 + omega^2 Omega^2) / (4 omega zeta_+^2).
double sp_ground_energy(const ModelParams& p, SpBranch branch);

}  // namespace dicke
