#include "dicke/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dicke/energy.hpp"
#include "dicke/errors.hpp"

namespace dicke {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;
constexpr int kLineSearchIters = 24;
constexpr int kMaxCycles = 100000;
constexpr std::size_t kMaxCandidates = 512;

void validate_spec(const SearchSpec& spec) {
  if (spec.n_rho < 2 || spec.n_mu < 2 || spec.n_theta < 1 || spec.n_eta < 1) {
    throw std::invalid_argument("SearchSpec: grid counts too small");
  }
  if (!(spec.rho_max > 0.0) || !(spec.mu_max > 0.0) || spec.mu_max > kMuMax) {
    throw std::invalid_argument("SearchSpec: bad box bounds");
  }
  if (!(spec.refine_tol > 0.0) || !(spec.degeneracy_tol_scale > 0.0) ||
      !(spec.angle_dedup_tol > 0.0)) {
    throw std::invalid_argument("SearchSpec: tolerances must be positive");
  }
}

// Minimize f over [a, b]; returns the best abscissa probed.
double golden_min(const std::function<double(double)>& f, double a, double b) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < kLineSearchIters; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

// Step of a symmetric 2x2 solve, dropping near-null directions (flat U(1)
// manifolds, NP limit) instead of inverting them.
void pseudo_solve2(double a, double b, double c, double g0, double g1, double& d0, double& d1) {
  d0 = d1 = 0.0;
  const double scale = std::max({std::fabs(a), std::fabs(b), std::fabs(c)});
  if (scale < 1e-300) return;

  const double half_diff = 0.5 * (a - c);
  const double root = std::hypot(half_diff, b);
  const double l1 = 0.5 * (a + c) - root;
  const double l2 = 0.5 * (a + c) + root;

  // eigenvector for l2 (the larger); the other is its normal
  double v0, v1;
  if (std::fabs(b) > 1e-300) {
    v0 = l2 - c;
    v1 = b;
  } else if (a >= c) {
    v0 = 1.0;
    v1 = 0.0;
  } else {
    v0 = 0.0;
    v1 = 1.0;
  }
  const double n = std::hypot(v0, v1);
  v0 /= n;
  v1 /= n;

  const double p2 = v0 * g0 + v1 * g1;    // projection on the l2 direction
  const double p1 = -v1 * g0 + v0 * g1;   // projection on the l1 direction
  const double cut = 1e-10 * scale;
  const double s2 = std::fabs(l2) > cut ? p2 / l2 : 0.0;
  const double s1 = std::fabs(l1) > cut ? p1 / l1 : 0.0;
  d0 = v0 * s2 - v1 * s1;
  d1 = v1 * s2 + v0 * s1;
}

bool states_equal(const MeanFieldState& a, const MeanFieldState& b, double amp_tol,
                  double angle_tol) {
  if (std::fabs(a.rho - b.rho) > amp_tol || std::fabs(a.mu - b.mu) > amp_tol) return false;
  if (std::min(a.rho, b.rho) > 1e-8 && angle_distance(a.theta, b.theta) > angle_tol) return false;
  if (std::min(a.mu, b.mu) > 1e-8 && angle_distance(a.eta, b.eta) > angle_tol) return false;
  return true;
}

double circular_mean(const std::vector<double>& angles) {
  double s = 0.0, c = 0.0;
  for (double a : angles) {
    s += std::sin(a);
    c += std::cos(a);
  }
  return wrap_angle(std::atan2(s, c));
}

// 1 - |mean resultant|: zero for perfectly aligned angles.
double circular_spread(const std::vector<double>& angles) {
  double s = 0.0, c = 0.0;
  for (double a : angles) {
    s += std::sin(a);
    c += std::cos(a);
  }
  return 1.0 - std::hypot(s, c) / static_cast<double>(angles.size());
}

struct Refined {
  MeanFieldState state;
  double energy;
};

}  // namespace

SearchSpec SearchSpec::default_for(const ModelParams& p) {
  SearchSpec s;
  s.rho_max = std::max(2.0, 3.0 * (std::fabs(p.lambda) + std::fabs(p.kappa)) / p.omega);
  return s;
}

std::vector<MeanFieldState> grid_search(const ModelParams& p, const SearchSpec& spec) {
  validate_spec(spec);

  const int nr = spec.n_rho, nm = spec.n_mu, nt = spec.n_theta, ne = spec.n_eta;
  const int n_ang = nt * ne;

  std::vector<double> rho(nr), mu(nm), theta(nt), eta(ne);
  for (int i = 0; i < nr; ++i) rho[i] = spec.rho_max * i / (nr - 1);
  for (int j = 0; j < nm; ++j) mu[j] = spec.mu_max * j / (nm - 1);
  for (int k = 0; k < nt; ++k) theta[k] = kTwoPi * k / nt;
  for (int l = 0; l < ne; ++l) eta[l] = kTwoPi * l / ne;

  // zeta_+ over the angle grid (coherent branch; the rho*mu factor kills the
  // coupling term wherever the degenerate branch would apply)
  std::vector<double> zeta(n_ang);
  for (int k = 0; k < nt; ++k) {
    for (int l = 0; l < ne; ++l) {
      zeta[k * ne + l] =
          zeta_pm(theta[k], eta[l], p.lambda, p.kappa, ZetaSector::coherent).plus;
    }
  }

  std::vector<double> energy(static_cast<std::size_t>(nr) * nm * n_ang);
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nm; ++j) {
      const double mu2 = mu[j] * mu[j];
      const double base =
          p.omega * rho[i] * rho[i] + (p.Omega + p.U * rho[i] * rho[i]) * (mu2 - 0.5);
      const double coupl = 2.0 * rho[i] * mu[j] * std::sqrt(1.0 - mu2);
      double* row = energy.data() + (static_cast<std::size_t>(i) * nm + j) * n_ang;
      for (int a = 0; a < n_ang; ++a) row[a] = base - coupl * zeta[a];
    }
  }

  const auto at = [&](int i, int j, int k, int l) -> double {
    return energy[((static_cast<std::size_t>(i) * nm + j) * nt + k) * ne + l];
  };

  double e_best = energy[0];
  for (double e : energy) e_best = std::min(e_best, e);
  const double window = 0.25 * std::max(1.0, std::fabs(e_best));

  std::vector<std::pair<double, MeanFieldState>> found;
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nm; ++j) {
      for (int k = 0; k < nt; ++k) {
        for (int l = 0; l < ne; ++l) {
          const double e = at(i, j, k, l);
          if (e > e_best + window) continue;
          if (i > 0 && at(i - 1, j, k, l) < e) continue;
          if (i + 1 < nr && at(i + 1, j, k, l) < e) continue;
          if (j > 0 && at(i, j - 1, k, l) < e) continue;
          if (j + 1 < nm && at(i, j + 1, k, l) < e) continue;
          if (nt > 1 && at(i, j, (k + nt - 1) % nt, l) < e) continue;
          if (nt > 1 && at(i, j, (k + 1) % nt, l) < e) continue;
          if (ne > 1 && at(i, j, k, (l + ne - 1) % ne) < e) continue;
          if (ne > 1 && at(i, j, k, (l + 1) % ne) < e) continue;
          found.emplace_back(e, MeanFieldState(rho[i], mu[j], theta[k], eta[l]));
        }
      }
    }
  }

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    const MeanFieldState &sa = a.second, &sb = b.second;
    return std::tie(sa.rho, sa.mu, sa.theta, sa.eta) < std::tie(sb.rho, sb.mu, sb.theta, sb.eta);
  });

  // collapse plateau duplicates (all angles at zero amplitude are one point)
  std::vector<MeanFieldState> out;
  for (const auto& [e, s] : found) {
    bool dup = false;
    for (const auto& kept : out) {
      if (quadrature_distance(s, kept) < 1e-9) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(s);
    if (out.size() >= kMaxCandidates) break;
  }
  return out;
}

MeanFieldState refine(const ModelParams& p, const MeanFieldState& init, double tol,
                      double mu_limit) {
  if (!(tol > 0.0)) throw std::invalid_argument("refine: tol must be positive");
  const double mu_hi = std::min(mu_limit, kMuMax - 1e-12);

  double x[4] = {init.rho, std::min(init.mu, mu_hi), init.theta, init.eta};
  double h[4] = {0.1 * (1.0 + x[0]), 0.05, 0.2, 0.2};

  const auto eval = [&](const double* v) { return energy_at(p, v[0], v[1], v[2], v[3]); };
  const auto make_state = [&](const double* v) {
    return MeanFieldState(std::max(0.0, v[0]), std::clamp(v[1], 0.0, mu_hi), v[2], v[3]);
  };
  const auto residual_at = [&](const double* v) {
    return equilibrium_residuals(p, make_state(v)).max_abs();
  };
  const auto project = [&](double* v) {
    v[0] = std::max(0.0, v[0]);
    v[1] = std::clamp(v[1], 0.0, mu_hi);
  };

  // Newton on the gradient system with the analytic block Hessian. Energy
  // comparisons alone bottom out at residuals ~sqrt(eps); this drives them
  // to the requested tolerance once coordinate descent is near-stationary.
  const auto newton_polish = [&](double* v) -> bool {
    double cur = residual_at(v);
    for (int it = 0; it < 40; ++it) {
      if (cur < tol) return true;
      const MeanFieldState s = make_state(v);
      const Residuals r = equilibrium_residuals(p, s);
      const HessianBlocks hb = hessian(p, s);

      double da0, da1, dp0, dp1;
      pseudo_solve2(hb.a11, hb.a12, hb.a22, 2.0 * r.rho, 2.0 * r.mu, da0, da1);
      pseudo_solve2(hb.p11, hb.p12, hb.p22, 2.0 * r.theta, -2.0 * r.eta, dp0, dp1);

      bool improved = false;
      for (double step = 1.0; step > 1e-4; step *= 0.5) {
        double trial[4] = {v[0] - step * da0, v[1] - step * da1, v[2] - step * dp0,
                           v[3] - step * dp1};
        project(trial);
        const double rn = residual_at(trial);
        if (rn < 0.9 * cur) {
          for (int i = 0; i < 4; ++i) v[i] = trial[i];
          cur = rn;
          improved = true;
          break;
        }
      }
      if (!improved) return cur < tol;
    }
    return cur < tol;
  };

  if (residual_at(x) < tol) return make_state(x);

  double f_cur = eval(x);
  double best_resid = residual_at(x);
  MeanFieldState best = make_state(x);
  int stalled = 0;

  for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
    double moved = 0.0;
    for (int c = 0; c < 4; ++c) {
      double lo = x[c] - h[c];
      double hi = x[c] + h[c];
      if (c == 0) lo = std::max(lo, 0.0);
      if (c == 1) {
        lo = std::max(lo, 0.0);
        hi = std::min(hi, mu_hi);
      }
      if (!(hi > lo)) continue;

      double trial[4] = {x[0], x[1], x[2], x[3]};
      const double xc = golden_min(
          [&](double v) {
            trial[c] = v;
            return eval(trial);
          },
          lo, hi);
      trial[c] = xc;
      const double f_new = eval(trial);
      if (f_new < f_cur) {
        const double step = std::fabs(xc - x[c]);
        moved = std::max(moved, step);
        x[c] = xc;
        f_cur = f_new;
        if (step > 0.9 * h[c]) h[c] = std::min(2.0 * h[c], 1.0);
      }
    }

    double resid = residual_at(x);
    if (resid < 1e-3 && newton_polish(x)) return make_state(x);
    resid = residual_at(x);
    f_cur = eval(x);

    if (resid < best_resid) {
      best_resid = resid;
      best = make_state(x);
      stalled = 0;
    } else {
      ++stalled;
    }
    if (resid < tol) return make_state(x);
    if (stalled > 60) break;  // descent and polish both exhausted

    const double hmax = std::max(std::max(h[0], h[1]), std::max(h[2], h[3]));
    if (moved < 0.05 * hmax) {
      for (double& hc : h) hc = std::max(0.3 * hc, 1e-14);
    }
  }

  throw ConvergenceError("refine: residuals did not converge", best, best_resid);
}

MinimizerSet global_minima(const ModelParams& p, const SearchSpec& spec) {
  const std::vector<MeanFieldState> cands = grid_search(p, spec);

  std::vector<Refined> refined;
  std::size_t failures = 0;
  std::string last_error;
  for (const auto& c : cands) {
    try {
      MeanFieldState s = refine(p, c, spec.refine_tol, spec.mu_max);
      refined.push_back({s, scaled_energy(p, s)});
    } catch (const ConvergenceError& err) {
      ++failures;
      last_error = err.what();
    }
  }
  if (refined.empty()) {
    throw ConvergenceError("global_minima: all " + std::to_string(failures) +
                           " candidates failed to refine (" + last_error + ")");
  }

  double e0 = refined.front().energy;
  for (const auto& r : refined) e0 = std::min(e0, r.energy);
  const double dtol = spec.degeneracy_tol_scale * std::max(1.0, std::fabs(e0));

  std::vector<Refined> ground;
  for (auto& r : refined) {
    if (r.energy > e0 + dtol) continue;
    if (r.state.rho < 1e-8 && r.state.mu < 1e-8) {
      r.state = MeanFieldState(0.0, 0.0, 0.0, 0.0);  // canonical NP point
    }
    ground.push_back(r);
  }

  std::sort(ground.begin(), ground.end(), [](const Refined& a, const Refined& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    const MeanFieldState &sa = a.state, &sb = b.state;
    return std::tie(sa.rho, sa.mu, sa.theta, sa.eta) < std::tie(sb.rho, sb.mu, sb.theta, sb.eta);
  });

  std::vector<MeanFieldState> unique;
  for (const auto& r : ground) {
    bool dup = false;
    for (const auto& kept : unique) {
      if (states_equal(r.state, kept, 1e-6, spec.angle_dedup_tol)) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(r.state);
  }

  MinimizerSet out;
  out.ground_energy = e0;
  const auto relation = unique.size() > 4 ? manifold_relation(unique) : std::nullopt;
  out.degenerate_manifold = relation.has_value();
  if (relation) {
    // Canonical 16-point resampling of the U(1) manifold for reproducible output.
    double rho0 = 0.0, mu0 = 0.0;
    for (const auto& s : unique) {
      rho0 += s.rho;
      mu0 += s.mu;
    }
    rho0 /= unique.size();
    mu0 /= unique.size();

    std::vector<MeanFieldState> canon;
    for (int k = 0; k < 16; ++k) {
      const double th = kTwoPi * k / 16;
      const double et = relation->corotating ? th + relation->offset : relation->offset - th;
      MeanFieldState seed(rho0, mu0, th, et);
      canon.push_back(refine(p, seed, spec.refine_tol, spec.mu_max));
    }
    out.states = std::move(canon);
  } else {
    out.states = std::move(unique);
  }

  std::sort(out.states.begin(), out.states.end(), [](const MeanFieldState& a, const MeanFieldState& b) {
    return std::tie(a.theta, a.eta, a.rho, a.mu) < std::tie(b.theta, b.eta, b.rho, b.mu);
  });
  return out;
}

std::optional<ManifoldRelation> manifold_relation(const std::vector<MeanFieldState>& states) {
  if (states.size() < 3) return std::nullopt;
  std::vector<double> diff, sum;
  diff.reserve(states.size());
  sum.reserve(states.size());
  for (const auto& s : states) {
    diff.push_back(wrap_angle(s.eta - s.theta));
    sum.push_back(wrap_angle(s.eta + s.theta));
  }
  const double sd = circular_spread(diff);
  const double ss = circular_spread(sum);
  if (std::min(sd, ss) > 1e-6) return std::nullopt;
  if (sd <= ss) return ManifoldRelation{true, circular_mean(diff)};
  return ManifoldRelation{false, circular_mean(sum)};
}

}  // namespace dicke

