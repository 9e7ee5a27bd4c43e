#include "dicke/classifier.hpp"

#include <cmath>
#include <stdexcept>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

MeanFieldState np_state() { return {0.0, 0.0, 0.0, 0.0}; }

MinimizerSet single_np_set(const ModelParams& p) {
  MinimizerSet ms;
  ms.states.push_back(np_state());
  ms.ground_energy = -0.5 * p.Omega;
  ms.degenerate_manifold = false;
  return ms;
}

PhaseReport np_report(const ModelParams& p) {
  PhaseReport r{p,
                PhaseLabel::NP,
                np_stable(p),
                std::nullopt,
                single_np_set(p),
                std::nullopt,
                {0.0, -0.5, 0.0, 0.0},
                -0.5 * p.Omega,
                classify_stability(p, np_state(), /*at_np=*/true),
                ClassifyMethod::analytic};
  return r;
}

PhaseReport sp_report(const ModelParams& p, PhaseLabel label, SpBranch branch, bool coexisting) {
  MinimizerSet ms;
  ms.states = sp_solutions(p, branch);
  ms.ground_energy = sp_ground_energy(p, branch);
  ms.degenerate_manifold = branch == SpBranch::DEG_LAMBDA || branch == SpBranch::DEG_KAPPA;

  const MeanFieldState& rep = ms.states.front();
  const bool discrete = !ms.degenerate_manifold;

  PhaseReport r{p,
                label,
                coexisting,
                branch,
                std::move(ms),
                coexisting ? std::optional<MeanFieldState>(np_state()) : std::nullopt,
                discrete ? table1_order_parameters(p, coexisting ? (label == PhaseLabel::COEX_PSP_NP
                                                                       ? PhaseLabel::P_SP
                                                                       : PhaseLabel::P_RSP)
                                                                 : label,
                                                   BranchSign::upper)
                         : order_parameters(rep),
                0.0,
                classify_stability(p, rep, /*at_np=*/false),
                ClassifyMethod::analytic};
  r.ground_energy = sp_ground_energy(p, branch);
  return r;
}

PhaseReport classify_analytic(const ModelParams& p) {
  const double sqw = std::sqrt(p.omega * p.Omega);
  const bool kz = kappa_is_zero(p);
  const bool lz = lambda_is_zero(p);

  if (kz && lz) return np_report(p);

  if (kz) {
    if (std::fabs(p.lambda) > sqw) {
      return sp_report(p, p.lambda > 0.0 ? PhaseLabel::SP0 : PhaseLabel::RSP0,
                       SpBranch::DEG_LAMBDA, false);
    }
    return np_report(p);
  }
  if (lz) {
    if (std::fabs(p.kappa) > sqw) {
      return sp_report(p, p.kappa > 0.0 ? PhaseLabel::SPX : PhaseLabel::SPP, SpBranch::DEG_KAPPA,
                       false);
    }
    return np_report(p);
  }

  const bool same_sign = (p.lambda > 0.0) == (p.kappa > 0.0);
  const SpBranch branch = same_sign ? SpBranch::X : SpBranch::P;
  const bool sp_exists = branch_zeta_plus(p, branch) > sqw;
  const bool np_ok = np_stable(p);

  if (!sp_exists) {
    if (!np_ok) throw std::logic_error("classify: no stable phase at U = 0");
    return np_report(p);
  }
  if (branch == SpBranch::X) {
    // X and NP regions are exactly complementary; coexistence is a P-branch feature.
    return sp_report(p, p.lambda > 0.0 ? PhaseLabel::X_SP : PhaseLabel::X_RSP, branch, false);
  }
  if (np_ok) {
    return sp_report(p,
                     p.lambda > 0.0 ? PhaseLabel::COEX_PSP_NP : PhaseLabel::COEX_PRSP_NP,
                     branch, true);
  }
  return sp_report(p, p.lambda > 0.0 ? PhaseLabel::P_SP : PhaseLabel::P_RSP, branch, false);
}

PhaseLabel oracle_label(const ModelParams& p, const MinimizerSet& ms,
                        const StabilityReport& stab, bool at_np) {
  if (at_np) {
    return (stab.cls == StabilityClass::StableMinimum || stab.cls == StabilityClass::Marginal)
               ? PhaseLabel::NP
               : PhaseLabel::UNSTABLE;
  }
  if (stab.cls == StabilityClass::Saddle || stab.cls == StabilityClass::Maximum) {
    return PhaseLabel::UNSTABLE;
  }

  if (ms.degenerate_manifold) {
    if (kappa_is_zero(p)) return p.lambda > 0.0 ? PhaseLabel::SP0 : PhaseLabel::RSP0;
    if (lambda_is_zero(p)) return p.kappa > 0.0 ? PhaseLabel::SPX : PhaseLabel::SPP;
    // off-line manifold: dispatch on the realized angle relation
    const MeanFieldState& s = ms.states.front();
    const double lcd = p.lambda * std::cos(s.theta - s.eta);
    return lcd >= 0.0 ? (p.lambda > 0.0 ? PhaseLabel::SP0 : PhaseLabel::RSP0)
                      : (p.kappa > 0.0 ? PhaseLabel::SPX : PhaseLabel::SPP);
  }

  const MeanFieldState& s = ms.states.front();
  const bool x_type = std::fabs(std::sin(s.theta)) < 1e-3 && std::fabs(std::sin(s.eta)) < 1e-3;
  const bool p_type = std::fabs(std::cos(s.theta)) < 1e-3 && std::fabs(std::cos(s.eta)) < 1e-3;
  if (x_type) {
    return std::cos(s.theta) * std::cos(s.eta) > 0.0 ? PhaseLabel::X_SP : PhaseLabel::X_RSP;
  }
  if (p_type) {
    return std::sin(s.theta) * std::sin(s.eta) > 0.0 ? PhaseLabel::P_SP : PhaseLabel::P_RSP;
  }
  return PhaseLabel::UNSTABLE;
}

}  // namespace

std::string_view to_string(ClassifyMethod m) {
  return m == ClassifyMethod::analytic ? "analytic" : "oracle";
}

PhaseReport classify_oracle(const ModelParams& p, const SearchSpec& spec) {
  MinimizerSet ms = global_minima(p, spec);
  const MeanFieldState& rep = ms.states.front();
  const bool at_np = rep.rho < 1e-6 && rep.mu < 1e-6;
  const StabilityReport stab = classify_stability(p, rep, at_np);
  const PhaseLabel label = oracle_label(p, ms, stab, at_np);

  const StabilityReport np_stab = classify_stability(p, np_state(), true);
  const bool np_ok = np_stab.cls == StabilityClass::StableMinimum ||
                     np_stab.cls == StabilityClass::Marginal;

  PhaseReport r{p,
                label,
                np_ok,
                std::nullopt,
                std::move(ms),
                std::nullopt,
                order_parameters(rep),
                0.0,
                stab,
                ClassifyMethod::oracle};
  r.ground_energy = r.minimizers.ground_energy;
  return r;
}

PhaseReport classify_oracle(const ModelParams& p) {
  return classify_oracle(p, SearchSpec::default_for(p));
}

PhaseReport classify(const ModelParams& p) {
  if (p.U != 0.0) return classify_oracle(p);
  return classify_analytic(p);
}

double AxisSpec::value(int i) const {
  if (count <= 1) return min;
  return min + (max - min) * i / (count - 1);
}

namespace {

bool known_axis(const std::string& name) {
  return name == "lambda" || name == "kappa" || name == "Omega" || name == "t" || name == "U";
}

ModelParams cell_params(const ModelParams& fixed, const AxisSpec& a1, int i1, const AxisSpec& a2,
                        int i2, std::optional<double> t) {
  double lambda = fixed.lambda, kappa = fixed.kappa, Omega = fixed.Omega, U = fixed.U;

  const auto apply = [&](const AxisSpec& ax, int i) {
    const double v = ax.value(i);
    if (ax.name == "lambda") lambda = v;
    else if (ax.name == "kappa") kappa = v;
    else if (ax.name == "Omega") Omega = v;
    else if (ax.name == "U") U = v;
    else t = v;
  };
  apply(a1, i1);
  apply(a2, i2);
  if (t) kappa = *t * lambda;
  return {fixed.omega, Omega, lambda, kappa, U};
}

bool labels_compatible(PhaseLabel analytic, PhaseLabel oracle) {
  if (analytic == oracle) return true;
  // the oracle sees only the global minimum of a coexistence region
  if (analytic == PhaseLabel::COEX_PSP_NP && oracle == PhaseLabel::P_SP) return true;
  if (analytic == PhaseLabel::COEX_PRSP_NP && oracle == PhaseLabel::P_RSP) return true;
  return false;
}

}  // namespace

SweepGrid sweep(const ModelParams& fixed, const AxisSpec& axis1, const AxisSpec& axis2,
                const SweepOptions& opts) {
  for (const AxisSpec* ax : {&axis1, &axis2}) {
    if (!known_axis(ax->name)) throw AxisError("sweep: unknown axis '" + ax->name + "'");
    if (ax->count < 1) throw AxisError("sweep: axis count must be >= 1");
    if (ax->name == "Omega" && (ax->min <= 0.0 || ax->max <= 0.0)) {
      throw AxisError("sweep: Omega axis must stay positive");
    }
  }
  if (axis1.name == axis2.name) throw AxisError("sweep: duplicate axis '" + axis1.name + "'");
  const bool has_t = axis1.name == "t" || axis2.name == "t";
  const bool has_kappa = axis1.name == "kappa" || axis2.name == "kappa";
  if ((has_t || opts.fixed_t) && has_kappa) {
    throw AxisError("sweep: the t ratio rewrites kappa; drop the kappa axis");
  }
  if (has_t && opts.fixed_t) throw AxisError("sweep: both a t axis and a fixed t given");

  SweepGrid grid{axis1, axis2, fixed, {}};
  grid.cells.reserve(static_cast<std::size_t>(axis1.count) * axis2.count);

  for (int i1 = 0; i1 < axis1.count; ++i1) {
    for (int i2 = 0; i2 < axis2.count; ++i2) {
      const ModelParams p = cell_params(fixed, axis1, i1, axis2, i2, opts.fixed_t);
      PhaseReport cell = (opts.force_oracle && p.U == 0.0) ? classify_oracle(p) : classify(p);

      if (opts.verify_every > 0 && !opts.force_oracle && p.U == 0.0) {
        const std::size_t flat = static_cast<std::size_t>(i1) * axis2.count + i2;
        if (flat % static_cast<std::size_t>(opts.verify_every) == 0) {
          const PhaseReport check = classify_oracle(p);
          const double scale = std::max(1.0, std::fabs(cell.ground_energy));
          if (std::fabs(check.ground_energy - cell.ground_energy) > 1e-6 * scale ||
              !labels_compatible(cell.label, check.label)) {
            throw std::runtime_error(
                "sweep: oracle disagrees with analytic classification at cell (" +
                std::to_string(i1) + ", " + std::to_string(i2) + ")");
          }
        }
      }
      grid.cells.push_back(std::move(cell));
    }
  }
  return grid;
}

}  // namespace dicke
