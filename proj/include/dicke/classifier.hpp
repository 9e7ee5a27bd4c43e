#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dicke/analytic.hpp"
#include "dicke/energy.hpp"
#include "dicke/model.hpp"
#include "dicke/oracle.hpp"

namespace dicke {

enum class ClassifyMethod { analytic, oracle };

std::string_view to_string(ClassifyMethod m);

struct PhaseReport {
  ModelParams params;
  PhaseLabel label;
  bool np_is_stable;
  std::optional<SpBranch> sp_branch;
  MinimizerSet minimizers;            // ground manifold
  std::optional<MeanFieldState> metastable_np;  // set in coexistence regions
  OrderParameters order_params;       // of the representative (upper-branch) minimizer
  double ground_energy;
  StabilityReport stability;          // at the representative minimizer
  ClassifyMethod method;
};

// U = 0 points are classified from the closed forms; U != 0 falls back to
// the variational oracle.
PhaseReport classify(const ModelParams& p);

// Force the oracle path regardless of U.
PhaseReport classify_oracle(const ModelParams& p, const SearchSpec& spec);
PhaseReport classify_oracle(const ModelParams& p);

struct AxisSpec {
  std::string name;  // one of lambda, kappa, Omega, t, U
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  double value(int i) const;
};

struct SweepOptions {
  int verify_every = 0;      // > 0: run every k-th cell through the oracle
  bool force_oracle = false;
  std::optional<double> fixed_t;  // rewrite kappa = t * lambda in every cell
};

struct SweepGrid {
  AxisSpec axis1;
  AxisSpec axis2;
  ModelParams fixed;
  std::vector<PhaseReport> cells;  // row-major: index = i1 * axis2.count + i2
};

// Per-cell classify over two parameter axes; a t axis rewrites
// kappa = t * lambda cell by cell. Throws AxisError on bad axes.
SweepGrid sweep(const ModelParams& fixed, const AxisSpec& axis1, const AxisSpec& axis2,
                const SweepOptions& opts = {});

}  // namespace dicke
