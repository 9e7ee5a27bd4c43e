#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "dicke/model.hpp"
#include "dicke/oracle.hpp"

namespace dicke {

inline constexpr std::uint64_t kDefaultSeed = 0xD1CE;

// Mean-field actions of the symmetry transformations. All act on
// (ModelParams, MeanFieldState) pairs; most touch only one of the two.
struct U1Rot {
  double phi = 0.0;
  enum class Convention { plus, minus } conv = Convention::plus;
};
struct ParityPiS {};  // (theta, eta) -> (theta + pi, eta + pi)
struct Tx {};         // (theta, eta) -> (-theta, -eta), reflection fixing the x axis
struct Tp {};         // (theta, eta) -> (pi - theta, pi - eta)
struct Sx {};         // Coxeter generator, same action as Tx
struct Sp {};         // Coxeter generator, same action as Tp
struct C2 {};         // s_x s_p: central inversion (theta, eta) -> (theta + pi, eta + pi)
struct V {};          // (eta, lambda, kappa) -> (-eta, kappa, lambda)
struct Vprime {};     // (eta, lambda, kappa) -> (pi - eta, -kappa, -lambda)
struct St {};         // reflection about the t = 1 line; acts like V
struct StPrime {};    // reflection about the t = -1 line; acts like V'
struct C2prime {};    // s_t s_t': (eta, lambda, kappa) -> (eta + pi, -lambda, -kappa)
struct Compose;

using Transform = std::variant<U1Rot, ParityPiS, Tx, Tp, Sx, Sp, C2, V, Vprime, St, StPrime,
                               C2prime, Compose>;

struct Compose {
  std::vector<Transform> seq;  // applied left to right
};

std::pair<ModelParams, MeanFieldState> apply(const Transform& tr, const ModelParams& p,
                                             const MeanFieldState& s);

enum class CoxeterGroup { W, Wprime };

// Verifies the defining relations (s s)^1 = e and (s s')^2 = e by applying
// the compositions to sampled states and parameters.
bool check_coxeter_relations(CoxeterGroup group, std::uint64_t seed = kDefaultSeed);

// Max |E(apply(tr, p, s)) - E(p, s)| over deterministic random states.
double energy_invariance(const Transform& tr, const ModelParams& p, int n_samples,
                         std::uint64_t seed = kDefaultSeed);

enum class TransformKind { Sx, Sp, C2, St, StPrime, C2prime, U1 };

std::string_view to_string(TransformKind k);

struct SymmetryVerdict {
  bool energy_invariant;
  bool manifold_preserved;  // minimizer set maps onto the set at the image parameters
  bool each_state_fixed;    // every minimizer maps to itself (mod 2pi)
  PhaseLabel phase_image;
  double max_energy_delta;
};

// Applies each W/W' generator (and a U(1) sample) to the oracle minimizer
// set and reports all three verdict granularities. U = 0 only.
std::map<TransformKind, SymmetryVerdict> table2_verdicts(const ModelParams& p);

// Published state-fixed verdict for the discrete phases. nullopt for the
// continuum phases, whose table semantics are ambiguous (see README).
std::optional<bool> table2_expected_state_fixed(PhaseLabel phase, TransformKind k);

struct ExchangeResult {
  PhaseLabel original;
  PhaseLabel image;
  bool mapping_ok;
};

// Checks the W' phase-exchange table: s_t swaps p-SP/p-RSP and cycles the
// coupling-line phases; s_t' swaps x-SP/x-RSP. Includes the minimizer
// correspondence. U = 0 only.
ExchangeResult phase_exchange_check(const Transform& tr, const ModelParams& p);

}  // namespace dicke
