#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dicke/analytic.hpp"
#include "dicke/energy.hpp"
#include "dicke/errors.hpp"
#include "dicke/oracle.hpp"
#include "support/test_support.hpp"

using namespace dicke;

TEST_CASE("grid search finds the expected basins") {
  const ModelParams np_pt{1, 1, 0.3, 0.3, 0};
  const auto cands_np = grid_search(np_pt, SearchSpec::default_for(np_pt));
  REQUIRE(cands_np.size() >= 1);
  CHECK(cands_np.front().rho < 0.1);
  CHECK(cands_np.front().mu < 0.1);

  const ModelParams sp_pt{1, 1, 1, 1, 0};
  const auto cands_sp = grid_search(sp_pt, SearchSpec::default_for(sp_pt));
  REQUIRE(cands_sp.size() >= 2);
  int near_zero = 0, near_pi = 0;
  for (const auto& c : cands_sp) {
    if (std::fabs(c.rho - 0.968) > 0.25 || std::fabs(c.mu - 0.612) > 0.15) continue;
    if (angle_distance(c.theta, 0) < 0.3 && angle_distance(c.eta, 0) < 0.3) ++near_zero;
    if (angle_distance(c.theta, kPi) < 0.3 && angle_distance(c.eta, kPi) < 0.3) ++near_pi;
  }
  CHECK(near_zero >= 1);
  CHECK(near_pi >= 1);

  // TC point: a ring of candidates with theta = eta
  const ModelParams tc{1, 1, 1.5, 0, 0};
  const auto ring = grid_search(tc, SearchSpec::default_for(tc));
  int on_ring = 0;
  for (const auto& c : ring) {
    if (c.rho > 0.1 && angle_distance(c.theta, c.eta) < 0.3) ++on_ring;
  }
  CHECK(on_ring >= 8);
}

TEST_CASE("refine converges back to a perturbed analytic point") {
  const ModelParams p{1, 1, 1, 1, 0};
  const auto exact = sp_solutions(p, SpBranch::X).front();
  const MeanFieldState bumped(exact.rho + 1e-3, exact.mu - 1e-3, exact.theta + 1e-3,
                              exact.eta - 1e-3);
  const auto polished = refine(p, bumped, 1e-10);
  CHECK(quadrature_distance(polished, exact) < 1e-8);
  CHECK(equilibrium_residuals(p, polished).max_abs() < 1e-10);
}

TEST_CASE("refine stays at the NP stationary point") {
  const ModelParams p{1, 1, 0.3, 0.3, 0};
  const auto out = refine(p, MeanFieldState(0, 0, 1.0, 2.0), 1e-10);
  CHECK(out.rho == 0.0);
  CHECK(out.mu == 0.0);
}

TEST_CASE("refine walks into the x-SP basin") {
  const ModelParams p{1, 1, 1, 1, 0};
  const auto out = refine(p, MeanFieldState(0.5, 0.5, 0, 0), 1e-10);
  CHECK(out.rho == doctest::Approx(0.9682458366).epsilon(1e-7));
  CHECK(out.mu == doctest::Approx(0.6123724357).epsilon(1e-7));
  CHECK(angle_distance(out.theta, 0) < 1e-6);
  CHECK(angle_distance(out.eta, 0) < 1e-6);
}

TEST_CASE("refine keeps the energy non-increasing") {
  testing::Sampler gen;
  const ModelParams p{1, 1, 1.2, -0.4, 0};
  for (int i = 0; i < 10; ++i) {
    const auto init = gen.state(0.9);
    const auto out = refine(p, init, 1e-9);
    CHECK(scaled_energy(p, out) <= scaled_energy(p, init) + 1e-14);
  }
}

TEST_CASE("global minima: free atoms, Dicke point, TC manifold") {
  const auto free_ms = global_minima(ModelParams{1, 1, 0, 0, 0});
  CHECK(free_ms.ground_energy == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(free_ms.states.size() == 1);
  CHECK(!free_ms.degenerate_manifold);

  const auto dicke_ms = global_minima(ModelParams{1, 1, 1, 1, 0});
  CHECK(dicke_ms.ground_energy == doctest::Approx(-1.0625).epsilon(1e-9));
  REQUIRE(dicke_ms.states.size() == 2);
  CHECK(!dicke_ms.degenerate_manifold);
  CHECK(angle_distance(dicke_ms.states[0].theta, 0) < 1e-6);
  CHECK(angle_distance(dicke_ms.states[1].theta, kPi) < 1e-6);

  const auto tc_ms = global_minima(ModelParams{1, 1, 1.5, 0, 0});
  CHECK(tc_ms.degenerate_manifold);
  CHECK(tc_ms.states.size() == 16);
  // -(zeta^4 + 1)/(4 zeta^2) at zeta = 1.5
  CHECK(tc_ms.ground_energy == doctest::Approx(-6.0625 / 9.0).epsilon(1e-9));
  const auto rel = manifold_relation(tc_ms.states);
  REQUIRE(rel.has_value());
  CHECK(rel->corotating);
  CHECK(angle_distance(rel->offset, 0) < 1e-6);
}

TEST_CASE("minimizers pass the stability gate") {
  for (const auto& [lam, kap] : std::vector<std::pair<double, double>>{
           {0.3, 0.3}, {1, 1}, {1, -1}, {-1.4, -0.2}, {1.5, 0}, {0, -1.3}}) {
    const ModelParams p{1, 1, lam, kap, 0};
    const auto ms = global_minima(p);
    for (const auto& s : ms.states) {
      const bool at_np = s.rho * s.mu < 1e-12;
      const auto rep = classify_stability(p, s, at_np);
      CHECK(rep.cls != StabilityClass::Saddle);
      CHECK(rep.cls != StabilityClass::Maximum);
    }
  }
}

TEST_CASE("ground energy is a lower bound over random states") {
  testing::Sampler gen;
  for (const auto& [lam, kap] : std::vector<std::pair<double, double>>{{1, 1}, {0.7, -1.2}}) {
    const ModelParams p{1, 1, lam, kap, 0};
    const auto ms = global_minima(p);
    for (int i = 0; i < 1000; ++i) {
      CHECK(ms.ground_energy <= scaled_energy(p, gen.state(0.95)) + 1e-12);
    }
  }
}

TEST_CASE("identical inputs give identical minimizer sets") {
  const ModelParams p{1, 1, 1.1, -0.6, 0};
  const auto a = global_minima(p);
  const auto b = global_minima(p);
  REQUIRE(a.states.size() == b.states.size());
  CHECK(a.ground_energy == b.ground_energy);
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    CHECK(a.states[i].rho == b.states[i].rho);
    CHECK(a.states[i].theta == b.states[i].theta);
  }
}

TEST_CASE("oracle matches the analytic atlas on a coarse grid") {
  for (int i = 0; i <= 8; ++i) {
    for (int j = 0; j <= 8; ++j) {
      const double lam = -2.0 + 0.5 * i;
      const double kap = -2.0 + 0.5 * j;
      const ModelParams p{1, 1, lam, kap, 0};

      double analytic = -0.5;  // NP energy
      for (SpBranch b : {SpBranch::X, SpBranch::P, SpBranch::DEG_LAMBDA, SpBranch::DEG_KAPPA}) {
        if ((b == SpBranch::DEG_LAMBDA && !kappa_is_zero(p)) ||
            (b == SpBranch::DEG_KAPPA && !lambda_is_zero(p))) {
          continue;
        }
        if (!sp_stable(p, b)) continue;
        analytic = std::min(analytic, sp_ground_energy(p, b));
      }

      const auto ms = global_minima(p);
      CHECK(std::fabs(ms.ground_energy - analytic) < 1e-6);
    }
  }
}

TEST_CASE("oracle handles U != 0") {
  // Small nonlinear coupling shifts the superradiant minimum but keeps it
  // a clean minimum; the oracle must still satisfy its own residual gate.
  const ModelParams p{1, 1, 1, 1, 0.2};
  const auto ms = global_minima(p);
  REQUIRE(!ms.states.empty());
  for (const auto& s : ms.states) {
    CHECK(equilibrium_residuals(p, s).max_abs() < 1e-10);
  }
  CHECK(ms.ground_energy < -0.5);
}
