#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dicke/classifier.hpp"
#include "dicke/errors.hpp"
#include "support/test_support.hpp"

using namespace dicke;

TEST_CASE("classify: canonical points") {
  auto r = classify({1, 1, 1, 1, 0});
  CHECK(r.label == PhaseLabel::X_SP);
  CHECK(r.ground_energy == doctest::Approx(-1.0625).epsilon(1e-12));
  CHECK(!r.np_is_stable);
  CHECK(r.method == ClassifyMethod::analytic);
  CHECK(r.minimizers.states.size() == 2);
  CHECK(r.stability.cls == StabilityClass::StableMinimum);

  r = classify({1, 1, 0.2, 0.2, 0});
  CHECK(r.label == PhaseLabel::NP);
  CHECK(r.order_params.jz == -0.5);
  CHECK(r.stability.rank_reduced);

  r = classify({1, 1, 1, -0.5, 0});  // inside the coexistence interval (2/3, 2)
  CHECK(r.label == PhaseLabel::COEX_PSP_NP);
  CHECK(r.np_is_stable);
  REQUIRE(r.metastable_np.has_value());
  CHECK(r.metastable_np->rho == 0.0);
  CHECK(r.sp_branch == SpBranch::P);

  r = classify({1, 1, -1, -1, 0});
  CHECK(r.label == PhaseLabel::X_RSP);

  r = classify({1, 1, -2.5, 2.5, 0});  // anti-Dicke: NP is always stable
  CHECK(r.label == PhaseLabel::COEX_PRSP_NP);

  r = classify({1, 1, -2.5, 1.2, 0});  // |lambda+kappa| > 1 kills the NP
  CHECK(r.label == PhaseLabel::P_RSP);

  r = classify({1, 1, 1.5, 0, 0});
  CHECK(r.label == PhaseLabel::SP0);
  CHECK(r.minimizers.degenerate_manifold);

  r = classify({1, 1, -1.5, 0, 0});
  CHECK(r.label == PhaseLabel::RSP0);

  r = classify({1, 1, 0, 1.5, 0});
  CHECK(r.label == PhaseLabel::SPX);

  r = classify({1, 1, 0, -1.5, 0});
  CHECK(r.label == PhaseLabel::SPP);

  r = classify({1, 1, 0, 0, 0});
  CHECK(r.label == PhaseLabel::NP);
}

TEST_CASE("classify boundaries of the coexistence strip at t = -0.5") {
  // interval (2/3, 2): below, inside, above
  CHECK(classify({1, 1, 0.6, -0.3, 0}).label == PhaseLabel::NP);
  CHECK(classify({1, 1, 1.0, -0.5, 0}).label == PhaseLabel::COEX_PSP_NP);
  CHECK(classify({1, 1, 2.1, -1.05, 0}).label == PhaseLabel::P_SP);
}

TEST_CASE("oracle path is used for U != 0") {
  const auto r = classify({1, 1, 1, 1, 0.2});
  CHECK(r.method == ClassifyMethod::oracle);
  CHECK(r.label == PhaseLabel::X_SP);
  CHECK(r.ground_energy < -0.5);

  const auto rnp = classify({1, 1, 0.2, 0.2, 0.1});
  CHECK(rnp.method == ClassifyMethod::oracle);
  CHECK(rnp.label == PhaseLabel::NP);
}

TEST_CASE("analytic and oracle classification agree") {
  for (const auto& [lam, kap] : std::vector<std::pair<double, double>>{
           {0.3, 0.3}, {1, 1}, {-1.2, -0.6}, {1.3, -0.65}, {1.4, 0}, {0, -1.6}}) {
    const ModelParams p{1, 1, lam, kap, 0};
    const auto a = classify(p);
    const auto o = classify_oracle(p);
    CHECK(std::fabs(a.ground_energy - o.ground_energy) < 1e-6);
    const bool match =
        a.label == o.label ||
        (a.label == PhaseLabel::COEX_PSP_NP && o.label == PhaseLabel::P_SP) ||
        (a.label == PhaseLabel::COEX_PRSP_NP && o.label == PhaseLabel::P_RSP);
    CHECK(match);
  }
}

TEST_CASE("sweep: axis validation") {
  const ModelParams fixed{1, 1, 1, 1, 0};
  CHECK_THROWS_AS(sweep(fixed, {"lambda", 0, 1, 2}, {"lambda", 0, 1, 2}), AxisError);
  CHECK_THROWS_AS(sweep(fixed, {"omega", 0, 1, 2}, {"lambda", 0, 1, 2}), AxisError);
  CHECK_THROWS_AS(sweep(fixed, {"kappa", 0, 1, 2}, {"t", 0, 1, 2}), AxisError);
  CHECK_THROWS_AS(sweep(fixed, {"Omega", -1, 1, 2}, {"lambda", 0, 1, 2}), AxisError);
}

TEST_CASE("1x1 sweep equals a single classify") {
  const ModelParams fixed{1, 1, 0.4, 0.1, 0};
  const auto grid = sweep(fixed, {"lambda", 1.1, 1.1, 1}, {"kappa", 0.55, 0.55, 1});
  REQUIRE(grid.cells.size() == 1);
  const auto direct = classify({1, 1, 1.1, 0.55, 0});
  CHECK(grid.cells[0].label == direct.label);
  CHECK(grid.cells[0].ground_energy == direct.ground_energy);
}

TEST_CASE("NP region of a lambda-Omega sweep at t = 1 is |lambda| <= sqrt(Omega)/2") {
  const ModelParams fixed{1, 1, 0, 0, 0};
  SweepOptions opts;
  opts.fixed_t = 1.0;
  const auto grid = sweep(fixed, {"lambda", -1.5, 1.5, 31}, {"Omega", 0.25, 4.0, 16}, opts);
  int checked = 0;
  for (int i = 0; i < 31; ++i) {
    for (int j = 0; j < 16; ++j) {
      const auto& cell = grid.cells[i * 16 + j];
      const double lam = grid.axis1.value(i);
      const double lam_c = 0.5 * std::sqrt(grid.axis2.value(j));
      if (std::fabs(std::fabs(lam) - lam_c) < 1e-9) continue;  // exactly critical
      CHECK((cell.label == PhaseLabel::NP) == (std::fabs(lam) < lam_c));
      ++checked;
    }
  }
  CHECK(checked > 400);
}

TEST_CASE("t axis rewrites kappa cell by cell") {
  const ModelParams fixed{1, 1, 2.0, 99.0, 0};  // kappa overridden by the t axis
  const auto grid = sweep(fixed, {"t", -1, 1, 5}, {"Omega", 1, 1, 1});
  REQUIRE(grid.cells.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(grid.cells[i].params.kappa ==
          doctest::Approx(grid.axis1.value(i) * 2.0).epsilon(1e-14));
  }
}

TEST_CASE("labels flip only at stability boundaries along a row") {
  const ModelParams fixed{1, 1, 0, 0, 0};
  const auto grid = sweep(fixed, {"lambda", 0.05, 3.0, 60}, {"t", -0.5, -0.5, 1});
  for (int i = 0; i + 1 < 60; ++i) {
    const auto& a = grid.cells[i];
    const auto& b = grid.cells[i + 1];
    if (a.label == b.label) continue;
    // a flip must be accompanied by an np_stable or sp-existence change
    const bool np_flip = a.np_is_stable != b.np_is_stable;
    const bool sp_flip = a.sp_branch.has_value() != b.sp_branch.has_value();
    CHECK((np_flip || sp_flip));
  }
}

TEST_CASE("order parameters are continuous across the NP->SP boundary") {
  const ModelParams fixed{1, 1, 0, 0, 0};
  const int n = 201;
  const auto grid = sweep(fixed, {"lambda", 0.3, 0.7, n}, {"t", 1, 1, 1});
  for (int i = 0; i + 1 < n; ++i) {
    const auto& a = grid.cells[i];
    const auto& b = grid.cells[i + 1];
    CHECK(std::fabs(a.order_params.n_photon - b.order_params.n_photon) < 0.05);
    CHECK(std::fabs(a.order_params.jz - b.order_params.jz) < 0.05);
    if (a.label == PhaseLabel::NP) CHECK(a.order_params.jz == -0.5);
  }
}

TEST_CASE("mirror property: negating both couplings swaps SP and RSP") {
  testing::Sampler gen;
  for (int i = 0; i < 100; ++i) {
    const auto p = gen.params(2.0);
    const ModelParams q{p.omega, p.Omega, -p.lambda, -p.kappa, 0};
    const auto rp = classify(p);
    const auto rq = classify(q);
    const auto mirror = [](PhaseLabel l) {
      switch (l) {
        case PhaseLabel::X_SP: return PhaseLabel::X_RSP;
        case PhaseLabel::X_RSP: return PhaseLabel::X_SP;
        case PhaseLabel::P_SP: return PhaseLabel::P_RSP;
        case PhaseLabel::P_RSP: return PhaseLabel::P_SP;
        case PhaseLabel::SP0: return PhaseLabel::RSP0;
        case PhaseLabel::RSP0: return PhaseLabel::SP0;
        case PhaseLabel::SPX: return PhaseLabel::SPP;
        case PhaseLabel::SPP: return PhaseLabel::SPX;
        case PhaseLabel::COEX_PSP_NP: return PhaseLabel::COEX_PRSP_NP;
        case PhaseLabel::COEX_PRSP_NP: return PhaseLabel::COEX_PSP_NP;
        default: return l;
      }
    };
    CHECK(rq.label == mirror(rp.label));
    CHECK(rq.order_params.n_photon == doctest::Approx(rp.order_params.n_photon).epsilon(1e-12));
    CHECK(rq.order_params.jz == doctest::Approx(rp.order_params.jz).epsilon(1e-12));
  }
}

TEST_CASE("spot verification against the oracle passes") {
  const ModelParams fixed{1, 1, 0, 0, 0};
  SweepOptions opts;
  opts.verify_every = 5;
  CHECK_NOTHROW(sweep(fixed, {"lambda", -2, 2, 5}, {"kappa", -2, 2, 5}, opts));
}
