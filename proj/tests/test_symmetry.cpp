#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dicke/classifier.hpp"
#include "dicke/errors.hpp"
#include "dicke/symmetry.hpp"
#include "support/test_support.hpp"

using namespace dicke;

TEST_CASE("apply: primitive actions") {
  const ModelParams p{1, 1, 1, -0.5, 0};

  auto [p1, s1] = apply(Sx{}, p, MeanFieldState(1, 0.5, 0.3, 0.3));
  CHECK(s1.theta == doctest::Approx(kTwoPi - 0.3));
  CHECK(s1.eta == doctest::Approx(kTwoPi - 0.3));
  CHECK(p1.lambda == p.lambda);

  auto [p2, s2] = apply(St{}, p, MeanFieldState(1, 0.5, 0.1, 0.2));
  CHECK(p2.lambda == doctest::Approx(-0.5));
  CHECK(p2.kappa == doctest::Approx(1.0));
  CHECK(s2.eta == doctest::Approx(kTwoPi - 0.2));

  auto [p3, s3] = apply(C2{}, p, MeanFieldState(1, 0.5, 0, kPi));
  CHECK(s3.theta == doctest::Approx(kPi));
  CHECK(s3.eta == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(p3.kappa == p.kappa);

  auto [p4, s4] = apply(Vprime{}, p, MeanFieldState(1, 0.5, 0.7, 0.4));
  CHECK(p4.lambda == doctest::Approx(0.5));
  CHECK(p4.kappa == doctest::Approx(-1.0));
  CHECK(s4.eta == doctest::Approx(kPi - 0.4));
}

TEST_CASE("apply: U(1) conventions and the T_x/T_p aliases") {
  const ModelParams tc{1, 1, 1.5, 0, 0};
  auto [p1, s1] = apply(U1Rot{0.4}, tc, MeanFieldState(1, 0.5, 0.1, 0.2));
  CHECK(s1.theta == doctest::Approx(0.5));
  CHECK(s1.eta == doctest::Approx(0.6));

  // minus convention adds the extra pi offset on the spin phase
  auto [p2, s2] = apply(U1Rot{0.4, U1Rot::Convention::minus}, tc, MeanFieldState(1, 0.5, 0.1, 0.2));
  CHECK(s2.eta == doctest::Approx(0.6 + kPi));

  // on the lambda = 0 line the spin phase counter-rotates
  const ModelParams atc{1, 1, 0, 1.5, 0};
  auto [p3, s3] = apply(U1Rot{0.4}, atc, MeanFieldState(1, 0.5, 0.1, 0.2));
  CHECK(s3.theta == doctest::Approx(0.5));
  CHECK(s3.eta == doctest::Approx(kTwoPi + 0.2 - 0.4));

  // Tx/Tp act like the Coxeter generators
  testing::Sampler gen;
  for (int i = 0; i < 50; ++i) {
    const auto p = gen.params();
    const auto s = gen.state();
    CHECK(quadrature_distance(apply(Tx{}, p, s).second, apply(Sx{}, p, s).second) < 1e-12);
    CHECK(quadrature_distance(apply(Tp{}, p, s).second, apply(Sp{}, p, s).second) < 1e-12);
  }
}

TEST_CASE("Coxeter relations for W and W'") {
  CHECK(check_coxeter_relations(CoxeterGroup::W));
  CHECK(check_coxeter_relations(CoxeterGroup::Wprime));
}

TEST_CASE("C2-type maps square to the identity; Compose matches the generators") {
  testing::Sampler gen;
  for (int i = 0; i < 100; ++i) {
    const auto p = gen.params();
    const auto s = gen.state();
    for (const Transform tr : std::vector<Transform>{C2{}, C2prime{}, ParityPiS{}}) {
      const auto [pa, sa] = apply(tr, p, s);
      const auto [pb, sb] = apply(tr, pa, sa);
      CHECK(quadrature_distance(sb, s) < 1e-9);
      CHECK(pb.lambda == doctest::Approx(p.lambda).epsilon(1e-14));
    }
    // s_t s_t' realizes the central coupling-plane inversion
    const auto via_compose = apply(Compose{{StPrime{}, St{}}}, p, s);
    const auto direct = apply(C2prime{}, p, s);
    CHECK(via_compose.first.lambda == doctest::Approx(direct.first.lambda).epsilon(1e-14));
    CHECK(via_compose.first.kappa == doctest::Approx(direct.first.kappa).epsilon(1e-14));
    CHECK(quadrature_distance(via_compose.second, direct.second) < 1e-9);
  }
}

TEST_CASE("(Sx Sp)^2 is the identity on random states") {
  testing::Sampler gen;
  const Transform rel = Compose{{Sx{}, Sp{}, Sx{}, Sp{}}};
  for (int i = 0; i < 100; ++i) {
    const auto p = gen.params();
    const auto s = gen.state();
    const auto [p2, s2] = apply(rel, p, s);
    CHECK(quadrature_distance(s2, s) < 1e-9);
    CHECK(p2.lambda == p.lambda);
  }
}

TEST_CASE("primitive transforms are involutions") {
  testing::Sampler gen;
  const std::vector<Transform> invs = {Sx{}, Sp{}, ParityPiS{}, V{}, Vprime{}, St{}, StPrime{}};
  for (const auto& tr : invs) {
    for (int i = 0; i < 150; ++i) {
      const auto p = gen.params();
      const auto s = gen.state();
      const auto [pa, sa] = apply(tr, p, s);
      const auto [pb, sb] = apply(tr, pa, sa);
      CHECK(quadrature_distance(sb, s) < 1e-9);
      CHECK(pb.lambda == doctest::Approx(p.lambda).epsilon(1e-14));
      CHECK(pb.kappa == doctest::Approx(p.kappa).epsilon(1e-14));
    }
  }
}

TEST_CASE("energy invariance of the exact symmetries") {
  testing::Sampler gen;
  const std::vector<Transform> exact = {ParityPiS{}, Sx{}, Sp{}, C2{}, V{}, Vprime{}};
  for (int i = 0; i < 20; ++i) {
    const auto p = gen.params(2.0);
    for (const auto& tr : exact) {
      CHECK(energy_invariance(tr, p, 50) <= 1e-12);
    }
  }
  // V exchanges the two coupling terms exactly
  CHECK(energy_invariance(V{}, {1, 1, 0.7, -0.3, 0}, 1000) <= 1e-12);
}

TEST_CASE("U(1) invariance on the coupling lines") {
  const ModelParams tc{1, 1, 1.3, 0, 0};
  const ModelParams anti_tc{1, 1, 0, 1.3, 0};
  const ModelParams off{1, 1, 1.0, 0.4, 0};
  double worst_tc = 0.0, worst_atc = 0.0, worst_off = 0.0;
  for (int k = 0; k < 32; ++k) {
    const double phi = kTwoPi * k / 32;
    worst_tc = std::max(worst_tc, energy_invariance(U1Rot{phi}, tc, 100));
    worst_atc = std::max(worst_atc, energy_invariance(U1Rot{phi}, anti_tc, 100));
    worst_off = std::max(worst_off, energy_invariance(U1Rot{phi}, off, 100));
  }
  CHECK(worst_tc <= 1e-12);
  CHECK(worst_atc <= 1e-12);  // counter-rotating action on the lambda = 0 line
  CHECK(worst_off > 1e-3);    // generic points are not U(1) invariant
}

TEST_CASE("table-2 verdicts: NP row") {
  const auto v = table2_verdicts({1, 1, 0.2, 0.2, 0});
  for (const auto kind : {TransformKind::Sx, TransformKind::Sp, TransformKind::C2,
                          TransformKind::St, TransformKind::StPrime, TransformKind::C2prime,
                          TransformKind::U1}) {
    CHECK(v.at(kind).each_state_fixed);
    CHECK(v.at(kind).manifold_preserved);
  }
  CHECK(v.at(TransformKind::Sx).phase_image == PhaseLabel::NP);
}

TEST_CASE("table-2 verdicts: x-SP row") {
  const auto v = table2_verdicts({1, 1, 1, 1, 0});
  CHECK(v.at(TransformKind::Sx).each_state_fixed);
  CHECK(!v.at(TransformKind::Sp).each_state_fixed);
  CHECK(v.at(TransformKind::Sp).manifold_preserved);  // [0,0] <-> [pi,pi]
  CHECK(!v.at(TransformKind::C2).each_state_fixed);
  CHECK(v.at(TransformKind::St).each_state_fixed);
  CHECK(!v.at(TransformKind::StPrime).each_state_fixed);
  CHECK(v.at(TransformKind::StPrime).phase_image == PhaseLabel::X_RSP);
  CHECK(!v.at(TransformKind::U1).each_state_fixed);
}

TEST_CASE("table-2 verdicts: p-RSP row") {
  const auto v = table2_verdicts({1, 1, -2.5, 1.2, 0});
  CHECK(!v.at(TransformKind::Sx).each_state_fixed);
  CHECK(v.at(TransformKind::Sp).each_state_fixed);
  CHECK(!v.at(TransformKind::C2).each_state_fixed);
  CHECK(v.at(TransformKind::StPrime).each_state_fixed);
}

TEST_CASE("expected verdicts match every discrete phase row") {
  const std::vector<std::pair<ModelParams, PhaseLabel>> points = {
      {{1, 1, 0.2, 0.2, 0}, PhaseLabel::NP},       {{1, 1, 1, 1, 0}, PhaseLabel::X_SP},
      {{1, 1, -1, -1, 0}, PhaseLabel::X_RSP},      {{1, 1, 2.5, -1.2, 0}, PhaseLabel::P_SP},
      {{1, 1, -2.5, 1.2, 0}, PhaseLabel::P_RSP},
  };
  for (const auto& [p, phase] : points) {
    REQUIRE(classify(p).label == phase);
    const auto v = table2_verdicts(p);
    for (const auto& [kind, verdict] : v) {
      const auto expected = table2_expected_state_fixed(phase, kind);
      REQUIRE(expected.has_value());
      CHECK(verdict.each_state_fixed == *expected);
    }
  }
  // continuum rows report no single-bit expectation
  CHECK(!table2_expected_state_fixed(PhaseLabel::SP0, TransformKind::C2).has_value());
  CHECK(!table2_expected_state_fixed(PhaseLabel::RSP0, TransformKind::C2).has_value());
}

TEST_CASE("continuum phases: manifold preserved, no state fixed") {
  const auto v = table2_verdicts({1, 1, 1.5, 0, 0});  // SP0
  CHECK(v.at(TransformKind::C2).manifold_preserved);
  CHECK(!v.at(TransformKind::C2).each_state_fixed);
  CHECK(v.at(TransformKind::Sx).manifold_preserved);
  CHECK(!v.at(TransformKind::Sx).each_state_fixed);
  CHECK(v.at(TransformKind::U1).manifold_preserved);
  CHECK(!v.at(TransformKind::U1).each_state_fixed);
}

TEST_CASE("phase exchanges of the W' generators") {
  auto r = phase_exchange_check(St{}, {1, 1, 2.5, -2.5, 0});
  CHECK(r.original == PhaseLabel::COEX_PSP_NP);
  CHECK(r.image == PhaseLabel::COEX_PRSP_NP);
  CHECK(r.mapping_ok);

  r = phase_exchange_check(St{}, {1, 1, 2.5, -1.2, 0});
  CHECK(r.original == PhaseLabel::P_SP);
  CHECK(r.image == PhaseLabel::P_RSP);
  CHECK(r.mapping_ok);

  r = phase_exchange_check(StPrime{}, {1, 1, 1, 1, 0});
  CHECK(r.original == PhaseLabel::X_SP);
  CHECK(r.image == PhaseLabel::X_RSP);
  CHECK(r.mapping_ok);

  r = phase_exchange_check(St{}, {1, 1, 1.5, 0, 0});
  CHECK(r.original == PhaseLabel::SP0);
  CHECK(r.image == PhaseLabel::SPX);
  CHECK(r.mapping_ok);

  r = phase_exchange_check(StPrime{}, {1, 1, 1.5, 0, 0});
  CHECK(r.original == PhaseLabel::SP0);
  CHECK(r.image == PhaseLabel::SPP);
  CHECK(r.mapping_ok);

  r = phase_exchange_check(St{}, {1, 1, -1.5, 0, 0});
  CHECK(r.original == PhaseLabel::RSP0);
  CHECK(r.image == PhaseLabel::SPP);
  CHECK(r.mapping_ok);

  CHECK_THROWS_AS(phase_exchange_check(Sx{}, ModelParams{1, 1, 1, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(phase_exchange_check(St{}, ModelParams{1, 1, 1, 1, 0.1}), UnsupportedU);
}

TEST_CASE("W' generators map minimizer sets onto the image-parameter sets") {
  for (const auto& [lam, kap] : std::vector<std::pair<double, double>>{
           {0.3, 0.3}, {1, 1}, {-1, -1}, {2.5, -1.2}, {1.5, 0}, {0, 1.5}, {1.2, 0.4}}) {
    const ModelParams p{1, 1, lam, kap, 0};
    for (const Transform tr : std::vector<Transform>{St{}, StPrime{}}) {
      const auto before = global_minima(p);
      const ModelParams p2 = apply(tr, p, MeanFieldState(0, 0, 0, 0)).first;
      const auto target = global_minima(p2);
      // every transformed minimizer appears in the independently computed image set
      for (const auto& s : before.states) {
        const auto img = apply(tr, p, s).second;
        double closest = 1e9;
        for (const auto& t2 : target.states) {
          closest = std::min(closest, quadrature_distance(img, t2));
        }
        if (target.degenerate_manifold) {
          // continuum: membership, not rep-by-rep identity
          const auto rel = manifold_relation(target.states);
          REQUIRE(rel.has_value());
          const double want = rel->corotating ? wrap_angle(img.eta - img.theta)
                                              : wrap_angle(img.eta + img.theta);
          CHECK(angle_distance(want, rel->offset) < 1e-6);
        } else {
          CHECK(closest < 1e-6);
        }
      }
    }
  }
}
