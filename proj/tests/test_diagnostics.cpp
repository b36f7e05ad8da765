#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gw/diagnostics.hpp"
#include "gw/glimm.hpp"
#include "gw/riemann.hpp"
#include "gw/state.hpp"

using namespace gw;

namespace {

GasParams make_params(double gamma, double a_inf, double tau, double b0) {
  GasParams p;
  p.gamma = gamma;
  p.a_inf = a_inf;
  p.tau = tau;
  p.b0 = b0;
  return p;
}

Mesh make_mesh(double dx, double dy, int k_max, int y_depth) {
  Mesh m;
  m.dx = dx;
  m.dy = dy;
  m.k_max = k_max;
  m.y_depth = y_depth;
  return m;
}

// wedge inflow plus a deeper density jump: yields one boundary S2 and one
// interior (R2, S1) pair per early column
ApproxSolution jump_run(const GasParams& p, int k_max, int y_depth) {
  Mesh m = make_mesh(0.005, 0.015, k_max, y_depth);
  const InitialData init = [](double y) {
    return y > -0.05 ? FlowState{1.0, 0.0} : FlowState{1.2, 0.0};
  };
  return run(m, ThetaSequence(0), init, p);
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("functional weight guards") {
  FunctionalWeights w;
  CHECK_NOTHROW(w.validate());
  w.k_b = 1.0;
  CHECK_THROWS_AS(w.validate(), std::invalid_argument);
  w.k_b = 4.0;
  CHECK_THROWS_AS(w.validate(), std::invalid_argument);
  w.k_b = 2.0;
  w.c_star = 1.5;  // below k_b
  CHECK_THROWS_AS(w.validate(), std::invalid_argument);
}

TEST_CASE("functional bookkeeping: strengths, approaching pairs, weights") {
  GasParams p = make_params(1.2, 1.0, 0.0, -0.3);
  ApproxSolution sol = jump_run(p, 1, 8);
  auto recs = sol.column_records(0);
  REQUIRE(recs.size() == 2);  // boundary S2 at y=0, interior (R2, S1) at y=-0.06

  const double s2 = std::abs(recs[0]->waves[0].strength);
  const Wave& s1w = recs[1]->waves[1];
  REQUIRE(s1w.kind == WaveKind::S1);
  const double s1 = s1w.strength;

  FunctionalWeights w;  // k_b = 2, c_star = 10
  FunctionalValue f = functional_on_column(sol, 0, w);
  CHECK(f.l1 == doctest::Approx(s1).epsilon(1e-12));
  CHECK(f.l2 == doctest::Approx(s2).epsilon(1e-12));
  CHECK(f.l == doctest::Approx(w.k_b * s1 + s2).epsilon(1e-12));
  // the S1 sits strictly below the S2: exactly one approaching pair
  CHECK(f.q == doctest::Approx(s1 * s2).epsilon(1e-12));
  CHECK(f.f == doctest::Approx(f.l + 4.0 * w.c_star * p.eps_scale() * f.q).epsilon(1e-12));

  // the rarefaction part of the interior fan never enters the functional
  CHECK(f.l1 + f.l2 < std::abs(recs[1]->waves[0].strength) + s1 + s2);

  FunctionalWeights heavier;
  heavier.c_star = 20.0;
  FunctionalValue g = functional_on_column(sol, 0, heavier);
  CHECK(g.f - f.f == doctest::Approx(4.0 * 10.0 * p.eps_scale() * f.q).epsilon(1e-10));
}

TEST_CASE("single leading shock: functional is flat and the monotone check passes") {
  GasParams p = make_params(1.2, 1.0, 0.0, -0.3);
  Mesh m = make_mesh(0.005, 0.015, 10, 30);
  ApproxSolution sol = run(m, ThetaSequence(0), [](double) { return FlowState{1.0, 0.0}; }, p);

  MonotoneReport rep = check_f_monotone(sol);
  REQUIRE(static_cast<int>(rep.f.size()) == m.k_max);
  CHECK(rep.f0 == doctest::Approx(0.60108530135544887).epsilon(1e-8));
  CHECK(rep.nonincreasing);
  CHECK(rep.first_violation == -1);
  CHECK(rep.max_rise <= 1e-10);
  CHECK(rep.smallness == doctest::Approx(p.eps_scale() * rep.f0).epsilon(1e-12));
  CHECK(rep.smallness_ok == (rep.smallness <= 0.05));
}

TEST_CASE("total variation is the componentwise column jump sum") {
  GasParams p = make_params(1.2, 1.0, 0.0, -0.3);
  ApproxSolution sol = jump_run(p, 1, 8);
  // column 0 holds the single 0.2 density jump of the initial data
  CHECK(total_variation(sol, 0) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK_THROWS_AS(total_variation(sol, -1), std::invalid_argument);
  CHECK_THROWS_AS(total_variation(sol, 99), std::invalid_argument);

  Mesh m = make_mesh(0.005, 0.015, 1, 8);
  ApproxSolution flat = run(m, ThetaSequence(0), [](double) { return FlowState{1.0, 0.0}; }, p);
  CHECK(total_variation(flat, 0) == 0.0);
}

TEST_CASE("trace distance vanishes at equal stations and for steady data") {
  GasParams p = make_params(1.2, 1.0, 0.1, -0.3);
  FlowState u{1.3, 0.0};
  for (int it = 0; it < 60; ++it) u.v = mass_factor(u, p) * p.b0;
  Mesh m = make_mesh(0.01, 0.02, 6, 6);
  ApproxSolution sol = run(m, ThetaSequence(0), [&](double) { return u; }, p);
  CHECK(l1_continuity(sol, 0.02, 0.02) == 0.0);
  CHECK(l1_continuity(sol, 0.01, 0.05) == 0.0);  // constant in x as well
}

TEST_CASE("entropy pair: frozen value and admissibility of the reflected shock") {
  GasParams p = make_params(1.4, 1.5, 0.0, -0.3);
  EntropyPair ep = entropy_pair({2.0, 0.3}, p);
  CHECK(ep.e == doctest::Approx(2.1844570012268163).epsilon(1e-13));
  CHECK(ep.q == doctest::Approx(0.90667194051526284).epsilon(1e-13));

  SUBCASE("guards") {
    GasParams taup = make_params(1.4, 1.5, 0.1, -0.3);
    try {
      entropy_pair({2.0, 0.3}, taup);
      FAIL("expected UnsupportedTau");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnsupportedTau);
    }
    GasParams iso = make_params(1.0, 1.5, 0.0, -0.3);
    CHECK_THROWS_AS(entropy_pair({2.0, 0.3}, iso), std::invalid_argument);
  }

  SUBCASE("dissipation is positive across the shock and negative when reversed") {
    GasParams q = make_params(1.2, 1.0, 0.0, -0.3);
    BoundaryFan fan = solve_boundary({1.0, 0.0}, q);
    const EntropyPair lo = entropy_pair(fan.wave2.left, q);
    const EntropyPair hi = entropy_pair(fan.wave2.right, q);
    const double diss = fan.wave2.speed_lo * (hi.e - lo.e) - (hi.q - lo.q);
    CHECK(diss > 1e-6);
    const double reversed = fan.wave2.speed_lo * (lo.e - hi.e) - (lo.q - hi.q);
    CHECK(reversed == doctest::Approx(-diss));
    CHECK(reversed < 0.0);
  }
}

TEST_CASE("entropy residual over bump windows is nonnegative on shocks") {
  GasParams p = make_params(1.2, 1.0, 0.0, -0.3);
  ApproxSolution sol = jump_run(p, 8, 8);
  EntropyReport rep = entropy_residual(sol, 8, 3);
  REQUIRE(rep.bumps.size() == 8);
  for (const BumpResidual& b : rep.bumps) {
    CHECK(b.rx > 0.0);
    CHECK(b.ry > 0.0);
    CHECK(b.x0 > 0.0);
    CHECK(b.x0 < sol.mesh.x_max());
  }
  CHECK(rep.min_shock_residual >= -1e-9);

  SUBCASE("no bumps yields an empty report") {
    EntropyReport none = entropy_residual(sol, 0, 3);
    CHECK(none.bumps.empty());
    CHECK(none.min_shock_residual == 0.0);
    CHECK(none.min_weak_form == 0.0);
  }
  SUBCASE("tau > 0 solutions are rejected") {
    GasParams taup = make_params(1.2, 1.0, 0.05, -0.3);
    Mesh m = make_mesh(0.005, 0.015, 2, 6);
    ApproxSolution s2 = run(m, ThetaSequence(0), [](double) { return FlowState{1.0, 0.0}; }, taup);
    try {
      entropy_residual(s2, 2, 1);
      FAIL("expected UnsupportedTau");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnsupportedTau);
    }
  }
}

TEST_CASE("interaction probe registry and argument guards") {
  GasParams p = make_params(1.05, 1.0, 0.0, -0.3);
  CHECK(probe_case_names().size() == 17);
  CHECK_THROWS_AS(interaction_probe("L9.9", 10, 1, p), std::invalid_argument);
  CHECK_THROWS_AS(interaction_probe("L3.5.1", -1, 1, p), std::invalid_argument);

  ProbeReport empty = interaction_probe("L3.5.1", 0, 1, p);
  CHECK(empty.samples == 0);
  CHECK(empty.rejected == 0);
  CHECK(empty.fitted == 0.0);

  // the equal-parameter curve statements are tau = 0 only
  GasParams taup = make_params(1.05, 1.0, 0.05, -0.3);
  CHECK_THROWS_AS(interaction_probe("L3.1", 10, 1, taup), std::invalid_argument);
  CHECK_THROWS_AS(interaction_probe("L3.2", 10, 1, taup), std::invalid_argument);
  CHECK_NOTHROW(interaction_probe("L3.3", 10, 1, taup));
}

TEST_CASE("probe: transmitted shock through a rarefaction is bookkeeping-exact") {
  for (double tau : {0.0, 0.03}) {
    GasParams p = make_params(1.05, 1.0, tau, -0.3);
    CAPTURE(tau);
    ProbeReport rep = interaction_probe("L3.5.2", 60, 7, p);
    CHECK(rep.samples == 60);
    CHECK(rep.rejected <= 12);
    CHECK(rep.exact_hits == rep.samples - rep.rejected);
    CHECK(rep.max_equality_defect <= 1e-10);
    // outgoing family-2 wave is always the transmitted shock
    CHECK(rep.outgoing_s2 == rep.samples - rep.rejected);
    if (tau > 0.0) {
      CHECK(rep.fitted > 0.0);
      CHECK(rep.fitted <= 0.05);
    }
  }
}

TEST_CASE("probe: curve-shift defects carry one sign and a uniform constant") {
  GasParams p = make_params(1.05, 1.0, 0.0, -0.3);
  ProbeReport r1 = interaction_probe("L3.1", 80, 3, p);
  CHECK(r1.samples == 80);
  CHECK(r1.min_defect >= -1e-11);  // nonnegative defect
  CHECK(r1.fitted > 0.0);          // normalized by gamma-1 even at tau = 0
  CHECK(r1.fitted <= 0.05);
  CHECK_FALSE(r1.note.empty());

  GasParams pt = make_params(1.05, 1.0, 0.01, -0.3);
  ProbeReport r3 = interaction_probe("L3.3", 80, 3, pt);
  CHECK(r3.fitted > 0.0);
  CHECK(r3.fitted <= 0.05);  // calibrated headroom over the measured ~0.004
}

TEST_CASE("probe: boundary reflection stays within the calibrated band") {
  GasParams p = make_params(1.05, 1.0, 0.0, -0.3);
  ProbeReport rep = interaction_probe("L3.6", 60, 5, p);
  CHECK(rep.samples == 60);
  CHECK(rep.min_defect >= -1e-7);
  CHECK(rep.fitted > 0.0);
  CHECK(rep.fitted <= 0.15);
}

TEST_CASE("probe results are reproducible for a fixed seed") {
  GasParams p = make_params(1.1, 1.0, 0.01, -0.3);
  ProbeReport a = interaction_probe("L3.5.1", 40, 11, p);
  ProbeReport b = interaction_probe("L3.5.1", 40, 11, p);
  CHECK(a.samples == b.samples);
  CHECK(a.rejected == b.rejected);
  CHECK(a.max_equality_defect == b.max_equality_defect);
  CHECK(a.min_defect == b.min_defect);
  CHECK(a.max_defect == b.max_defect);
  CHECK(a.fitted == b.fitted);
  CHECK(a.outgoing_s1 == b.outgoing_s1);
  CHECK(a.outgoing_s2 == b.outgoing_s2);
}

}  // TEST_SUITE
