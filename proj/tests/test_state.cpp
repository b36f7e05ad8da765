#include <doctest.h>

#include <cmath>

#include "gw/state.hpp"

using namespace gw;

namespace {

GasParams make_params(double gamma, double a_inf, double tau) {
  GasParams p;
  p.gamma = gamma;
  p.a_inf = a_inf;
  p.tau = tau;
  return p;
}

}  // namespace

TEST_SUITE("state") {

TEST_CASE("helper values at a reference state") {
  GasParams p = make_params(1.4, 1.5, 0.1);
  const FlowState u{2.0, 0.3};

  CHECK(gamma_term(2.0, p) == doctest::Approx((std::pow(2.0, 0.4) - 1.0) / 0.4).epsilon(1e-15));
  CHECK(sound_q(2.0, p) == doctest::Approx(std::pow(2.0, 0.2)).epsilon(1e-15));

  const double t = 2.0 * gamma_term(2.0, p) / (1.5 * 1.5) + 0.09;
  CHECK(bernoulli_t(u, p) == doctest::Approx(t).epsilon(1e-15));
  CHECK(mass_factor(u, p) == doctest::Approx(std::sqrt(1.0 - t * 0.01)).epsilon(1e-15));

  // R* = D + v^2 tau^2 ties the radicand to the eigenvalue denominator
  const double m = mass_factor(u, p);
  const double c = sound_q(2.0, p) / 1.5;
  const double den = m * m - c * c * 0.01;
  CHECK(char_radicand(u, p) == doctest::Approx(den + 0.09 * 0.01).epsilon(1e-12));
}

TEST_CASE("bernoulli_u is the stable -t/(1+m) form") {
  // at t = 1 (take rho = 1, v = 1) and tau = 0.1:
  // u_bar = (sqrt(0.99) - 1)/0.01 = -t/(1 + sqrt(0.99))
  GasParams p = make_params(1.4, 1.0, 0.1);
  const FlowState u{1.0, 1.0};
  REQUIRE(bernoulli_t(u, p) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bernoulli_u(u, p) == doctest::Approx(-0.5012562893380046).epsilon(1e-14));

  SUBCASE("tau = 0 limit is exactly -t/2") {
    GasParams p0 = make_params(1.4, 1.5, 0.0);
    const FlowState w{2.0, 0.3};
    CHECK(bernoulli_u(w, p0) == -0.5 * bernoulli_t(w, p0));
  }
  SUBCASE("small tau keeps full precision (no (m-1)/tau^2 cancellation)") {
    // Taylor: u_bar = -(t/2)(1 + t tau^2/4) + O(tau^4); at tau = 1e-3 the
    // naive difference form would carry ~1e-10 noise, the stable form ~1e-16.
    GasParams ps = make_params(1.4, 1.5, 1e-3);
    const FlowState w{2.0, 0.3};
    const double t = bernoulli_t(w, ps);
    const double taylor = -0.5 * t * (1.0 + 0.25 * t * ps.tau2());
    CHECK(bernoulli_u(w, ps) == doctest::Approx(taylor).epsilon(1e-11));
  }
  SUBCASE("sonic ceiling raises") {
    GasParams pb = make_params(1.4, 1.0, 0.5);
    CHECK_THROWS_AS(mass_factor({1.0, 2.1}, pb), Error);
    try {
      mass_factor({1.0, 2.1}, pb);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SonicDefectExceeded);
    }
  }
}

TEST_CASE("eigenvalues against the frozen reference") {
  GasParams p = make_params(1.4, 1.5, 0.1);
  const auto [lm, lp] = eigenvalues({2.0, 0.3}, p);
  CHECK(lm == doctest::Approx(-0.46851680931602019).epsilon(1e-13));
  CHECK(lp == doctest::Approx(1.0745138775928548).epsilon(1e-13));

  SUBCASE("tau = 0 collapses to v -+ q/a_inf") {
    GasParams p0 = make_params(1.4, 1.5, 0.0);
    const auto [m0, p0v] = eigenvalues({2.0, 0.3}, p0);
    const double q = std::pow(2.0, 0.2);
    CHECK(m0 == doctest::Approx(0.3 - q / 1.5).epsilon(1e-14));
    CHECK(p0v == doctest::Approx(0.3 + q / 1.5).epsilon(1e-14));
  }
  SUBCASE("eigenvalues are continuous in tau") {
    GasParams pe = make_params(1.4, 1.5, 1e-6);
    const auto [am, ap] = eigenvalues({2.0, 0.3}, pe);
    GasParams p0 = make_params(1.4, 1.5, 0.0);
    const auto [bm, bp] = eigenvalues({2.0, 0.3}, p0);
    CHECK(am == doctest::Approx(bm).epsilon(1e-9));
    CHECK(ap == doctest::Approx(bp).epsilon(1e-9));
  }
}

TEST_CASE("invariants against frozen references") {
  SUBCASE("tau > 0 closed-form chart") {
    GasParams p = make_params(1.4, 1.5, 0.1);
    InvariantPair w = invariants_of({2.0, 0.3}, p);
    CHECK(w.w_minus == doctest::Approx(1.1945369292143819).epsilon(1e-13));
    CHECK(w.w_plus == doctest::Approx(0.29118822824919059).epsilon(1e-13));
  }
  SUBCASE("tau = 0 closed form: gamma = 2 gives (3, 1)") {
    GasParams p = make_params(2.0, 1.0, 0.0);
    InvariantPair w = invariants_of({4.0, 1.0}, p);
    CHECK(w.w_minus == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(w.w_plus == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("gamma = 1 uses the log base") {
    GasParams p = make_params(1.0, 1.0, 0.0);
    InvariantPair w = invariants_of({std::exp(2.0), 0.0}, p);
    CHECK(w.w_minus == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(w.w_plus == doctest::Approx(2.0).epsilon(1e-13));
  }
  SUBCASE("free stream is the chart origin at every tau") {
    for (double tau : {0.0, 0.05, 0.2}) {
      GasParams p = make_params(1.3, 1.2, tau);
      InvariantPair w = invariants_of({1.0, 0.0}, p);
      CHECK(std::abs(w.w_minus) <= 1e-14);
      CHECK(std::abs(w.w_plus) <= 1e-14);
    }
  }
}

TEST_CASE("chart round trip and path independence") {
  const FlowState samples[] = {{0.5, -0.4}, {1.0, 0.2}, {2.4, 0.0}, {3.5, 0.6}};
  SUBCASE("round trip at tau = 0") {
    GasParams p = make_params(1.4, 1.2, 0.0);
    for (const auto& u : samples) {
      FlowState r = state_of_invariants(invariants_of(u, p), p);
      CHECK(r.rho == doctest::Approx(u.rho).epsilon(1e-12));
      CHECK(std::abs(r.v - u.v) <= 1e-12);
    }
  }
  SUBCASE("round trip at tau = 0.1") {
    GasParams p = make_params(1.4, 1.2, 0.1);
    for (const auto& u : samples) {
      FlowState r = state_of_invariants(invariants_of(u, p), p);
      CHECK(r.rho == doctest::Approx(u.rho).epsilon(1e-11));
      CHECK(std::abs(r.v - u.v) <= 1e-11);
    }
  }
  SUBCASE("gradient field is curl-free: quadrature path matches closed form") {
    GasParams p = make_params(1.4, 1.2, 0.1);
    for (const auto& u : samples) {
      InvariantPair a = invariants_of(u, p);
      InvariantPair b = invariants_of_v_first(u, p);
      CHECK(std::abs(a.w_minus - b.w_minus) <= 1e-8);
      CHECK(std::abs(a.w_plus - b.w_plus) <= 1e-8);
    }
  }
  SUBCASE("chart is continuous at tau -> 0") {
    GasParams p0 = make_params(1.4, 1.2, 0.0);
    GasParams pe = make_params(1.4, 1.2, 1e-6);
    for (const auto& u : samples) {
      InvariantPair a = invariants_of(u, p0);
      InvariantPair b = invariants_of(u, pe);
      CHECK(std::abs(a.w_minus - b.w_minus) <= 1e-8);
      CHECK(std::abs(a.w_plus - b.w_plus) <= 1e-8);
    }
  }
}

TEST_CASE("invariant gradient: finite differences and annihilation") {
  GasParams p = make_params(1.4, 1.2, 0.1);
  const FlowState u{1.7, 0.25};

  SUBCASE("matches central differences of the chart") {
    const double h = 1e-4;
    InvariantGradient g = invariant_gradient(u, p);
    auto at = [&](double rho, double v) { return invariants_of({rho, v}, p); };
    const double d_rm_fd =
        (at(u.rho + h, u.v).w_minus - at(u.rho - h, u.v).w_minus) / (2.0 * h);
    const double d_rp_fd = (at(u.rho + h, u.v).w_plus - at(u.rho - h, u.v).w_plus) / (2.0 * h);
    const double d_vm_fd = (at(u.rho, u.v + h).w_minus - at(u.rho, u.v - h).w_minus) / (2.0 * h);
    const double d_vp_fd = (at(u.rho, u.v + h).w_plus - at(u.rho, u.v - h).w_plus) / (2.0 * h);
    CHECK(g.d_rho_minus == doctest::Approx(d_rm_fd).epsilon(1e-5));
    CHECK(g.d_rho_plus == doctest::Approx(d_rp_fd).epsilon(1e-5));
    CHECK(g.d_v_minus == doctest::Approx(d_vm_fd).epsilon(1e-5));
    CHECK(g.d_v_plus == doctest::Approx(d_vp_fd).epsilon(1e-5));
  }

  SUBCASE("each invariant annihilates its family's eigenvector") {
    for (double tau : {0.0, 0.1}) {
      GasParams q = make_params(1.4, 1.2, tau);
      InvariantGradient g = invariant_gradient(u, q);
      // family 1 preserves w_plus, family 2 preserves w_minus
      auto r1 = right_eigenvector(u, q, 1);
      auto r2 = right_eigenvector(u, q, 2);
      const double dot1 = g.d_rho_plus * r1[0] + g.d_v_plus * r1[1];
      const double dot2 = g.d_rho_minus * r2[0] + g.d_v_minus * r2[1];
      const double scale = std::abs(g.d_rho_plus) + std::abs(g.d_v_plus);
      CHECK(std::abs(dot1) <= 1e-8 * scale);
      CHECK(std::abs(dot2) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("conserved vector and flux") {
  GasParams p = make_params(1.4, 1.5, 0.1);
  const FlowState u{2.0, 0.3};
  ConservedFlux cf = conserved_and_flux(u, p);
  const double ub = bernoulli_u(u, p);
  CHECK(cf.w[0] == doctest::Approx(2.0 * (1.0 + 0.01 * ub)).epsilon(1e-15));
  CHECK(cf.w[1] == 0.3);
  CHECK(cf.f[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(cf.f[1] == doctest::Approx(-ub).epsilon(1e-15));

  // tau = 0: W = (rho, v), F = (rho v, t/2)
  GasParams p0 = make_params(1.4, 1.5, 0.0);
  ConservedFlux c0 = conserved_and_flux(u, p0);
  CHECK(c0.w[0] == 2.0);
  CHECK(c0.f[1] == doctest::Approx(0.5 * bernoulli_t(u, p0)).epsilon(1e-15));
}

TEST_CASE("vacuum edge of the chart raises") {
  GasParams p = make_params(1.4, 1.0, 0.0);
  // the chart image needs w_minus + w_plus > -4/(gamma-1) = -10
  CHECK_THROWS_AS(state_of_invariants({-6.0, -6.0}, p), Error);
  try {
    state_of_invariants({-6.0, -6.0}, p);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::VacuumReached);
  }
}

}  // TEST_SUITE
