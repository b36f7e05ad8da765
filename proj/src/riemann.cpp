#include "gw/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gw/detail/root.hpp"

namespace gw {
namespace {

Wave zero_wave(int family, const FlowState& at, const GasParams& p) {
  Wave w;
  w.kind = family == 1 ? WaveKind::R1 : WaveKind::R2;
  w.strength = 0.0;
  w.left = at;
  w.right = at;
  const auto [lm, lp] = eigenvalues(at, p);
  w.speed_lo = w.speed_hi = (family == 1 ? lp : lm);
  return w;
}

double family_lambda(const FlowState& u, int family, const GasParams& p) {
  const auto [lm, lp] = eigenvalues(u, p);
  return family == 1 ? lp : lm;
}

FlowState rarefaction_interior(const Wave& w, double xi, const GasParams& p) {
  const int fam = family_of(w.kind);
  const InvariantPair wa = invariants_of(w.left, p);
  if (p.tau == 0.0) {
    // lambda is linear in the varying invariant, so invert in closed form
    const double half = 0.5, quarter = 0.25 * (p.gamma - 1.0);
    if (fam == 1) {
      const double s = wa.w_plus;
      double r = (p.a_inf * xi - 1.0 + s * (half - quarter)) / (half + quarter);
      const double rb = invariants_of(w.right, p).w_minus;
      r = std::clamp(r, std::min(wa.w_minus, rb), std::max(wa.w_minus, rb));
      return state_of_invariants({r, s}, p);
    }
    const double r = wa.w_minus;
    double s = (r * (half - quarter) - p.a_inf * xi - 1.0) / (half + quarter);
    const double sb = invariants_of(w.right, p).w_plus;
    s = std::clamp(s, std::min(wa.w_plus, sb), std::max(wa.w_plus, sb));
    return state_of_invariants({r, s}, p);
  }
  const InvariantPair wb = invariants_of(w.right, p);
  const double fixed = (fam == 1) ? wa.w_plus : wa.w_minus;
  const double va = (fam == 1) ? wa.w_minus : wa.w_plus;
  const double vb = (fam == 1) ? wb.w_minus : wb.w_plus;
  const auto gap = [&](double val) {
    const InvariantPair pair = (fam == 1) ? InvariantPair{val, fixed} : InvariantPair{fixed, val};
    return family_lambda(state_of_invariants(pair, p), fam, p) - xi;
  };
  const double ga = w.speed_lo - xi, gb = w.speed_hi - xi;  // lambda at the edges
  if (ga >= 0.0) return w.left;
  if (gb <= 0.0) return w.right;
  const double val = detail::bracket_root(gap, va, vb, ga, gb, 1e-14, 1e-10);
  const InvariantPair pair = (fam == 1) ? InvariantPair{val, fixed} : InvariantPair{fixed, val};
  return state_of_invariants(pair, p);
}

// Composed endpoint map H1(z1, H2(z2, omega_L)); reconstructs the middle
// state only when the family-1 branch actually needs it.
InvariantPair compose_endpoint(double z1, double z2, const InvariantPair& wl,
                               const FlowState& ul, const GasParams& q) {
  const InvariantPair wM = wave_endpoint(z2, 2, wl, ul, q);
  if (z1 > 0.0) {
    const FlowState uM = state_of_invariants(wM, q);
    return wave_endpoint(z1, 1, wM, uM, q);
  }
  return {wM.w_minus - z1, wM.w_plus};
}

// Damped Newton with finite-difference Jacobian on the composed map.
bool newton_pass(double& z1, double& z2, const InvariantPair& wl, const InvariantPair& wr,
                 const FlowState& ul, const GasParams& q, int max_iter) {
  double a = z1, b = z2;
  double rm = 0.0, rp = 0.0;
  const auto eval = [&](double x, double y, double& em, double& ep) {
    try {
      const InvariantPair out = compose_endpoint(x, y, wl, ul, q);
      em = out.w_minus - wr.w_minus;
      ep = out.w_plus - wr.w_plus;
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  if (!eval(a, b, rm, rp)) return false;
  double norm = std::max(std::abs(rm), std::abs(rp));
  for (int it = 0; it < max_iter; ++it) {
    if (norm <= q.tol_root) {
      z1 = a;
      z2 = b;
      return true;
    }
    const double h1 = std::max(1e-9, 1e-7 * std::abs(a));
    const double h2 = std::max(1e-9, 1e-7 * std::abs(b));
    double em1, ep1, em2, ep2;
    if (!eval(a - h1, b, em1, ep1) || !eval(a, b - h2, em2, ep2)) return false;
    const double j11 = (rm - em1) / h1, j21 = (rp - ep1) / h1;
    const double j12 = (rm - em2) / h2, j22 = (rp - ep2) / h2;
    const double det = j11 * j22 - j12 * j21;
    if (det == 0.0 || !std::isfinite(det)) return false;
    const double da = (rm * j22 - rp * j12) / det;
    const double db = (rp * j11 - rm * j21) / det;
    double step = 1.0;
    bool moved = false;
    for (int back = 0; back < 30; ++back) {
      const double na = a - step * da, nb = b - step * db;
      double nm, np;
      if (eval(na, nb, nm, np)) {
        const double nn = std::max(std::abs(nm), std::abs(np));
        if (nn < norm) {
          a = na;
          b = nb;
          rm = nm;
          rp = np;
          norm = nn;
          moved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!moved) return false;
  }
  return false;
}

// Fixed-point fallback exploiting that the Jacobian is -I plus wave-curve
// slopes of magnitude < 1.
bool fixed_point_pass(double& z1, double& z2, const InvariantPair& wl, const InvariantPair& wr,
                      const FlowState& ul, const GasParams& q, int max_iter) {
  double a = z1, b = z2;
  double rm = 0.0, rp = 0.0;
  const auto eval = [&](double x, double y, double& em, double& ep) {
    try {
      const InvariantPair out = compose_endpoint(x, y, wl, ul, q);
      em = out.w_minus - wr.w_minus;
      ep = out.w_plus - wr.w_plus;
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  if (!eval(a, b, rm, rp)) return false;
  double norm = std::max(std::abs(rm), std::abs(rp));
  for (int it = 0; it < max_iter; ++it) {
    if (norm <= q.tol_root) {
      z1 = a;
      z2 = b;
      return true;
    }
    double step = 1.0;
    bool moved = false;
    for (int back = 0; back < 30; ++back) {
      const double na = a + step * rm, nb = b + step * rp;
      double nm, np;
      if (eval(na, nb, nm, np)) {
        const double nn = std::max(std::abs(nm), std::abs(np));
        if (nn < norm) {
          a = na;
          b = nb;
          rm = nm;
          rp = np;
          norm = nn;
          moved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!moved) return false;
  }
  return false;
}

}  // namespace

InvariantPair wave_endpoint(double z, int family, const InvariantPair& omega_L,
                            const FlowState& u_L, const GasParams& p) {
  if (family == 2) {
    if (z >= 0.0) return {omega_L.w_minus, omega_L.w_plus - z};
    return {omega_L.w_minus - phi2(z, u_L, p), omega_L.w_plus - z};
  }
  if (family == 1) {
    if (z <= 0.0) return {omega_L.w_minus - z, omega_L.w_plus};
    return {omega_L.w_minus - z, omega_L.w_plus - phi1(z, u_L, p)};
  }
  throw std::invalid_argument("wave_endpoint: family must be 1 or 2");
}

RiemannFan solve_interior(const FlowState& u_L, const FlowState& u_R, const GasParams& p) {
  RiemannFan fan;
  fan.left = u_L;
  fan.right = u_R;
  if (same_state(u_L, u_R)) {
    fan.trivial = true;
    fan.middle = u_L;
    fan.wave2 = zero_wave(2, u_L, p);
    fan.wave1 = zero_wave(1, u_L, p);
    return fan;
  }
  const InvariantPair wL = invariants_of(u_L, p);
  const InvariantPair wR = invariants_of(u_R, p);
  if (!p.gamma_is_one() && wL.w_minus + wR.w_plus <= -4.0 / (p.gamma - 1.0) + 1e-12) {
    raise(ErrorCode::VacuumReached,
          "solve_interior: no-vacuum condition violated: w_minus(L) + w_plus(R) = " +
              std::to_string(wL.w_minus + wR.w_plus) + " <= -4/(gamma-1) = " +
              std::to_string(-4.0 / (p.gamma - 1.0)));
  }

  double z1 = wL.w_minus - wR.w_minus;
  double z2 = wL.w_plus - wR.w_plus;
  // two-rarefaction sign pattern decouples exactly in invariant coordinates
  bool solved = (z1 <= 0.0 && z2 >= 0.0);

  if (!solved) {
    solved = newton_pass(z1, z2, wL, wR, u_L, p, 50);
  }
  if (!solved) {
    z1 = wL.w_minus - wR.w_minus;
    z2 = wL.w_plus - wR.w_plus;
    solved = fixed_point_pass(z1, z2, wL, wR, u_L, p, 400);
  }
  if (!solved && p.tau > 0.0) {
    // continuation from the tau = 0 solution in four tau substeps
    GasParams q = p;
    q.tau = 0.0;
    InvariantPair wl0 = invariants_of(u_L, q);
    InvariantPair wr0 = invariants_of(u_R, q);
    z1 = wl0.w_minus - wr0.w_minus;
    z2 = wl0.w_plus - wr0.w_plus;
    solved = (z1 <= 0.0 && z2 >= 0.0) || newton_pass(z1, z2, wl0, wr0, u_L, q, 50);
    for (int i = 1; i <= 4 && solved; ++i) {
      q.tau = (i == 4) ? p.tau : p.tau * (0.25 * i);
      wl0 = invariants_of(u_L, q);
      wr0 = invariants_of(u_R, q);
      solved = newton_pass(z1, z2, wl0, wr0, u_L, q, 50);
    }
  }
  if (!solved) {
    raise(ErrorCode::NoConvergence, "solve_interior: all solver passes failed for left=(" +
                                        std::to_string(u_L.rho) + "," + std::to_string(u_L.v) +
                                        ") right=(" + std::to_string(u_R.rho) + "," +
                                        std::to_string(u_R.v) + ")");
  }

  const auto residual = [&](double x, double y) {
    const InvariantPair out = compose_endpoint(x, y, wL, u_L, p);
    return std::max(std::abs(out.w_minus - wR.w_minus), std::abs(out.w_plus - wR.w_plus));
  };
  // snap near-zero components so single-wave data yields exactly one wave
  if (z1 != 0.0 && std::abs(z1) < 1e-11) {
    const double alt = wL.w_plus - wR.w_plus;
    try {
      if (residual(0.0, alt) <= 50.0 * p.tol_root) {
        z1 = 0.0;
        z2 = alt;
      }
    } catch (const Error&) {
    }
  } else if (z2 != 0.0 && std::abs(z2) < 1e-11) {
    const double alt = wL.w_minus - wR.w_minus;
    try {
      if (residual(alt, 0.0) <= 50.0 * p.tol_root) {
        z2 = 0.0;
        z1 = alt;
      }
    } catch (const Error&) {
    }
  }
  if (residual(z1, z2) > 50.0 * p.tol_root) {
    raise(ErrorCode::NoConvergence, "solve_interior: accepted root fails the residual bound");
  }

  fan.z1 = z1;
  fan.z2 = z2;
  fan.wave2 = (z2 != 0.0) ? make_wave(z2, 2, u_L, p) : zero_wave(2, u_L, p);
  fan.middle = (z2 != 0.0) ? fan.wave2.right : u_L;
  fan.wave1 = (z1 != 0.0) ? make_wave(z1, 1, fan.middle, p) : zero_wave(1, fan.middle, p);
  if (z2 != 0.0 && is_shock(fan.wave2.kind) && !lax_check(fan.wave2, p)) {
    raise(ErrorCode::InconsistentRH, "solve_interior: family-2 shock fails the Lax margin");
  }
  if (z1 != 0.0 && is_shock(fan.wave1.kind) && !lax_check(fan.wave1, p)) {
    raise(ErrorCode::InconsistentRH, "solve_interior: family-1 shock fails the Lax margin");
  }
  if (z1 != 0.0 && z2 != 0.0) {
    const double scale =
        std::max({1.0, std::abs(fan.wave2.speed_hi), std::abs(fan.wave1.speed_lo)});
    if (fan.wave2.speed_hi > fan.wave1.speed_lo + 100.0 * p.tol_root * scale) {
      raise(ErrorCode::UnsortedFamily, "solve_interior: family-2 wave overtakes family-1 wave");
    }
  }
  return fan;
}

BoundaryFan solve_boundary(const FlowState& u_L, const GasParams& p) {
  BoundaryFan fan;
  fan.left = u_L;
  const InvariantPair wL = invariants_of(u_L, p);
  if (!p.gamma_is_one() && wL.w_minus - p.a_inf * p.b0 <= -2.0 / (p.gamma - 1.0) + 1e-12) {
    raise(ErrorCode::VacuumReached,
          "solve_boundary: data too rarefied against the wedge: w_minus(L) - a_inf*b0 = " +
              std::to_string(wL.w_minus - p.a_inf * p.b0) + " <= -2/(gamma-1)");
  }
  const double g0 = u_L.v - mass_factor(u_L, p) * p.b0;
  if (std::abs(g0) <= p.tol_root) {
    fan.top = u_L;
    fan.z2 = 0.0;
    fan.wave2 = zero_wave(2, u_L, p);
    return fan;
  }

  if (g0 > 0.0) {
    // flow carried into the wedge: reflected family-2 shock
    const auto slip = [&](double alpha) {
      const HugoniotPoint hp = hugoniot_point(alpha, u_L, p);
      return hp.state.v - mass_factor(hp.state, p) * p.b0;
    };
    double lo = 1.0, f_lo = g0;
    double hi = 1.0, f_hi = g0;
    bool bracketed = false;
    for (int it = 0; it < 64; ++it) {
      hi = std::min(2.0 * hi, 1e6);
      try {
        f_hi = slip(hi);
      } catch (const Error&) {
        raise(ErrorCode::NoConvergence,
              "solve_boundary: shock branch left the admissible region before matching the wall");
      }
      if (f_hi <= 0.0) {
        bracketed = true;
        break;
      }
      lo = hi;
      f_lo = f_hi;
      if (hi == 1e6) break;
    }
    if (!bracketed) {
      raise(ErrorCode::NoConvergence, "solve_boundary: no wall-compatible shock up to alpha=1e6");
    }
    const double alpha = detail::bracket_root(slip, lo, hi, f_lo, f_hi, p.tol_root, p.tol_root);
    const HugoniotPoint hp = hugoniot_point(alpha, u_L, p);
    fan.top = hp.state;
    fan.z2 = wL.w_plus - invariants_of(fan.top, p).w_plus;
    fan.wave2.kind = WaveKind::S2;
    fan.wave2.strength = fan.z2;
    fan.wave2.left = u_L;
    fan.wave2.right = fan.top;
    fan.wave2.speed_lo = fan.wave2.speed_hi = hp.sigma;
    if (!lax_check(fan.wave2, p)) {
      raise(ErrorCode::InconsistentRH, "solve_boundary: reflected shock fails the Lax margin");
    }
    return fan;
  }

  // flow peeling away from the wedge: reflected family-2 rarefaction
  const double seed = 2.0 * p.a_inf * (p.b0 - u_L.v);
  if (p.tau == 0.0) {
    // v shifts by z2/(2 a_inf) along the family-2 curve, so the seed is exact
    fan.z2 = seed;
    fan.top = state_of_invariants({wL.w_minus, wL.w_plus - seed}, p);
  } else {
    const auto slip = [&](double z) {
      const FlowState t = state_of_invariants({wL.w_minus, wL.w_plus - z}, p);
      return t.v - mass_factor(t, p) * p.b0;
    };
    double hi = std::max(seed, 1e-12), f_hi = 0.0;
    bool bracketed = false;
    for (int it = 0; it < 64; ++it) {
      try {
        f_hi = slip(hi);
      } catch (const Error&) {
        raise(ErrorCode::NoConvergence,
              "solve_boundary: rarefaction branch left the chart before matching the wall");
      }
      if (f_hi >= 0.0) {
        bracketed = true;
        break;
      }
      hi *= 2.0;
    }
    if (!bracketed) {
      raise(ErrorCode::NoConvergence, "solve_boundary: no wall-compatible rarefaction found");
    }
    fan.z2 = detail::bracket_root(slip, 0.0, hi, g0, f_hi, p.tol_root, p.tol_root);
    fan.top = state_of_invariants({wL.w_minus, wL.w_plus - fan.z2}, p);
  }
  fan.wave2.kind = WaveKind::R2;
  fan.wave2.strength = fan.z2;
  fan.wave2.left = u_L;
  fan.wave2.right = fan.top;
  fan.wave2.speed_lo = family_lambda(u_L, 2, p);
  fan.wave2.speed_hi = family_lambda(fan.top, 2, p);
  if (fan.wave2.speed_lo > fan.wave2.speed_hi + p.tol_root) {
    raise(ErrorCode::UnsortedFamily, "solve_boundary: inverted reflected rarefaction");
  }
  return fan;
}

FlowState sample_fan(const RiemannFan& fan, double xi, const GasParams& p) {
  if (fan.trivial) return fan.left;
  if (fan.z2 != 0.0) {
    const Wave& w = fan.wave2;
    if (is_shock(w.kind)) {
      if (xi < w.speed_lo) return fan.left;
    } else {
      if (xi <= w.speed_lo) return fan.left;
      if (xi < w.speed_hi) return rarefaction_interior(w, xi, p);
    }
  } else if (xi < fan.wave2.speed_lo) {
    return fan.left;
  }
  if (fan.z1 == 0.0) return fan.right;
  const Wave& w = fan.wave1;
  if (is_shock(w.kind)) {
    return xi < w.speed_lo ? fan.middle : fan.right;
  }
  if (xi <= w.speed_lo) return fan.middle;
  if (xi < w.speed_hi) return rarefaction_interior(w, xi, p);
  return fan.right;
}

FlowState sample_fan(const BoundaryFan& fan, double xi, const GasParams& p) {
  if (fan.z2 == 0.0) return fan.left;
  const Wave& w = fan.wave2;
  if (is_shock(w.kind)) return xi < w.speed_lo ? fan.left : fan.top;
  if (xi <= w.speed_lo) return fan.left;
  if (xi < w.speed_hi) return rarefaction_interior(w, xi, p);
  return fan.top;
}

}  // namespace gw
