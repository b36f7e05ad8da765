#include "gw/waves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gw/detail/root.hpp"

namespace gw {
namespace {

constexpr double kAlphaMin = 1e-6;
constexpr double kAlphaMax = 1e6;

// tau = 0 entropy-branch velocity on the Hugoniot locus.
double hugoniot_v_tau0(double alpha, const FlowState& u0, const GasParams& p) {
  const double lead = p.gamma_is_one()
                          ? 2.0 * (alpha - 1.0) * std::log(alpha)
                          : 2.0 * std::pow(u0.rho, p.gamma - 1.0) * (alpha - 1.0) *
                                (std::pow(alpha, p.gamma - 1.0) - 1.0) / (p.gamma - 1.0);
  // (alpha-1) and (alpha^(gamma-1)-1) share a sign, so lead >= 0 for alpha > 0.
  return u0.v - std::sqrt(lead / (p.a_inf * p.a_inf * (alpha + 1.0)));
}

struct HugoniotDrops {
  double minus = 0.0;  // w_minus(u0) - w_minus(u1)
  double plus = 0.0;
  HugoniotPoint point;
};

HugoniotDrops hugoniot_drops(double alpha, const FlowState& u0, const InvariantPair& w0,
                             const GasParams& p) {
  HugoniotDrops d;
  if (alpha == 1.0) {
    d.point.alpha = 1.0;
    d.point.state = u0;
    d.point.sigma = 0.0;  // unused for the degenerate point
    return d;
  }
  d.point = hugoniot_point(alpha, u0, p);
  const InvariantPair w1 = invariants_of(d.point.state, p);
  d.minus = w0.w_minus - w1.w_minus;
  d.plus = w0.w_plus - w1.w_plus;
  return d;
}

double family_lambda(const FlowState& u, int family, const GasParams& p) {
  const auto [lm, lp] = eigenvalues(u, p);
  return family == 1 ? lp : lm;
}

}  // namespace

const char* to_string(WaveKind k) noexcept {
  switch (k) {
    case WaveKind::S1: return "S1";
    case WaveKind::S2: return "S2";
    case WaveKind::R1: return "R1";
    case WaveKind::R2: return "R2";
  }
  return "?";
}

double hugoniot_v(double alpha, const FlowState& u0, const GasParams& p) {
  if (!(alpha > 0.0)) throw std::invalid_argument("hugoniot_v: alpha must be positive");
  if (alpha == 1.0) return u0.v;
  const double seed = hugoniot_v_tau0(alpha, u0, p);
  if (p.tau == 0.0) return seed;

  const double rho1 = alpha * u0.rho;
  const double m0 = mass_factor(u0, p);
  const double ub0 = bernoulli_u(u0, p);
  const double t2 = p.tau2();
  double lhs = 0.0, rhs = 0.0;
  const auto jump_residual = [&](double v) {
    const FlowState u1{rho1, v};
    const double m1 = mass_factor(u1, p);  // throws on sonic defect
    const double ub1 = bernoulli_u(u1, p);
    lhs = (alpha * v - u0.v) * (v - u0.v);
    rhs = (alpha * m1 - m0) * (ub0 - ub1);
    return lhs - rhs;
  };

  double v = seed;
  double f = jump_residual(v);
  for (int it = 0; it < 60; ++it) {
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
    if (std::abs(f) <= p.tol_root * scale) {
      if (v >= u0.v) raise(ErrorCode::NoConvergence, "hugoniot_v left the entropy branch");
      return v;
    }
    const FlowState u1{rho1, v};
    const double m1 = mass_factor(u1, p);
    const double ub1 = bernoulli_u(u1, p);
    const double dub = -v / m1;
    const double df = alpha * (v - u0.v) + (alpha * v - u0.v) +
                      dub * ((alpha * m1 - m0) - alpha * t2 * (ub0 - ub1));
    if (df == 0.0) raise(ErrorCode::NoConvergence, "hugoniot_v: flat jump function");
    const double full = f / df;
    double step = 1.0;
    bool advanced = false;
    for (int back = 0; back < 40; ++back) {
      const double trial = v - step * full;
      try {
        const double ft = jump_residual(trial);
        if (std::abs(ft) < std::abs(f)) {
          v = trial;
          f = ft;
          advanced = true;
          break;
        }
      } catch (const Error&) {
        // stepped outside the sonic region; shorten
      }
      step *= 0.5;
    }
    if (!advanced) raise(ErrorCode::NoConvergence, "hugoniot_v: line search stalled");
  }
  raise(ErrorCode::NoConvergence, "hugoniot_v: Newton did not reach tol_root");
}

HugoniotPoint hugoniot_point(double alpha, const FlowState& u0, const GasParams& p) {
  if (!(alpha > 0.0)) throw std::invalid_argument("hugoniot_point: alpha must be positive");
  if (alpha == 1.0) throw std::invalid_argument("hugoniot_point: slope undefined at alpha=1");
  HugoniotPoint hp;
  hp.alpha = alpha;
  hp.state = {alpha * u0.rho, hugoniot_v(alpha, u0, p)};
  const double m0 = mass_factor(u0, p);
  const double m1 = mass_factor(hp.state, p);
  hp.sigma = (alpha * hp.state.v - u0.v) / (alpha * m1 - m0);
  return hp;
}

double shock_speed(const FlowState& u0, const FlowState& u1, const GasParams& p) {
  const ConservedFlux a = conserved_and_flux(u0, p);
  const ConservedFlux b = conserved_and_flux(u1, p);
  const double dw0 = b.w[0] - a.w[0];
  if (std::abs(dw0) < 1e-300) {
    raise(ErrorCode::InconsistentRH, "shock_speed: vanishing mass jump");
  }
  const double sigma = (b.f[0] - a.f[0]) / dw0;
  const double lhs = sigma * (b.w[1] - a.w[1]);
  const double rhs = b.f[1] - a.f[1];
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  if (std::abs(lhs - rhs) > 10.0 * p.tol_root * scale) {
    raise(ErrorCode::InconsistentRH, "shock_speed: second jump condition violated, residual " +
                                         std::to_string(lhs - rhs));
  }
  return sigma;
}

double shock_alpha(double z, int family, const FlowState& u0, const GasParams& p) {
  if (family != 1 && family != 2) throw std::invalid_argument("shock_alpha: family must be 1 or 2");
  if (z == 0.0) return 1.0;
  if ((family == 1 && z < 0.0) || (family == 2 && z > 0.0)) {
    throw std::invalid_argument("shock_alpha: strength sign does not match a shock branch");
  }
  const InvariantPair w0 = invariants_of(u0, p);
  const auto gap = [&](double alpha) {
    const HugoniotDrops d = hugoniot_drops(alpha, u0, w0, p);
    return (family == 1 ? d.minus : d.plus) - z;
  };

  // strength is monotone in alpha on both branches: it grows as alpha leaves
  // 1 downward on family 1 and falls as alpha leaves 1 upward on family 2,
  // so walk outward from the degenerate end until the target is enclosed.
  double inner = 1.0, g_inner = -z;
  double outer = 1.0, g_outer = 0.0;
  bool bracketed = false;
  for (int step = 0; step < 64; ++step) {
    outer = family == 1 ? std::max(0.5 * outer, kAlphaMin) : std::min(2.0 * outer, kAlphaMax);
    try {
      g_outer = gap(outer);
    } catch (const Error&) {
      raise(ErrorCode::RangeExceeded, "shock_alpha: curve leaves the admissible region before "
                                      "reaching strength " + std::to_string(z));
    }
    if ((g_outer > 0.0) != (g_inner > 0.0) || g_outer == 0.0) {
      bracketed = true;
      break;
    }
    inner = outer;
    g_inner = g_outer;
    if (outer == kAlphaMin || outer == kAlphaMax) break;
  }
  if (!bracketed) {
    raise(ErrorCode::RangeExceeded, "shock_alpha: strength " + std::to_string(z) +
                                        " beyond the bracket [1e-6, 1e6]");
  }
  const double ftol = 1e-13 * std::max(1.0, std::abs(z));
  return detail::bracket_root(gap, inner, outer, g_inner, g_outer, p.tol_root, ftol);
}

double phi1(double beta_minus, const FlowState& u0, const GasParams& p) {
  if (beta_minus < 0.0) throw std::invalid_argument("phi1: beta_minus must be >= 0");
  if (beta_minus == 0.0) return 0.0;
  const double alpha = shock_alpha(beta_minus, 1, u0, p);
  const InvariantPair w0 = invariants_of(u0, p);
  return hugoniot_drops(alpha, u0, w0, p).plus;
}

double phi2(double beta_plus, const FlowState& u0, const GasParams& p) {
  if (beta_plus > 0.0) throw std::invalid_argument("phi2: beta_plus must be <= 0");
  if (beta_plus == 0.0) return 0.0;
  const double alpha = shock_alpha(beta_plus, 2, u0, p);
  const InvariantPair w0 = invariants_of(u0, p);
  return hugoniot_drops(alpha, u0, w0, p).minus;
}

FlowState rarefaction_state(double z, int family, const FlowState& u0, const GasParams& p) {
  const InvariantPair w0 = invariants_of(u0, p);
  if (family == 1) return state_of_invariants({w0.w_minus - z, w0.w_plus}, p);
  if (family == 2) return state_of_invariants({w0.w_minus, w0.w_plus - z}, p);
  throw std::invalid_argument("rarefaction_state: family must be 1 or 2");
}

bool lax_check(const Wave& w, const GasParams& p) {
  if (!is_shock(w.kind) || w.strength == 0.0 || same_state(w.left, w.right)) return false;
  const int fam = family_of(w.kind);
  const double sigma = w.speed_lo;
  const double margin = std::min(sigma - family_lambda(w.right, fam, p),
                                 family_lambda(w.left, fam, p) - sigma);
  return margin >= -p.tol_root;
}

Wave make_wave(double z, int family, const FlowState& below, const GasParams& p) {
  if (family != 1 && family != 2) throw std::invalid_argument("make_wave: family must be 1 or 2");
  Wave w;
  w.strength = z;
  w.left = below;
  const bool shock = (family == 1) ? (z > 0.0) : (z < 0.0);
  if (z == 0.0) {
    w.kind = family == 1 ? WaveKind::R1 : WaveKind::R2;
    w.right = below;
    w.speed_lo = w.speed_hi = family_lambda(below, family, p);
    return w;
  }
  if (shock) {
    w.kind = family == 1 ? WaveKind::S1 : WaveKind::S2;
    const double alpha = shock_alpha(z, family, below, p);
    const HugoniotPoint hp = hugoniot_point(alpha, below, p);
    w.right = hp.state;
    w.speed_lo = w.speed_hi = hp.sigma;
  } else {
    w.kind = family == 1 ? WaveKind::R1 : WaveKind::R2;
    w.right = rarefaction_state(z, family, below, p);
    w.speed_lo = family_lambda(below, family, p);
    w.speed_hi = family_lambda(w.right, family, p);
    if (w.speed_lo > w.speed_hi + p.tol_root) {
      raise(ErrorCode::UnsortedFamily, "make_wave: inverted rarefaction fan");
    }
  }
  return w;
}

}  // namespace gw
