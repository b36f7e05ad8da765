#include "gw/state.hpp"

#include <cmath>
#include <sstream>

namespace gw {
namespace {

constexpr int kMaxQuadDepth = 40;
constexpr double kPi = 3.14159265358979323846;

std::string describe(const FlowState& u) {
  std::ostringstream os;
  os << "(rho=" << u.rho << ", v=" << u.v << ")";
  return os.str();
}

// Adaptive Simpson with Richardson acceleration. The integrands here are
// smooth wherever the sonic guard holds, so depth rarely exceeds ~10.
template <class F>
double simpson_step(F&& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth >= kMaxQuadDepth || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
}

template <class F>
double integrate(F&& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, 0);
}

// tau = 0 closed forms of the chart and its inverse.
InvariantPair invariants_tau0(const FlowState& u, const GasParams& p) {
  const double base = p.gamma_is_one() ? std::log(u.rho)
                                       : 2.0 * (sound_q(u.rho, p) - 1.0) / (p.gamma - 1.0);
  return {p.a_inf * u.v + base, -p.a_inf * u.v + base};
}

FlowState state_tau0(const InvariantPair& inv, const GasParams& p) {
  FlowState u;
  if (p.gamma_is_one()) {
    u.rho = std::exp(0.5 * (inv.w_minus + inv.w_plus));
  } else {
    const double q = (p.gamma - 1.0) * (inv.w_minus + inv.w_plus) / 4.0 + 1.0;
    if (!(q > 0.0)) {
      raise(ErrorCode::VacuumReached, "invariant pair outside the chart image: w_minus + w_plus"
                                      " <= -4/(gamma-1)");
    }
    u.rho = std::pow(q, 2.0 / (p.gamma - 1.0));
  }
  u.v = (inv.w_minus - inv.w_plus) / (2.0 * p.a_inf);
  if (!(u.rho > p.rho_floor)) {
    raise(ErrorCode::VacuumReached, "inverse chart hit the density floor");
  }
  return u;
}

// rho part of the tau = 0 inverse, floor-clamped instead of throwing; used
// only to seed the tau > 0 root-find.
double state_tau0_rho_seed(const InvariantPair& inv, const GasParams& p) {
  if (p.gamma_is_one()) return std::exp(0.5 * (inv.w_minus + inv.w_plus));
  const double q = (p.gamma - 1.0) * (inv.w_minus + inv.w_plus) / 4.0 + 1.0;
  if (!(q > 0.0)) return 2.0 * p.rho_floor;
  return std::pow(q, 2.0 / (p.gamma - 1.0));
}

// rho-only pieces of the exact chart at tau > 0. The Mach surrogate
// s = sqrt(M^2 - 1) = a_inf*sqrt(R*)/(tau*q) depends on rho alone because the
// Bernoulli relation ties the flow speed to the density. nu is the
// Prandtl-Meyer angle; dnu is its offset from the free-stream value,
// evaluated through atan-difference identities so small tau never cancels.
struct ChartRho {
  double q = 1.0;      // rho^((gamma-1)/2)
  double B = 0.0;      // a_inf^2 - 2*gamma_term*tau^2 = a_inf^2*(m^2 + tau^2 v^2)
  double rstar = 0.0;  // characteristic radicand (rho-only)
  double dnu = 0.0;    // nu(s(rho)) - nu(s(1))
  double dnu_drho = 0.0;
};

double pm_nu(double s, const GasParams& p) {
  if (p.gamma_is_one()) return s - std::atan(s);
  const double k = std::sqrt((p.gamma + 1.0) / (p.gamma - 1.0));
  return k * std::atan(s / k) - std::atan(s);
}

ChartRho chart_rho(double rho, const GasParams& p) {
  ChartRho c;
  const double a2 = p.a_inf * p.a_inf, t2 = p.tau2();
  c.q = sound_q(rho, p);
  const double big_g = gamma_term(rho, p);
  c.B = a2 - 2.0 * big_g * t2;
  c.rstar = 1.0 - (2.0 * big_g + c.q * c.q) * t2 / a2;
  if (!(c.rstar > 0.0)) {
    std::ostringstream os;
    os << "chart outside the hyperbolic region: R* <= 0 at rho=" << rho;
    raise(ErrorCode::SonicDefectExceeded, os.str());
  }
  const double s = p.a_inf * std::sqrt(c.rstar) / (p.tau * c.q);
  const double s_inf = std::sqrt(a2 - t2) / p.tau;
  // s - s_inf without cancellation: s^2 - s_inf^2 = -G*((gamma-1)a^2 + 2tau^2)/(tau*q)^2.
  const double d = -big_g * ((p.gamma - 1.0) * a2 + 2.0 * t2) / (t2 * c.q * c.q * (s + s_inf));
  const double cross = s * s_inf;
  if (p.gamma_is_one()) {
    c.dnu = d - std::atan(d / (1.0 + cross));
  } else {
    const double k = std::sqrt((p.gamma + 1.0) / (p.gamma - 1.0));
    c.dnu = k * std::atan(k * d / (k * k + cross)) - std::atan(d / (1.0 + cross));
  }
  c.dnu_drho = -p.tau * std::pow(rho, p.gamma - 2.0) * p.a_inf * std::sqrt(c.rstar) / (c.q * c.B);
  return c;
}

}  // namespace

double gamma_term(double rho, const GasParams& p) {
  if (p.gamma_is_one()) return std::log(rho);
  return (std::pow(rho, p.gamma - 1.0) - 1.0) / (p.gamma - 1.0);
}

double sound_q(double rho, const GasParams& p) { return std::pow(rho, 0.5 * (p.gamma - 1.0)); }

double bernoulli_t(const FlowState& u, const GasParams& p) {
  return 2.0 * gamma_term(u.rho, p) / (p.a_inf * p.a_inf) + u.v * u.v;
}

double mass_factor(const FlowState& u, const GasParams& p) {
  if (p.tau == 0.0) return 1.0;
  const double arg = 1.0 - bernoulli_t(u, p) * p.tau2();
  if (!(arg > 0.0)) {
    raise(ErrorCode::SonicDefectExceeded, "1 - t*tau^2 <= 0 at " + describe(u));
  }
  return std::sqrt(arg);
}

double bernoulli_u(const FlowState& u, const GasParams& p) {
  // (m - 1)/tau^2 rewritten as -t/(1 + m): same algebra, but no cancellation
  // between m and 1, so the small-tau limit stays at full precision.
  return -bernoulli_t(u, p) / (1.0 + mass_factor(u, p));
}

double char_radicand(const FlowState& u, const GasParams& p) {
  const double q = sound_q(u.rho, p);
  return 1.0 - (2.0 * gamma_term(u.rho, p) + q * q) * p.tau2() / (p.a_inf * p.a_inf);
}

std::pair<double, double> eigenvalues(const FlowState& u, const GasParams& p) {
  const double m = mass_factor(u, p);
  const double c = sound_q(u.rho, p) / p.a_inf;
  const double rstar = char_radicand(u, p);
  const double den = m * m - c * c * p.tau2();
  if (!(rstar > 0.0) || !(den > 0.0)) {
    raise(ErrorCode::SonicDefectExceeded,
          "characteristic radicand/denominator nonpositive at " + describe(u));
  }
  const double root = c * std::sqrt(rstar);
  return {(m * u.v - root) / den, (m * u.v + root) / den};
}

std::array<double, 2> right_eigenvector(const FlowState& u, const GasParams& p, int family) {
  const auto [lm, lp] = eigenvalues(u, p);
  const double lambda = (family == 1) ? lp : lm;
  const double m = mass_factor(u, p);
  // du_bar/drho and du_bar/dv from the Bernoulli closure.
  const double du_drho = -std::pow(u.rho, p.gamma - 2.0) / (p.a_inf * p.a_inf * m);
  const double du_dv = -u.v / m;
  const double scale = p.a_inf * p.a_inf / sound_q(u.rho, p);
  return {scale * -(lambda + du_dv), scale * du_drho};
}

ConservedFlux conserved_and_flux(const FlowState& u, const GasParams& p) {
  const double ub = bernoulli_u(u, p);
  ConservedFlux cf;
  cf.w = {u.rho * (1.0 + p.tau2() * ub), u.v};
  cf.f = {u.rho * u.v, -ub};
  return cf;
}

InvariantGradient invariant_gradient(const FlowState& u, const GasParams& p) {
  InvariantGradient g;
  if (p.tau == 0.0) {
    g.d_rho_minus = g.d_rho_plus = std::pow(u.rho, 0.5 * (p.gamma - 3.0));
    g.d_v_minus = p.a_inf;
    g.d_v_plus = -p.a_inf;
    return g;
  }
  const ChartRho c = chart_rho(u.rho, p);
  const double m = mass_factor(u, p);
  // d(theta)/dv = tau/m and d(theta)/drho = tau^3 v rho^(gamma-2)/(m B);
  // combined with dnu_drho and the a_inf/tau scale these collapse to:
  const double sonic = p.a_inf * std::sqrt(c.rstar);
  const double swirl = p.tau2() * u.v * c.q;
  const double common = p.a_inf * std::pow(u.rho, p.gamma - 2.0) / (m * c.q * c.B);
  g.d_rho_minus = common * (swirl + m * sonic);
  g.d_rho_plus = common * (m * sonic - swirl);
  g.d_v_minus = p.a_inf / m;
  g.d_v_plus = -p.a_inf / m;
  return g;
}

InvariantPair invariants_of(const FlowState& u, const GasParams& p) {
  if (!(u.rho > p.rho_floor)) {
    raise(ErrorCode::VacuumReached, "state below density floor: " + describe(u));
  }
  if (p.tau == 0.0) return invariants_tau0(u, p);
  const ChartRho c = chart_rho(u.rho, p);
  const double theta = std::atan(p.tau * u.v / mass_factor(u, p));
  const double scale = p.a_inf / p.tau;
  return {scale * (theta - c.dnu), -scale * (theta + c.dnu)};
}

InvariantPair invariants_of_v_first(const FlowState& u, const GasParams& p) {
  if (!(u.rho > p.rho_floor)) {
    raise(ErrorCode::VacuumReached, "state below density floor: " + describe(u));
  }
  if (p.tau == 0.0) return invariants_tau0(u, p);
  const auto v_minus = [&](double vv) { return invariant_gradient({1.0, vv}, p).d_v_minus; };
  const auto v_plus = [&](double vv) { return invariant_gradient({1.0, vv}, p).d_v_plus; };
  const auto r_minus = [&](double r) { return invariant_gradient({r, u.v}, p).d_rho_minus; };
  const auto r_plus = [&](double r) { return invariant_gradient({r, u.v}, p).d_rho_plus; };
  return {integrate(v_minus, 0.0, u.v, p.tol_quad) + integrate(r_minus, 1.0, u.rho, p.tol_quad),
          integrate(v_plus, 0.0, u.v, p.tol_quad) + integrate(r_plus, 1.0, u.rho, p.tol_quad)};
}

FlowState state_of_invariants(const InvariantPair& inv, const GasParams& p) {
  if (p.tau == 0.0) return state_tau0(inv, p);
  const double half = 0.5 * p.tau / p.a_inf;
  const double dnu_target = -half * (inv.w_minus + inv.w_plus);
  const double theta = half * (inv.w_minus - inv.w_plus);
  if (!(std::abs(theta) < 0.5 * kPi)) {
    raise(ErrorCode::SonicDefectExceeded,
          "inverse chart: flow angle at or past the sonic ceiling");
  }
  const double a2 = p.a_inf * p.a_inf, t2 = p.tau2();
  const double nu_inf = pm_nu(std::sqrt(a2 - t2) / p.tau, p);
  if (!(dnu_target > -nu_inf)) {
    raise(ErrorCode::SonicDefectExceeded,
          "inverse chart: compression past the sonic limit");
  }
  if (!p.gamma_is_one()) {
    const double k = std::sqrt((p.gamma + 1.0) / (p.gamma - 1.0));
    if (!(dnu_target < (k - 1.0) * 0.5 * kPi - nu_inf)) {
      raise(ErrorCode::VacuumReached, "invariant pair outside the chart image (vacuum side)");
    }
  }

  // dnu is strictly decreasing in rho, so bracket between the density floor
  // and the sonic density (where R* = 0) and run a safeguarded Newton.
  double hi;
  if (p.gamma_is_one()) {
    hi = std::exp(0.5 * (a2 / t2 - 1.0));
  } else {
    const double q2 = ((p.gamma - 1.0) * a2 / t2 + 2.0) / (p.gamma + 1.0);
    hi = std::pow(q2, 1.0 / (p.gamma - 1.0));
  }
  hi *= 1.0 - 1e-12;
  double lo = p.rho_floor;
  if (!(chart_rho(lo, p).dnu > dnu_target)) {
    raise(ErrorCode::VacuumReached, "inverse chart hit the density floor");
  }
  double rho = state_tau0_rho_seed(inv, p);
  rho = std::min(std::max(rho, lo * 2.0), hi);
  const double ftol = 0.5 * p.tol_root * p.tau / p.a_inf;
  bool done = false;
  for (int it = 0; it < 80 && !done; ++it) {
    const ChartRho c = chart_rho(rho, p);
    const double f = c.dnu - dnu_target;
    if (std::abs(f) <= ftol) {
      done = true;
      break;
    }
    if (f > 0.0) {
      lo = rho;
    } else {
      hi = rho;
    }
    double next = rho - f / c.dnu_drho;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == rho) {
      done = true;  // bracket exhausted at double precision
      break;
    }
    rho = next;
  }
  if (!done) raise(ErrorCode::NoConvergence, "inverse chart did not reach tol_root");

  // v follows from the flow angle: with w = tan(theta)/tau, the Bernoulli
  // relation gives v = w*sqrt(B)/(a_inf*sqrt(1 + tau^2 w^2)).
  const double w = std::tan(theta) / p.tau;
  const double big_b = a2 - 2.0 * gamma_term(rho, p) * t2;
  const double v = w * std::sqrt(big_b) / (p.a_inf * std::sqrt(1.0 + t2 * w * w));
  return {rho, v};
}

}  // namespace gw
