#pragma once

#include <array>
#include <utility>

#include "gw/params.hpp"

namespace gw {

// Scaled flow state below the wedge: density and transverse velocity.
struct FlowState {
  double rho = 1.0;
  double v = 0.0;
};

inline bool same_state(const FlowState& a, const FlowState& b) {
  return a.rho == b.rho && a.v == b.v;
}

// Riemann-invariant coordinates (w_minus, w_plus), normalized to (0,0) at the
// free-stream state (rho=1, v=0). w_plus is constant across lambda_plus-family
// simple waves and w_minus across lambda_minus-family ones; each wave's signed
// strength is the drop of the *other* invariant (see waves.hpp).
struct InvariantPair {
  double w_minus = 0.0;
  double w_plus = 0.0;
};

// Conserved vector W and flux F of the scaled balance law dW/dx + dF/dy = 0.
struct ConservedFlux {
  std::array<double, 2> w{};
  std::array<double, 2> f{};
};

// (rho^(gamma-1) - 1)/(gamma - 1), with the log limit at gamma = 1.
double gamma_term(double rho, const GasParams& p);

// q = rho^((gamma-1)/2), the scaled sound-speed factor.
double sound_q(double rho, const GasParams& p);

// Bernoulli aggregate t = 2*gamma_term/a_inf^2 + v^2.
double bernoulli_t(const FlowState& u, const GasParams& p);

// Streamwise perturbation u_bar: (sqrt(1 - t*tau^2) - 1)/tau^2, limit -t/2.
double bernoulli_u(const FlowState& u, const GasParams& p);

// m = 1 + tau^2 * u_bar = sqrt(1 - t*tau^2); the mass-flux factor.
double mass_factor(const FlowState& u, const GasParams& p);

// Characteristic radicand R* = 1 - (2*gamma_term + rho^(gamma-1)) * tau^2 / a_inf^2.
// Strict hyperbolicity needs R* > 0; R* = D + v^2 tau^2 where D is the
// eigenvalue denominator m^2 - (q*tau/a_inf)^2.
double char_radicand(const FlowState& u, const GasParams& p);

// (lambda_minus, lambda_plus) = (m*v -+ c*sqrt(R*)) / D with c = q/a_inf.
std::pair<double, double> eigenvalues(const FlowState& u, const GasParams& p);

// Right eigenvector of the quasilinear form; family = 1 is lambda_plus,
// family = 2 is lambda_minus. Used by the invariant-annihilation property.
std::array<double, 2> right_eigenvector(const FlowState& u, const GasParams& p, int family);

ConservedFlux conserved_and_flux(const FlowState& u, const GasParams& p);

// Exact gradient of the invariant chart at a state. The rho-derivatives of
// the two invariants differ once tau > 0 (they coincide at tau = 0); the
// v-derivatives are +-a_inf/m.
struct InvariantGradient {
  double d_rho_minus;  // d(w_minus)/d(rho)
  double d_v_minus;    // d(w_minus)/d(v)
  double d_rho_plus;   // d(w_plus)/d(rho)
  double d_v_plus;     // d(w_plus)/d(v)
};
InvariantGradient invariant_gradient(const FlowState& u, const GasParams& p);

// Chart map U -> (w_minus, w_plus), closed form for every tau. For tau > 0
// the invariants are built from the flow angle theta = atan(tau*v/m) and the
// Prandtl-Meyer angle of the rho-only Mach surrogate s = a_inf*sqrt(R*)/(tau*q):
//   w_minus = (a_inf/tau)*(theta - dnu),  w_plus = -(a_inf/tau)*(theta + dnu),
// with dnu = nu(s(rho)) - nu(s(1)). These are the exact characteristic
// invariants (grad w_pm . r_pm = 0 identically) and reduce to the tau = 0
// closed forms +-a_inf*v + 2(q-1)/(gamma-1) in the limit.
InvariantPair invariants_of(const FlowState& u, const GasParams& p);

// Independent evaluation of the same chart: the exact gradient field is
// integrated numerically along (1,0) -> (1,v) -> (rho,v). Agreement with
// invariants_of certifies that the gradient is curl-free (a genuine chart,
// not just a pair of line integrals).
InvariantPair invariants_of_v_first(const FlowState& u, const GasParams& p);

// Inverse chart, closed form up to one scalar root-find: rho solves
// dnu(rho) = -tau*(w_minus + w_plus)/(2*a_inf) (monotone Newton with the
// closed-form derivative), then v follows algebraically from the flow angle.
FlowState state_of_invariants(const InvariantPair& inv, const GasParams& p);

}  // namespace gw
