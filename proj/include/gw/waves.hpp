#pragma once

#include "gw/params.hpp"
#include "gw/state.hpp"

namespace gw {

// S = shock, R = rarefaction; family 1 rides lambda_plus, family 2 lambda_minus.
enum class WaveKind { S1, S2, R1, R2 };

const char* to_string(WaveKind k) noexcept;

inline bool is_shock(WaveKind k) { return k == WaveKind::S1 || k == WaveKind::S2; }
inline int family_of(WaveKind k) {
  return (k == WaveKind::S1 || k == WaveKind::R1) ? 1 : 2;
}

// One elementary wave. `left` is the smaller-y side; wave curves are always
// parameterized from it. `strength` is the signed invariant increment:
// z1 = w_minus(left) - w_minus(right) for family 1, z2 = w_plus(left) -
// w_plus(right) for family 2. Shocks: S1 has z1 > 0, S2 has z2 < 0.
struct Wave {
  WaveKind kind;
  double strength = 0.0;
  FlowState left;
  FlowState right;
  double speed_lo = 0.0;  // dy/dx; equal to speed_hi for shocks
  double speed_hi = 0.0;
};

// Point on the Hugoniot locus through a base state: alpha = rho/rho0.
struct HugoniotPoint {
  double alpha = 1.0;
  FlowState state;  // downstream (the non-base side)
  double sigma = 0.0;
};

// Transverse velocity on the Hugoniot locus through u0 at density ratio
// alpha, entropy branch v <= v0. Closed form at tau = 0, 1D Newton otherwise.
double hugoniot_v(double alpha, const FlowState& u0, const GasParams& p);

HugoniotPoint hugoniot_point(double alpha, const FlowState& u0, const GasParams& p);

// Shock slope from the first jump condition; the second component is checked
// and InconsistentRH raised when its residual exceeds tol_root.
double shock_speed(const FlowState& u0, const FlowState& u1, const GasParams& p);

// Density ratio realizing a given signed shock strength (z1 >= 0 on family 1,
// z2 <= 0 on family 2), bracketed bisection on the monotone strength map.
double shock_alpha(double z, int family, const FlowState& u0, const GasParams& p);

// Shock-curve maps between invariant drops (beta = omega_base - omega).
// phi1: family-1 drop of w_plus as a function of the w_minus drop, convex,
// slope in (0,1). phi2: family-2 drop of w_minus as a function of the w_plus
// drop (argument <= 0), concave, slope in (0,1).
double phi1(double beta_minus, const FlowState& u0, const GasParams& p);
double phi2(double beta_plus, const FlowState& u0, const GasParams& p);

// Endpoint of the rarefaction curve from u0 with signed strength z: one
// invariant shifts by -z, the wave family's own invariant is held fixed.
FlowState rarefaction_state(double z, int family, const FlowState& u0, const GasParams& p);

// Strict Lax inequalities with margin >= -tol_root; false for degenerate or
// non-shock waves.
bool lax_check(const Wave& w, const GasParams& p);

// Assemble the full wave (endpoint + speeds) from a base state below and a
// signed strength; kind is inferred from the sign.
Wave make_wave(double z, int family, const FlowState& below, const GasParams& p);

}  // namespace gw
