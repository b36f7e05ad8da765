#pragma once

#include "gw/params.hpp"
#include "gw/state.hpp"
#include "gw/waves.hpp"

namespace gw {

// Self-similar two-wave fan: states bottom-to-top are left, middle, right,
// separated by the family-2 wave (below) and the family-1 wave (above).
// A zero-strength component means that wave is absent.
struct RiemannFan {
  FlowState left;
  FlowState middle;
  FlowState right;
  Wave wave2;
  Wave wave1;
  double z1 = 0.0;
  double z2 = 0.0;
  bool trivial = false;  // left == right bitwise; no waves, middle == left

  int wave_count() const { return (z2 != 0.0 ? 1 : 0) + (z1 != 0.0 ? 1 : 0); }
};

// Boundary fan: one family-2 wave reflected off the slip boundary; `top` is
// the state between the wave and the wedge surface.
struct BoundaryFan {
  FlowState left;
  FlowState top;
  Wave wave2;
  double z2 = 0.0;

  int wave_count() const { return z2 != 0.0 ? 1 : 0; }
};

// Piecewise wave-curve endpoint map: applies the family's shock branch
// (invariant drop through phi1/phi2) or rarefaction branch (pure shift) to
// omega_L, the invariants of the below state. Continuous and C^2 at z = 0.
InvariantPair wave_endpoint(double z, int family, const InvariantPair& omega_L,
                            const FlowState& u_L, const GasParams& p);

// Interior Riemann problem: u_L below, u_R above. Exact decoupled solution
// for the two-rarefaction sign pattern, damped quasi-Newton otherwise, with
// fixed-point and tau-continuation fallbacks.
RiemannFan solve_interior(const FlowState& u_L, const FlowState& u_R, const GasParams& p);

// Boundary Riemann problem at the wedge surface: find the single family-2
// wave whose endpoint satisfies v = (1 + tau^2 u) b0.
BoundaryFan solve_boundary(const FlowState& u_L, const GasParams& p);

// State at slope xi = dy/dx through the fan origin; piecewise constant
// outside waves, exact in-fan states inside rarefactions.
FlowState sample_fan(const RiemannFan& fan, double xi, const GasParams& p);
FlowState sample_fan(const BoundaryFan& fan, double xi, const GasParams& p);

}  // namespace gw
