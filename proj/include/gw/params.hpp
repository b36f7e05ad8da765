#pragma once

#include <vector>

#include "gw/errors.hpp"

namespace gw {

// Parameters of the scaled flow model. The state variables are (rho, v) on the
// half-plane below the wedge surface y = b0*x (b0 < 0); x is the time-like
// direction. tau is the slenderness parameter; tau = 0 is the hypersonic
// small-disturbance limit.
struct GasParams {
  double gamma = 1.4;      // adiabatic exponent, in [1, 2]
  double a_inf = 1.0;      // scaled free-stream sound-speed parameter, > 0
  double tau = 0.0;        // slenderness, >= 0
  double b0 = -0.3;        // wedge surface slope, < 0
  double rho_floor = 1e-8; // densities at or below this count as vacuum
  double tol_root = 1e-12; // root-finding tolerance (absolute, on residuals)
  double tol_quad = 1e-10; // quadrature tolerance for invariant integrals

  double tau2() const { return tau * tau; }
  // Scale of the interaction estimates: every coupling constant in the wave
  // interaction bounds is O(gamma - 1 + tau^2).
  double eps_scale() const { return gamma - 1.0 + tau * tau; }
  bool gamma_is_one() const;
  void validate() const;  // throws std::invalid_argument on a bad field
};

// Physical free-stream description of a thin wedge at high Mach number.
struct PhysicalSetup {
  double mach_inf = 10.0;     // free-stream Mach number, > 1
  double theta_wedge = 0.05;  // wedge half-angle (radians), > 0
  double u_inf = 1.0;         // free-stream speed, > 0
  double rho_inf = 1.0;       // free-stream density, > 0

  double similarity_K() const { return mach_inf * theta_wedge; }
};

// Build scaled parameters for a given slenderness tau > 0. The scaled
// sound-speed parameter is a_inf = tau * M_inf and the wedge slope maps to
// b0 = -theta / tau; the pair (a_inf, b0) is exactly the data the scaled
// system sees, so fixing them while tau varies realizes the similarity law.
GasParams scaled_from_physical(const PhysicalSetup& phys, double tau);

// Dimensional fields recovered from the scaled solution triple.
struct PhysicalFields {
  double rho;  // physical density
  double u;    // physical streamwise velocity
  double v;    // physical transverse velocity
};

PhysicalFields physical_fields(double rho_bar, double v_bar, double u_bar,
                               const PhysicalSetup& phys, double tau);

// A strictly decreasing tau ladder sharing (gamma, a_inf, b0); used by the
// similarity study. taus must be strictly decreasing and nonnegative.
std::vector<GasParams> tau_family(double a_inf, double gamma, double b0,
                                  const std::vector<double>& taus);

}  // namespace gw
