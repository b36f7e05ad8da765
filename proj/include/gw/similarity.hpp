#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gw/glimm.hpp"

namespace gw {

// Streamwise perturbation reconstructed from the Bernoulli relation; zero at
// the free stream, -t/2 in the tau = 0 limit.
double reconstruct_u(const FlowState& u, const GasParams& p);

// L1 distance between two runs over the sector Omega intersected with the
// ball of the given radius about the wedge tip; the integrand is
// |d rho| + |d v| on a midpoint lattice with step dy/4. The runs must share
// gamma, a_inf and b0, and the radius must stay within both meshed extents.
double l1_distance(const ApproxSolution& a, const ApproxSolution& b, double radius);

struct ShockFit {
  double slope = 0.0;
  double intercept = 0.0;
  int points = 0;
};

// Least-squares line through the strongest family-2 shock record of each
// column with k >= from_fraction * k_max; the sampled shock position
// random-walks by O(dy) per column, so the fit averages it out.
ShockFit shock_path_fit(const ApproxSolution& sol, double from_fraction = 0.5);

struct SimilarityEntry {
  double tau = 0.0;
  double l1_to_limit = 0.0;  // distance to the tau = 0 run
  double tv_final = 0.0;     // total variation of (rho, v) along the last column
  double sup_state = 0.0;    // max of |rho - 1| + |v| over the last column
  double sup_u = 0.0;        // max |u_bar| over the last column
  double shock_slope = 0.0;  // fitted scaled shock slope
  double physical_angle = 0.0;  // atan(tau * |slope|): the unscaled shock angle
};

// Two thin wedges sharing the similarity parameter K = M_inf * theta but at
// different Mach numbers map (with tau = theta) to the same scaled problem up
// to O(tau^2); their scaled shock slopes nearly agree while the physical
// shock angles differ by the slenderness factor.
struct PhysicalDemo {
  double k_similarity = 0.0;
  double mach_a = 0.0, mach_b = 0.0;
  double tau_a = 0.0, tau_b = 0.0;
  double scaled_slope_a = 0.0, scaled_slope_b = 0.0;
  double angle_a = 0.0, angle_b = 0.0;  // physical-plane shock angles (radians)
};

PhysicalDemo physical_shock_demo(double k_similarity, double mach_a, double mach_b, double gamma);

struct SimilarityStudy {
  double radius = 0.0;
  SimilarityEntry limit;  // the tau = 0 reference run
  std::vector<SimilarityEntry> entries;  // one per requested tau, input order
  PhysicalDemo demo;
};

// Runs the wedge problem (free-stream data) at each tau and at tau = 0 on
// the same mesh and theta sequence, and measures convergence toward the
// tau = 0 limit over the ball of radius 0.8 * x_max. log, when set, receives
// one progress line per run.
SimilarityStudy similarity_study(const Mesh& mesh, const GasParams& base,
                                 const std::vector<double>& taus, std::uint64_t seed = 0,
                                 const std::function<void(const std::string&)>& log = {});

}  // namespace gw
