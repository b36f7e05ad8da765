#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gw/glimm.hpp"
#include "gw/params.hpp"

namespace gw {

// Weights of the wave-interaction potential: F = k_b*L1 + L2 + 4*c_star*(gamma-1+tau^2)*Q
// with L1/L2 the summed strengths of family-1/family-2 shocks crossing a
// column's slab and Q the potential over approaching shock pairs.
struct FunctionalWeights {
  double k_b = 2.0;
  double c_star = 10.0;

  void validate() const;  // k_b in (1, 4), c_star >= k_b
};

struct FunctionalValue {
  double l1 = 0.0;
  double l2 = 0.0;
  double l = 0.0;  // k_b*l1 + l2
  double q = 0.0;
  double f = 0.0;  // l + 4*c_star*(gamma-1+tau^2)*q
};

FunctionalValue functional_on_column(const ApproxSolution& sol, int k,
                                     const FunctionalWeights& w = {});

struct MonotoneReport {
  std::vector<double> f;        // F per advanced column
  double f0 = 0.0;
  double smallness = 0.0;       // (gamma-1+tau^2) * F(0)
  bool smallness_ok = false;    // smallness <= 0.05
  bool nonincreasing = false;   // within slack 1e-12 * max(1, F(0))
  int first_violation = -1;
  double max_rise = 0.0;
};

MonotoneReport check_f_monotone(const ApproxSolution& sol, const FunctionalWeights& w = {});

// Variation of (rho, v) along column k: sum over adjacent cell interfaces of
// the componentwise jumps |d rho| + |d v|.
double total_variation(const ApproxSolution& sol, int k);

// L1 distance integral (|d rho| + |d v|) dy between the solution traces at
// x1 and x2, compared at matching depth below the wedge surface; lattice dy/4.
double l1_continuity(const ApproxSolution& sol, double x1, double x2);

struct EntropyPair {
  double e = 0.0;
  double q = 0.0;
};

// Convex entropy pair of the tau = 0 system; requires tau = 0 and gamma > 1.
EntropyPair entropy_pair(const FlowState& u, const GasParams& p);

struct BumpResidual {
  double x0 = 0.0, y0 = 0.0, rx = 0.0, ry = 0.0;
  double shock_residual = 0.0;  // sum of per-shock dissipation against the bump
  double weak_form = 0.0;       // full weak-form residual on a midpoint lattice
};

struct EntropyReport {
  std::vector<BumpResidual> bumps;
  double min_shock_residual = 0.0;
  double min_weak_form = 0.0;
};

// Tests the entropy inequality against n_bumps nonnegative C^1 bump
// functions placed deterministically (hashed by seed) inside the domain.
EntropyReport entropy_residual(const ApproxSolution& sol, int n_bumps, std::uint64_t seed = 1);

// One randomized verification case for a wave-curve or interaction estimate.
// The registry (see probe_case_names) covers base-state sensitivity of the
// shock-curve maps, the eight interior interaction patterns, the boundary
// reflection coefficient, and the four boundary interaction patterns.
struct ProbeReport {
  std::string case_name;
  int samples = 0;
  int rejected = 0;  // draws outside the admissible region (vacuum, range)
  // equality cases: |defect| <= 1e-10 counts as exact
  int exact_hits = 0;
  double max_equality_defect = 0.0;
  // signed case-specific defect range and normalized constant
  double min_defect = 0.0;
  double max_defect = 0.0;
  double fitted = 0.0;
  double slope = 0.0;  // boundary reflection: worst-case coefficient
  // outgoing wave kind tallies across samples
  int outgoing_s1 = 0, outgoing_r1 = 0, outgoing_s2 = 0, outgoing_r2 = 0;
  std::string note;
};

ProbeReport interaction_probe(const std::string& case_name, int n_samples, std::uint64_t seed,
                              const GasParams& p, int n_threads = 0);

const std::vector<std::string>& probe_case_names();

}  // namespace gw
