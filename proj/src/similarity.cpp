#include "gw/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "gw/diagnostics.hpp"
#include "gw/errors.hpp"
#include "gw/riemann.hpp"
#include "gw/state.hpp"
#include "gw/waves.hpp"

namespace gw {

double reconstruct_u(const FlowState& u, const GasParams& p) { return bernoulli_u(u, p); }

double l1_distance(const ApproxSolution& a, const ApproxSolution& b, double radius) {
  const GasParams& pa = a.params;
  const GasParams& pb = b.params;
  if (std::abs(pa.gamma - pb.gamma) > 1e-12 || std::abs(pa.a_inf - pb.a_inf) > 1e-12 ||
      std::abs(pa.b0 - pb.b0) > 1e-12) {
    raise(ErrorCode::DomainMismatch, "l1_distance: runs use different gas or wedge parameters");
  }
  if (radius <= 0.0 || radius > a.mesh.x_max() + 1e-12 || radius > b.mesh.x_max() + 1e-12) {
    raise(ErrorCode::DomainMismatch, "l1_distance: radius exceeds a meshed extent");
  }
  const double hx = std::min(a.mesh.dx, b.mesh.dx);
  const double hy = 0.25 * std::min(a.mesh.dy, b.mesh.dy);
  double acc = 0.0;
  for (double x = 0.5 * hx; x < radius; x += hx) {
    const double y_top = pa.b0 * x;
    const double y_bot = -std::sqrt(radius * radius - x * x);
    for (double y = y_top - 0.5 * hy; y > y_bot; y -= hy) {
      const FlowState ua = evaluate(a, x, y);
      const FlowState ub = evaluate(b, x, y);
      acc += std::abs(ua.rho - ub.rho) + std::abs(ua.v - ub.v);
    }
  }
  return acc * hx * hy;
}

ShockFit shock_path_fit(const ApproxSolution& sol, double from_fraction) {
  const int k0 = static_cast<int>(from_fraction * sol.mesh.k_max);
  std::vector<std::pair<double, double>> pts;  // (x, y) of the strongest S2 per column
  int cur_k = -1;
  double cur_strength = 0.0;
  std::pair<double, double> cur_pt{0.0, 0.0};
  const auto flush = [&]() {
    if (cur_k >= 0 && cur_strength > 0.0) pts.push_back(cur_pt);
  };
  for (const DiamondRecord& rec : sol.diamonds) {
    if (rec.k < k0) continue;
    if (rec.k != cur_k) {
      flush();
      cur_k = rec.k;
      cur_strength = 0.0;
    }
    for (const Wave& w : rec.waves) {
      if (w.kind == WaveKind::S2 && std::abs(w.strength) > cur_strength) {
        cur_strength = std::abs(w.strength);
        cur_pt = {rec.x, rec.y};
      }
    }
  }
  flush();

  ShockFit fit;
  fit.points = static_cast<int>(pts.size());
  if (pts.size() < 2) return fit;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  const double det = n * sxx - sx * sx;
  if (det == 0.0) return fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy * sxx - sx * sxy) / det;
  return fit;
}

namespace {

SimilarityEntry entry_of(const ApproxSolution& sol) {
  SimilarityEntry e;
  e.tau = sol.params.tau;
  e.tv_final = total_variation(sol, sol.mesh.k_max);
  const Column& last = sol.columns.back();
  const auto absorb = [&](const FlowState& u) {
    e.sup_state = std::max(e.sup_state, std::abs(u.rho - 1.0) + std::abs(u.v));
    e.sup_u = std::max(e.sup_u, std::abs(reconstruct_u(u, sol.params)));
  };
  absorb(last.strip);
  for (const FlowState& u : last.cells) absorb(u);
  const ShockFit fit = shock_path_fit(sol);
  e.shock_slope = fit.slope;
  e.physical_angle = std::atan(sol.params.tau * std::abs(fit.slope));
  return e;
}

}  // namespace

PhysicalDemo physical_shock_demo(double k_similarity, double mach_a, double mach_b, double gamma) {
  PhysicalDemo d;
  d.k_similarity = k_similarity;
  d.mach_a = mach_a;
  d.mach_b = mach_b;
  const auto side = [&](double mach, double& tau_out, double& slope_out, double& angle_out) {
    PhysicalSetup phys;
    phys.mach_inf = mach;
    phys.theta_wedge = k_similarity / mach;
    const double tau = phys.theta_wedge;  // slenderness taken equal to the wedge angle
    GasParams p = scaled_from_physical(phys, tau);
    p.gamma = gamma;
    p.validate();
    const BoundaryFan fan = solve_boundary({1.0, 0.0}, p);
    tau_out = tau;
    slope_out = fan.wave2.speed_lo;
    angle_out = std::atan(tau * std::abs(fan.wave2.speed_lo));
  };
  side(mach_a, d.tau_a, d.scaled_slope_a, d.angle_a);
  side(mach_b, d.tau_b, d.scaled_slope_b, d.angle_b);
  return d;
}

SimilarityStudy similarity_study(const Mesh& mesh, const GasParams& base,
                                 const std::vector<double>& taus, std::uint64_t seed,
                                 const std::function<void(const std::string&)>& log) {
  mesh.validate();
  const auto say = [&log](const std::string& msg) {
    if (log) log(msg);
  };
  SimilarityStudy st;
  st.radius = 0.8 * mesh.x_max();
  st.demo = physical_shock_demo(0.5, 10.0, 20.0, base.gamma);
  const InitialData init = [](double) { return FlowState{1.0, 0.0}; };
  const ThetaSequence theta(seed);

  GasParams p0 = base;
  p0.tau = 0.0;
  p0.validate();
  say("running the tau = 0 reference");
  const ApproxSolution ref = run(mesh, theta, init, p0);
  st.limit = entry_of(ref);

  for (std::size_t i = 0; i < taus.size(); ++i) {
    GasParams pt = base;
    pt.tau = taus[i];
    pt.validate();
    say("running tau = " + std::to_string(taus[i]) + " (" + std::to_string(i + 1) + "/" +
        std::to_string(taus.size()) + ")");
    const ApproxSolution sol = run(mesh, theta, init, pt);
    SimilarityEntry e = entry_of(sol);
    e.l1_to_limit = l1_distance(sol, ref, st.radius);
    st.entries.push_back(e);
  }
  return st;
}

}  // namespace gw
