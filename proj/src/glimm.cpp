#include "gw/glimm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gw {
namespace {

FlowState column_state_at(const Column& col, const Mesh& m, double y) {
  const double depth = col.b - y;
  if (depth <= m.dy) return col.strip;
  int i = static_cast<int>(std::ceil(depth / (2.0 * m.dy))) - 1;
  i = std::clamp(i, 0, static_cast<int>(col.cells.size()) - 1);
  return col.cells[i];
}

// State of the slab [x_k, x_k + dxx] at height y: walk the fans top to
// bottom and defer to the first one whose spread reaches down to y. Gaps
// between fans are constant regions that sample_fan's clamping reproduces
// from the fan above.
FlowState slab_sample(const Column& col, const Mesh& m, const GasParams& p, double dxx, double y) {
  if (y >= col.b + col.bfan.wave2.speed_lo * dxx) {
    return sample_fan(col.bfan, (y - col.b) / dxx, p);
  }
  {
    const double o = col.b - m.dy;
    const double lo = std::min(col.strip_fan.wave2.speed_lo, col.strip_fan.wave1.speed_lo);
    if (y >= o + lo * dxx) return sample_fan(col.strip_fan, (y - o) / dxx, p);
  }
  for (std::size_t j = 0; j < col.interior.size(); ++j) {
    const RiemannFan& f = col.interior[j];
    const double o = col.b - 2.0 * (j + 1) * m.dy;
    const double lo = std::min(f.wave2.speed_lo, f.wave1.speed_lo);
    if (y >= o + lo * dxx) return sample_fan(f, (y - o) / dxx, p);
  }
  return col.cells.back();
}

std::pair<double, double> fan_spread(const RiemannFan& f) {
  const double lo = f.z2 != 0.0 ? f.wave2.speed_lo : f.wave1.speed_lo;
  const double hi = f.z1 != 0.0 ? f.wave1.speed_hi : f.wave2.speed_hi;
  return {lo, hi};
}

}  // namespace

void Mesh::validate() const {
  if (!(dx > 0.0) || !(dy > 0.0)) throw std::invalid_argument("Mesh: dx and dy must be positive");
  if (k_max < 0) throw std::invalid_argument("Mesh: k_max must be nonnegative");
  if (y_depth < 2) throw std::invalid_argument("Mesh: y_depth must be at least 2");
  if (!(cfl_safety >= 1.0)) throw std::invalid_argument("Mesh: cfl_safety must be >= 1");
}

double ThetaSequence::at(int k) const {
  if (k < 0) throw std::invalid_argument("ThetaSequence: negative column index");
  if (seed_ == 0) {
    double u = 0.0, w = 0.5;
    for (std::uint64_t n = static_cast<std::uint64_t>(k) + 1; n; n >>= 1, w *= 0.5) {
      if (n & 1) u += w;
    }
    return 2.0 * u - 1.0;
  }
  std::uint64_t z = seed_ + (static_cast<std::uint64_t>(k) + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  const double u = (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

std::vector<const DiamondRecord*> ApproxSolution::column_records(int k) const {
  std::vector<const DiamondRecord*> out;
  const auto first = std::lower_bound(diamonds.begin(), diamonds.end(), k,
                                      [](const DiamondRecord& r, int key) { return r.k < key; });
  for (auto it = first; it != diamonds.end() && it->k == k; ++it) out.push_back(&*it);
  return out;
}

Column init_column(const Mesh& mesh, const ThetaSequence& theta, const InitialData& init,
                   const GasParams& p) {
  (void)p;
  Column c;
  c.k = 0;
  c.x = 0.0;
  c.b = 0.0;
  c.theta = theta.at(0);
  c.strip = init(-0.5 * (1.0 - c.theta) * mesh.dy);
  c.cells.resize(mesh.y_depth);
  for (int i = 0; i < mesh.y_depth; ++i) {
    c.cells[i] = init(-(2.0 * i + 1.0 - c.theta) * mesh.dy);
  }
  return c;
}

void advance_column(ApproxSolution& sol, int k) {
  const Mesh& m = sol.mesh;
  const GasParams& p = sol.params;
  if (k < 0 || k >= m.k_max || static_cast<int>(sol.columns.size()) != k + 1) {
    throw std::logic_error("advance_column: columns must be advanced in order");
  }
  Column& col = sol.columns[k];

  col.bfan = solve_boundary(col.strip, p);
  col.strip_fan = solve_interior(col.cells[0], col.strip, p);
  col.interior.resize(m.y_depth - 1);
  for (int j = 0; j + 1 < m.y_depth; ++j) {
    col.interior[j] = solve_interior(col.cells[j + 1], col.cells[j], p);
  }
  col.has_fans = true;

  double sup = 0.0;
  const auto eat = [&sup](const Wave& w, double z) {
    if (z != 0.0) sup = std::max({sup, std::abs(w.speed_lo), std::abs(w.speed_hi)});
  };
  eat(col.bfan.wave2, col.bfan.z2);
  eat(col.strip_fan.wave2, col.strip_fan.z2);
  eat(col.strip_fan.wave1, col.strip_fan.z1);
  for (const RiemannFan& f : col.interior) {
    eat(f.wave2, f.z2);
    eat(f.wave1, f.z1);
  }
  col.sup_lambda = sup;
  if ((sup + std::abs(p.b0)) * m.cfl_safety * m.dx > m.dy) {
    raise(ErrorCode::CFLViolation,
          "advance_column: column " + std::to_string(k) + " signal speed " + std::to_string(sup) +
              " exceeds the mesh budget dy/dx = " + std::to_string(m.dy / m.dx));
  }
  if (col.bfan.wave_count() > 0) {
    const double drop = std::max(std::abs(col.bfan.wave2.speed_lo - p.b0),
                                 std::abs(col.bfan.wave2.speed_hi - p.b0));
    if (drop * m.cfl_safety * m.dx > m.dy) {
      raise(ErrorCode::CFLViolation, "advance_column: column " + std::to_string(k) +
                                         " boundary wave leaves the strip band");
    }
  }

  // fans must stay disjoint across the slab
  struct Span {
    double o, lo, hi;
  };
  std::vector<Span> spans;
  if (col.bfan.wave_count() > 0) {
    spans.push_back({col.b, col.bfan.wave2.speed_lo, col.bfan.wave2.speed_hi});
  }
  if (col.strip_fan.wave_count() > 0) {
    const auto [lo, hi] = fan_spread(col.strip_fan);
    spans.push_back({col.b - m.dy, lo, hi});
  }
  for (std::size_t j = 0; j < col.interior.size(); ++j) {
    if (col.interior[j].wave_count() > 0) {
      const auto [lo, hi] = fan_spread(col.interior[j]);
      spans.push_back({col.b - 2.0 * (j + 1) * m.dy, lo, hi});
    }
  }
  for (std::size_t i = 0; i + 1 < spans.size(); ++i) {
    const Span& top = spans[i];
    const Span& bot = spans[i + 1];
    if (bot.o + bot.hi * m.dx > top.o + top.lo * m.dx + 1e-12) {
      raise(ErrorCode::CFLViolation,
            "advance_column: fans at heights " + std::to_string(bot.o) + " and " +
                std::to_string(top.o) + " overlap within column " + std::to_string(k));
    }
  }

  const double b_next = p.b0 * ((k + 1) * m.dx);
  const double bottom_next = b_next - 2.0 * m.y_depth * m.dy;
  const auto record = [&](int n, double o, const Wave* w2, const Wave* w1) {
    DiamondRecord r;
    r.k = k;
    r.n = n;
    r.x = col.x;
    r.y = o;
    if (w2) r.waves.push_back(*w2);
    if (w1) r.waves.push_back(*w1);
    if (r.waves.empty()) return;
    for (const Wave& w : r.waves) {
      if (o + 0.5 * (w.speed_lo + w.speed_hi) * m.dx < bottom_next) ++sol.truncation_waves;
    }
    sol.diamonds.push_back(std::move(r));
  };
  record(0, col.b, col.bfan.z2 != 0.0 ? &col.bfan.wave2 : nullptr, nullptr);
  record(-1, col.b - m.dy, col.strip_fan.z2 != 0.0 ? &col.strip_fan.wave2 : nullptr,
         col.strip_fan.z1 != 0.0 ? &col.strip_fan.wave1 : nullptr);
  for (std::size_t j = 0; j < col.interior.size(); ++j) {
    record(-static_cast<int>(j) - 2, col.b - 2.0 * (j + 1) * m.dy,
           col.interior[j].z2 != 0.0 ? &col.interior[j].wave2 : nullptr,
           col.interior[j].z1 != 0.0 ? &col.interior[j].wave1 : nullptr);
  }

  Column next;
  next.k = k + 1;
  next.x = (k + 1) * m.dx;
  next.b = b_next;
  next.theta = sol.theta.at(k + 1);
  next.strip = slab_sample(col, m, p, m.dx, next.b - 0.5 * (1.0 - next.theta) * m.dy);
  next.cells.resize(m.y_depth);
  for (int i = 0; i < m.y_depth; ++i) {
    const double y = next.b - (2.0 * i + 1.0 - next.theta) * m.dy;
    next.cells[i] = slab_sample(col, m, p, m.dx, y);
  }
  sol.columns.push_back(std::move(next));
}

ApproxSolution run(const Mesh& mesh, const ThetaSequence& theta, const InitialData& init,
                   const GasParams& p) {
  mesh.validate();
  p.validate();
  ApproxSolution sol;
  sol.params = p;
  sol.mesh = mesh;
  sol.theta = theta;
  sol.columns.reserve(mesh.k_max + 1);
  sol.columns.push_back(init_column(mesh, theta, init, p));
  for (int k = 0; k < mesh.k_max; ++k) advance_column(sol, k);
  if (sol.truncation_waves > 0) {
    sol.warnings.push_back(std::to_string(sol.truncation_waves) +
                           " wave(s) crossed the bottom truncation boundary; deepen y_depth");
  }
  return sol;
}

FlowState evaluate(const ApproxSolution& sol, double x, double y) {
  const Mesh& m = sol.mesh;
  const GasParams& p = sol.params;
  if (sol.columns.empty()) throw std::logic_error("evaluate: empty solution");
  if (!(x >= 0.0 && x <= m.x_max() + 1e-12 * std::max(1.0, m.x_max()))) {
    raise(ErrorCode::OutOfDomain, "evaluate: x = " + std::to_string(x) + " outside [0, " +
                                      std::to_string(m.x_max()) + "]");
  }
  if (y > p.b0 * x + 1e-12) {
    raise(ErrorCode::OutOfDomain,
          "evaluate: point (" + std::to_string(x) + ", " + std::to_string(y) + ") above the wedge");
  }
  int k = static_cast<int>(std::floor(x / m.dx));
  k = std::clamp(k, 0, static_cast<int>(sol.columns.size()) - 1);
  const double dxx = x - k * m.dx;
  const Column& col = sol.columns[k];
  if (dxx <= 1e-14 * std::max(1.0, x) || !col.has_fans) {
    return column_state_at(col, m, y);
  }
  return slab_sample(col, m, p, dxx, y);
}

}  // namespace gw
