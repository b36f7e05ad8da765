#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gw/params.hpp"
#include "gw/riemann.hpp"
#include "gw/state.hpp"

namespace gw {

// Slab mesh under the wedge y = b0*x. Column k holds the sampled states at
// x_k = k*dx; its fans resolve the slab [x_k, x_{k+1}]. Vertically the column
// is a half-width strip [b_k - dy, b_k) against the wedge, one cell of width
// dy below it, then y_depth-1 cells of width 2*dy; everything deeper keeps
// the bottom cell's state.
struct Mesh {
  double dx = 0.01;
  double dy = 0.02;
  int k_max = 100;    // number of slabs advanced; columns 0..k_max
  int y_depth = 80;   // cells below the strip
  double cfl_safety = 1.2;

  double x_max() const { return k_max * dx; }
  void validate() const;
};

// Per-column sampling offsets theta_k in (-1,1). Seed 0 selects the
// deterministic van der Corput sequence (theta_0 = 0); any other seed gives
// an i.i.d.-style uniform stream hashed with splitmix64.
class ThetaSequence {
 public:
  explicit ThetaSequence(std::uint64_t seed = 0) : seed_(seed) {}
  double at(int k) const;
  std::string generator_name() const { return seed_ == 0 ? "van-der-corput" : "splitmix64"; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

struct Column {
  int k = 0;
  double x = 0.0;
  double b = 0.0;       // wedge height b0*x
  double theta = 0.0;   // offset used to sample this column
  FlowState strip;
  std::vector<FlowState> cells;  // cells[0] just below the strip

  bool has_fans = false;  // set once the slab [x_k, x_{k+1}] is resolved
  BoundaryFan bfan;          // at (x, b)
  RiemannFan strip_fan;      // at (x, b - dy)
  std::vector<RiemannFan> interior;  // interior[j] at (x, b - 2*(j+1)*dy)
  double sup_lambda = 0.0;   // fastest signal among this column's real waves
};

// One resolved fan holding at least one nonzero wave. n = 0 is the boundary
// fan, n = -1 the strip-bottom fan, n = -(j+2) interior fan j. Waves are
// stored family 2 first, then family 1 (fan order bottom to top).
struct DiamondRecord {
  int k = 0;
  int n = 0;
  double x = 0.0;
  double y = 0.0;  // fan origin height
  std::vector<Wave> waves;
};

struct ApproxSolution {
  GasParams params;
  Mesh mesh;
  ThetaSequence theta{0};
  std::vector<Column> columns;
  std::vector<DiamondRecord> diamonds;  // nontrivial fans only, ascending k
  int truncation_waves = 0;  // waves whose midpoints left the meshed depth
  std::vector<std::string> warnings;

  // records belonging to column k's slab
  std::vector<const DiamondRecord*> column_records(int k) const;
};

using InitialData = std::function<FlowState(double y)>;

Column init_column(const Mesh& mesh, const ThetaSequence& theta, const InitialData& init,
                   const GasParams& p);

// Resolves column k's fans and appends the sampled column k+1.
void advance_column(ApproxSolution& sol, int k);

ApproxSolution run(const Mesh& mesh, const ThetaSequence& theta, const InitialData& init,
                   const GasParams& p);

// Pointwise value of the approximate solution; right-limit on column lines.
FlowState evaluate(const ApproxSolution& sol, double x, double y);

}  // namespace gw
