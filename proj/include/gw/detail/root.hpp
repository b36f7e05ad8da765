#pragma once

#include <cmath>
#include <utility>

#include "gw/errors.hpp"

namespace gw::detail {

// Safeguarded secant/bisection root solve on a bracketing interval.
// Stops when |f| <= ftol; raises NoConvergence if the bracket collapses to
// xtol-width (relative) without meeting ftol.
template <class F>
double bracket_root(F&& f, double a, double b, double fa, double fb, double xtol, double ftol,
                    int max_iter = 200) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    raise(ErrorCode::NoConvergence, "bracket_root: endpoints do not bracket a sign change");
  }
  double best_x = std::abs(fa) < std::abs(fb) ? a : b;
  double best_f = std::abs(fa) < std::abs(fb) ? fa : fb;
  for (int it = 0; it < max_iter; ++it) {
    double x;
    if (fb != fa) {
      x = b - fb * (b - a) / (fb - fa);
      const double lo = std::min(a, b), hi = std::max(a, b);
      if (!(x > lo && x < hi)) x = 0.5 * (a + b);
    } else {
      x = 0.5 * (a + b);
    }
    // alternate with bisection so a one-sided secant cannot stagnate
    if (it % 2 == 1) x = 0.5 * (a + b);
    const double fx = f(x);
    if (std::abs(fx) < std::abs(best_f)) {
      best_x = x;
      best_f = fx;
    }
    if (std::abs(fx) <= ftol) return x;
    if ((fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    if (std::abs(b - a) <= xtol * (std::abs(b) + 1.0)) {
      if (std::abs(best_f) <= ftol) return best_x;
      raise(ErrorCode::NoConvergence, "bracket_root: bracket collapsed with residual above ftol");
    }
  }
  raise(ErrorCode::NoConvergence, "bracket_root: iteration limit reached");
}

}  // namespace gw::detail
