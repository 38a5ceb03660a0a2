#pragma once

#include <functional>

#include "akkt/convex_set.hpp"

namespace akkt {

/// Projected-gradient minimization of a smooth function over a closed
/// convex set given through its projection map.  Steps use an Armijo
/// backtracking line search accepting x+ = P(x - a g) once
///   value(x+) <= value(x) - (sigma / a) ||x+ - x||^2,
/// with a Barzilai-Borwein trial step between iterations.
struct PgOptions {
  double tol = 1e-8;
  int max_iter = 2000;
  double armijo_sigma = 1e-4;
  double armijo_beta = 0.5;
  double step0 = 1.0;
  double bb_min = 1e-10;
  double bb_max = 1e10;
};

struct PgResult {
  Vec x;
  double residual = 0.0;  // stationarity measure at the final iterate
  int iterations = 0;
  bool converged = false;
};

/// `stationarity(x, grad)` is the termination measure (for catalog sets the
/// weighted normal-cone distance); `project` must be the exact weighted
/// projection onto the feasible set.
PgResult pg_minimize(const std::function<double(const Vec&)>& value,
                     const std::function<Vec(const Vec&)>& gradient,
                     const std::function<Vec(const Vec&)>& project,
                     const std::function<double(const Vec&, const Vec&)>& stationarity,
                     const WeightedSpace& space, Vec x0, const PgOptions& opts);

}  // namespace akkt
