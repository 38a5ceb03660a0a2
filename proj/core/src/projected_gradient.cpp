#include "akkt/projected_gradient.hpp"

#include <cmath>

namespace akkt {

PgResult pg_minimize(const std::function<double(const Vec&)>& value,
                     const std::function<Vec(const Vec&)>& gradient,
                     const std::function<Vec(const Vec&)>& project,
                     const std::function<double(const Vec&, const Vec&)>& stationarity,
                     const WeightedSpace& space, Vec x0, const PgOptions& opts) {
  PgResult res;
  res.x = project(x0);
  Vec grad = gradient(res.x);
  res.residual = stationarity(res.x, grad);
  if (res.residual <= opts.tol) {
    res.converged = true;
    return res;  // already stationary, zero iterations
  }

  double fx = value(res.x);
  double step = opts.step0;
  Vec x_prev, grad_prev;

  for (int it = 0; it < opts.max_iter; ++it) {
    // Barzilai-Borwein trial step from the previous pair, safeguarded.
    if (it > 0) {
      const Vec s = linalg::sub(res.x, x_prev);
      const Vec y = linalg::sub(grad, grad_prev);
      const double sy = space.inner(s, y);
      if (sy > 0.0) {
        const double ss = space.inner(s, s);
        step = std::min(opts.bb_max, std::max(opts.bb_min, ss / sy));
      }
    }

    x_prev = res.x;
    grad_prev = grad;

    double alpha = step;
    Vec trial;
    double f_trial = 0.0;
    bool accepted = false;
    // Required decreases shrink below the accuracy of the value evaluation
    // near tight tolerances; the acceptance test carries a rounding
    // allowance so representable progress is not rejected as noise.
    const double f_slack = 1e-13 * (1.0 + std::abs(fx));
    for (int bt = 0; bt < 60; ++bt) {
      Vec cand = res.x;
      linalg::axpy(-alpha, grad, cand);
      trial = project(cand);
      f_trial = value(trial);
      const double move = space.dist(trial, res.x);
      if (move == 0.0) break;  // projected step made no progress at this scale
      if (f_trial <= fx - (opts.armijo_sigma / alpha) * move * move + f_slack) {
        accepted = true;
        break;
      }
      alpha *= opts.armijo_beta;
    }
    if (!accepted) {
      // No acceptable step: report the current stationarity honestly.
      res.iterations = it;
      res.residual = stationarity(res.x, grad);
      res.converged = res.residual <= opts.tol;
      return res;
    }

    res.x = trial;
    fx = f_trial;
    grad = gradient(res.x);
    res.iterations = it + 1;
    res.residual = stationarity(res.x, grad);
    if (res.residual <= opts.tol) {
      res.converged = true;
      return res;
    }
  }
  res.converged = res.residual <= opts.tol;
  return res;
}

}  // namespace akkt
