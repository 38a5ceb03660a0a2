#include "akkt/penalty_path.hpp"

#include <cmath>
#include <stdexcept>

#include "akkt/projected_gradient.hpp"

namespace akkt {

namespace {

// Dykstra projection onto C intersected with the localization ball.
Vec project_intersection(const ConvexSet& set_c, const ConvexSet& ball, const Vec& x,
                         const WeightedSpace& space) {
  Vec s = x;
  Vec p(x.size(), 0.0), q(x.size(), 0.0);
  const double scale = 1.0 + linalg::norm2(x);
  for (int it = 0; it < 2000; ++it) {
    Vec y = linalg::add(s, p);
    Vec y_proj = project(set_c, y, space);
    p = linalg::sub(y, y_proj);
    Vec z = linalg::add(y_proj, q);
    Vec z_proj = project(ball, z, space);
    q = linalg::sub(z, z_proj);
    double change = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) change += std::abs(z_proj[i] - s[i]);
    s = std::move(z_proj);
    if (change <= 1e-15 * scale) break;
  }
  return project(set_c, s, space);  // end exactly feasible for C
}

}  // namespace

PenaltyPathResult quadratic_penalty_path(const Problem& problem, const Vec& xbar,
                                         const PenaltyPathOptions& opts) {
  if (set_distance(problem.set_c, xbar, problem.space_x) > 1e-8 ||
      set_distance(problem.set_k, problem.constraint_value(xbar), problem.space_y) > 1e-6)
    throw std::invalid_argument("quadratic_penalty_path: xbar must be feasible");

  const ConvexSet ball = ConvexSet::ball(xbar, opts.radius);
  PenaltyPathResult out;
  Vec x = xbar;

  for (int k = 1; k <= opts.k_max; ++k) {
    const double kd = static_cast<double>(k);
    auto penalized_value = [&](const Vec& p) {
      const Vec g = problem.constraint_value(p);
      const double dk = set_distance(problem.set_k, g, problem.space_y);
      const double dx = problem.space_x.dist(p, xbar);
      return problem.objective_value(p) + dx * dx + kd * dk * dk;
    };
    auto penalized_grad = [&](const Vec& p) {
      const Vec g = problem.constraint_value(p);
      const Vec pk = project(problem.set_k, g, problem.space_y);
      Vec outward = linalg::sub(g, pk);
      Vec grad = problem.objective_grad(p);
      const Vec pull = problem.jacobian_adjoint(p, outward);
      for (std::size_t i = 0; i < grad.size(); ++i)
        grad[i] += 2.0 * (p[i] - xbar[i]) + 2.0 * kd * pull[i];
      return grad;
    };
    auto projector = [&](const Vec& p) {
      return project_intersection(problem.set_c, ball, p, problem.space_x);
    };
    auto stationarity = [&](const Vec& p, const Vec& grad) {
      // With the ball inactive this is the exact normal-cone measure on C;
      // if the iterate presses against the localization ball fall back to
      // the projected fixed-point residual.
      if (problem.space_x.dist(p, xbar) < 0.9 * opts.radius)
        return normal_cone_dist(problem.set_c, p, grad, problem.space_x);
      Vec cand = p;
      linalg::axpy(-1.0, grad, cand);
      return problem.space_x.dist(p, projector(cand));
    };

    PgOptions pg;
    pg.tol = opts.inner_tol(k);
    pg.max_iter = opts.max_inner;
    PgResult sol = pg_minimize(penalized_value, penalized_grad, projector, stationarity,
                               problem.space_x, x, pg);
    if (!sol.converged) out.truncated = true;
    x = sol.x;

    const Vec g = problem.constraint_value(x);
    const Vec pk = project(problem.set_k, g, problem.space_y);
    Vec lambda = linalg::sub(g, pk);
    for (double& v : lambda) v *= 2.0 * kd;  // zero automatically when G(x) in K

    out.records.push_back(akkt_residuals(problem, x, lambda));
    out.inner_iterations.push_back(sol.iterations);
    if (!sol.converged) break;  // truncated sequence, flagged above
  }
  return out;
}

}  // namespace akkt
