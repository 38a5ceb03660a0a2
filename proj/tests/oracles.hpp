// Independent brute-force oracles used to freeze expected values.  These
// deliberately avoid the library's solution paths: kernels come from Gauss
// elimination instead of the SVD, minima from dense sampling and random
// multi-restart search instead of projected gradients.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "akkt/convex_set.hpp"
#include "akkt/linalg.hpp"
#include "akkt/piecewise.hpp"
#include "akkt/problem.hpp"

namespace oracles {

using akkt::ConvexSet;
using akkt::SetKind;
using akkt::Vec;
using akkt::WeightedSpace;
using akkt::linalg::Matrix;

// ---- kernel / orthonormal complement via Gauss elimination ---------------

// Row space basis of A through Gram-Schmidt on the rows (no SVD involved).
inline std::vector<Vec> row_space_basis(const Matrix& a, double tol = 1e-9) {
  std::vector<Vec> basis;
  for (std::size_t i = 0; i < a.rows; ++i) {
    Vec r(a.cols);
    for (std::size_t j = 0; j < a.cols; ++j) r[j] = a(i, j);
    for (const Vec& b : basis) {
      const double proj = akkt::linalg::dot(r, b);
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= proj * b[j];
    }
    const double nrm = akkt::linalg::norm2(r);
    if (nrm > tol) {
      for (double& v : r) v /= nrm;
      basis.push_back(std::move(r));
    }
  }
  return basis;
}

// Dense sampling of the unit sphere of span(basis) (dim <= 3), followed by
// local pattern-search refinement of ||A x||.
inline double brute_reduced_min_modulus(const Matrix& a, int grid = 720) {
  const std::vector<Vec> basis = row_space_basis(a);
  const std::size_t r = basis.size();
  if (r == 0) return std::numeric_limits<double>::infinity();

  auto eval = [&](const std::vector<double>& coeff) {
    Vec x(a.cols, 0.0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < a.cols; ++j) x[j] += coeff[i] * basis[i][j];
    return akkt::linalg::norm2(a.apply(x));
  };

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_c(r, 0.0);
  if (r == 1) {
    best = eval({1.0});
    best_c = {1.0};
  } else if (r == 2) {
    for (int i = 0; i < grid; ++i) {
      const double th = 2.0 * M_PI * i / grid;
      const double val = eval({std::cos(th), std::sin(th)});
      if (val < best) {
        best = val;
        best_c = {std::cos(th), std::sin(th)};
      }
    }
  } else {
    for (int i = 0; i <= grid / 4; ++i) {
      const double ph = M_PI * i / (grid / 4);
      for (int j = 0; j < grid / 2; ++j) {
        const double th = 2.0 * M_PI * j / (grid / 2);
        const std::vector<double> c{std::sin(ph) * std::cos(th), std::sin(ph) * std::sin(th),
                                    std::cos(ph)};
        const double val = eval(c);
        if (val < best) {
          best = val;
          best_c = c;
        }
      }
    }
  }

  // pattern-search refinement on the sphere
  double step = 2.0 * M_PI / grid;
  for (int round = 0; round < 60; ++round) {
    bool improved = false;
    for (std::size_t i = 0; i < r; ++i) {
      for (double dir : {-1.0, 1.0}) {
        std::vector<double> c = best_c;
        c[i] += dir * step;
        double nrm = 0.0;
        for (double v : c) nrm += v * v;
        nrm = std::sqrt(nrm);
        for (double& v : c) v /= nrm;
        const double val = eval(c);
        if (val < best) {
          best = val;
          best_c = c;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
    if (step < 1e-12) break;
  }
  return best;
}

// ---- 1-D normal cone enumeration ------------------------------------------

// min over mu in N of |g + mu| for a 1-D normal cone given as a sign
// interval; N = [lo, hi] with possibly infinite ends, sampled densely.
inline double brute_normal_dist_1d(double g, double lo, double hi, double span = 1e3,
                                   int grid = 200001) {
  double a = std::isinf(lo) ? -span : lo;
  double b = std::isinf(hi) ? span : hi;
  const double floor_a = a, ceil_b = b;
  double best = std::numeric_limits<double>::infinity();
  double best_mu = a;
  for (int refine = 0; refine < 5; ++refine) {
    for (int i = 0; i < grid; ++i) {
      const double mu = a + (b - a) * i / (grid - 1);
      const double val = std::abs(g + mu);
      if (val < best) {
        best = val;
        best_mu = mu;
      }
    }
    const double width = (b - a) / (grid - 1);
    a = std::max(floor_a, best_mu - 2.0 * width);
    b = std::min(ceil_b, best_mu + 2.0 * width);
  }
  return best;
}

// ---- membership by multi-restart random search ----------------------------

// phi(lambda, mu) = 1/2 || J* lambda + mu - v ||^2 minimized over the
// feasible multipliers by feasibility-repaired random search.  Supports the
// cone variants Zero / NonnegCone and finite boxes for K, and
// WholeSpace / Box / Ball for C.
inline double brute_membership_residual(const akkt::Problem& problem, const Vec& x, double r,
                                        const Vec& v, std::mt19937_64& rng, int restarts = 40,
                                        int steps = 1500) {
  const std::size_t n = problem.dim_x();
  const std::size_t m = problem.dim_y();
  const Vec z = problem.constraint_value(x);
  const ConvexSet& k = problem.set_k;
  const ConvexSet& c = problem.set_c;
  const WeightedSpace& sy = problem.space_y;
  const WeightedSpace& sx = problem.space_x;

  // Feasibility repair: the support gap is positively homogeneous in
  // lambda, so scaling toward zero always restores feasibility; alternating
  // sign clips and halfspace shifts first keeps the repaired point near the
  // proposal.
  auto clip_signs = [&](Vec lam) {
    if (k.kind() == SetKind::NonnegCone) {
      for (double& t : lam) t = std::min(0.0, t);
    } else if (k.kind() == SetKind::Box) {
      for (std::size_t i = 0; i < m; ++i) {
        const bool at_lower = z[i] <= k.lower()[i] + 1e-12;
        const bool at_upper = z[i] >= k.upper()[i] - 1e-12;
        if (at_lower && at_upper) continue;
        if (at_lower) lam[i] = std::min(0.0, lam[i]);
        else if (at_upper) lam[i] = std::max(0.0, lam[i]);
        else lam[i] = 0.0;
      }
    }
    return lam;
  };
  auto repair_lambda = [&](Vec lam) {
    if (k.kind() == SetKind::Zero || k.kind() == SetKind::NonnegCone) {
      for (int round = 0; round < 200; ++round) {
        if (k.kind() == SetKind::NonnegCone)
          for (double& t : lam) t = std::min(0.0, t);
        const double gap = -sy.inner(lam, z) - r;
        if (gap <= 1e-13) break;
        Vec normal(m);
        for (std::size_t i = 0; i < m; ++i) normal[i] = -z[i];
        const double nn = sy.inner(normal, normal);
        if (nn == 0.0) break;
        for (std::size_t i = 0; i < m; ++i) lam[i] -= (gap / nn) * normal[i];
      }
      if (k.kind() == SetKind::NonnegCone)
        for (double& t : lam) t = std::min(0.0, t);
      const double s = akkt::support_gap(k, lam, z, sy);
      if (s > r + 1e-13) {
        if (s > 0.0 && r > 0.0) return Vec(akkt::linalg::scaled(lam, r / s));
        return clip_signs(std::move(lam));
      }
      return lam;
    }
    // finite box: choose between sign-structure clipping (gap 0) and
    // homogeneous scaling (gap exactly r), whichever stays closer
    const double s = akkt::support_gap(k, lam, z, sy);
    if (s <= r + 1e-13) return lam;
    Vec clipped = clip_signs(lam);
    if (!(s > 0.0) || r <= 0.0) return clipped;
    Vec scaled = akkt::linalg::scaled(lam, r / s);
    return sy.dist(scaled, lam) < sy.dist(clipped, lam) ? scaled : clipped;
  };

  auto repair_mu = [&](Vec mu) {
    // independent coordinatewise reimplementation of the normal cones
    if (c.kind() == SetKind::WholeSpace) return Vec(n, 0.0);
    if (c.kind() == SetKind::Box) {
      for (std::size_t i = 0; i < n; ++i) {
        const bool at_lower = x[i] <= c.lower()[i] + 1e-8;
        const bool at_upper = x[i] >= c.upper()[i] - 1e-8;
        if (at_lower && at_upper) continue;
        if (at_lower) mu[i] = std::min(0.0, mu[i]);
        else if (at_upper) mu[i] = std::max(0.0, mu[i]);
        else mu[i] = 0.0;
      }
      return mu;
    }
    if (c.kind() == SetKind::Ball) {
      Vec dir = x;
      for (std::size_t i = 0; i < n; ++i) dir[i] -= c.center()[i];
      const double rad = sx.norm(dir);
      if (rad < c.radius() - 1e-8) return Vec(n, 0.0);
      const double alpha = std::max(0.0, sx.inner(mu, dir) / sx.inner(dir, dir));
      for (std::size_t i = 0; i < n; ++i) mu[i] = alpha * dir[i];
      return mu;
    }
    return mu;  // Zero: free
  };

  auto phi_residual = [&](const Vec& lam, const Vec& mu) {
    Vec resid = problem.jacobian_adjoint(x, lam);
    for (std::size_t i = 0; i < n; ++i) resid[i] += mu[i] - v[i];
    return sx.norm(resid);
  };

  std::normal_distribution<double> gauss(0.0, 1.0);
  double best = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < restarts; ++restart) {
    Vec lam(m, 0.0), mu(n, 0.0);
    if (restart > 0) {
      for (double& t : lam) t = 2.0 * gauss(rng);
      for (double& t : mu) t = 2.0 * gauss(rng);
    }
    lam = repair_lambda(std::move(lam));
    mu = repair_mu(std::move(mu));
    double current = phi_residual(lam, mu);
    double radius = 1.0;
    for (int it = 0; it < steps; ++it) {
      Vec lam_try = lam, mu_try = mu;
      for (double& t : lam_try) t += radius * gauss(rng);
      for (double& t : mu_try) t += radius * gauss(rng);
      lam_try = repair_lambda(std::move(lam_try));
      mu_try = repair_mu(std::move(mu_try));
      const double val = phi_residual(lam_try, mu_try);
      if (val < current) {
        current = val;
        lam = std::move(lam_try);
        mu = std::move(mu_try);
      } else {
        radius *= 0.995;
        if (radius < 1e-10) radius = 1e-10;
      }
    }
    best = std::min(best, current);
  }
  return best;
}

// ---- reference numeric integration ----------------------------------------

// Graded midpoint rule on (a, b); the grading resolves integrable endpoint
// singularities at 0.
inline double numeric_integral(const std::function<double(double)>& f, double a, double b,
                               int n = 200000) {
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double lo = a + (b - a) * std::pow(double(i) / n, 4.0);
    const double hi = a + (b - a) * std::pow(double(i + 1) / n, 4.0);
    total += f(0.5 * (lo + hi)) * (hi - lo);
  }
  return total;
}

}  // namespace oracles
