#include "akkt/membership.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace akkt {

namespace {

enum class CoordSign { Free, Nonpos, Zero };

// Sign structure of the polar cone K°, coordinatewise.
std::vector<CoordSign> polar_signs(const ConvexSet& k) {
  std::vector<CoordSign> signs(k.dim());
  std::size_t off = 0;
  auto fill = [&](const ConvexSet& b) {
    switch (b.kind()) {
      case SetKind::Zero:
        for (std::size_t i = 0; i < b.dim(); ++i) signs[off + i] = CoordSign::Free;
        break;
      case SetKind::NonnegCone:
        for (std::size_t i = 0; i < b.dim(); ++i) signs[off + i] = CoordSign::Nonpos;
        break;
      case SetKind::WholeSpace:
        for (std::size_t i = 0; i < b.dim(); ++i) signs[off + i] = CoordSign::Zero;
        break;
      default:
        throw std::invalid_argument("mset_membership: unsupported cone variant");
    }
    off += b.dim();
  };
  if (k.kind() == SetKind::Product) {
    for (const ConvexSet& b : k.blocks()) fill(b);
  } else {
    fill(k);
  }
  return signs;
}

void apply_signs(Vec& lam, const std::vector<CoordSign>& signs) {
  for (std::size_t i = 0; i < lam.size(); ++i) {
    switch (signs[i]) {
      case CoordSign::Free: break;
      case CoordSign::Nonpos: lam[i] = std::min(0.0, lam[i]); break;
      case CoordSign::Zero: lam[i] = 0.0; break;
    }
  }
}

// Projection onto { s : <c, s>_w <= r } in the weighted geometry.
void apply_halfspace(Vec& s, const Vec& c, double r, const WeightedSpace& space) {
  const double cc = space.inner(c, c);
  if (cc == 0.0) return;  // constraint reads 0 <= r, vacuous for r >= 0
  const double excess = space.inner(c, s) - r;
  if (excess <= 0.0) return;
  const double t = excess / cc;
  for (std::size_t i = 0; i < s.size(); ++i) s[i] -= t * c[i];
}

// Dykstra's alternating projections for the intersection of the sign set
// and the halfspace.
Vec dykstra_signs_halfspace(Vec s, const std::vector<CoordSign>& signs, const Vec& c,
                            double r, const WeightedSpace& space, int max_iter) {
  Vec p(s.size(), 0.0), q(s.size(), 0.0);
  const double scale = 1.0 + linalg::norm2(s);
  for (int it = 0; it < max_iter; ++it) {
    Vec y = s;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += p[i];
    Vec y_proj = y;
    apply_signs(y_proj, signs);
    for (std::size_t i = 0; i < y.size(); ++i) p[i] = y[i] - y_proj[i];

    Vec z = y_proj;
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += q[i];
    Vec z_proj = z;
    apply_halfspace(z_proj, c, r, space);
    for (std::size_t i = 0; i < z.size(); ++i) q[i] = z[i] - z_proj[i];

    double change = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) change += std::abs(z_proj[i] - s[i]);
    s = std::move(z_proj);
    if (change <= 1e-15 * scale) break;
  }
  // End on the sign projection so sign feasibility is exact; the halfspace
  // then holds to the Dykstra tolerance.
  apply_signs(s, signs);
  return s;
}

// Largest weighted singular value of G'(x), by power iteration on G'* G'.
double jacobian_norm_estimate(const Problem& problem, const Vec& x) {
  const std::size_t n = problem.dim_x();
  Vec u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = 1.0 + 0.1 * static_cast<double>(i % 7);
  double sigma_sq = 0.0;
  for (int it = 0; it < 40; ++it) {
    const double nu = problem.space_x.norm(u);
    if (nu == 0.0) break;
    for (double& v : u) v /= nu;
    const Vec ju = problem.jacobian_apply(x, u);
    const Vec w = problem.jacobian_adjoint(x, ju);
    sigma_sq = problem.space_x.inner(u, w);
    u = w;
  }
  return std::sqrt(std::max(sigma_sq, 0.0));
}

bool box_all_finite(const ConvexSet& k) {
  if (k.kind() != SetKind::Box) return false;
  for (std::size_t i = 0; i < k.dim(); ++i)
    if (std::isinf(k.lower()[i]) || std::isinf(k.upper()[i])) return false;
  return true;
}

}  // namespace

MembershipWitness mset_membership(const Problem& problem, const Vec& x, double r,
                                  const Vec& v, const MembershipOptions& opts) {
  if (!(r >= 0.0)) throw std::invalid_argument("mset_membership: r must be >= 0");
  if (v.size() != problem.dim_x() || x.size() != problem.dim_x())
    throw std::invalid_argument("mset_membership: dimension mismatch");
  if (set_distance(problem.set_c, x, problem.space_x) > 1e-8)
    throw std::invalid_argument("mset_membership: x must lie in C");

  const ConvexSet& k = problem.set_k;
  const Vec z = problem.constraint_value(x);
  const std::size_t m = problem.dim_y();

  const bool cone_case = k.is_cone();
  const bool box_case = !cone_case && box_all_finite(k);
  if (!cone_case && !box_case)
    throw std::invalid_argument("mset_membership: K must be a cone variant or a finite box");

  std::vector<CoordSign> signs;
  Vec halfspace_c;
  WeightedSpace lam_space = problem.space_y;
  if (cone_case) {
    signs = polar_signs(k);
    halfspace_c = linalg::scaled(z, -1.0);
  } else {
    // Two-sided splitting: s = (lambda_a, lambda_b), both nonpositive, with
    // the closing halfspace -<lambda_b, b-z> - <lambda_a, z-a> <= r.
    signs.assign(2 * m, CoordSign::Nonpos);
    halfspace_c.resize(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
      halfspace_c[i] = -(z[i] - k.lower()[i]);
      halfspace_c[m + i] = -(k.upper()[i] - z[i]);
    }
    Vec w2(2 * m);
    for (std::size_t i = 0; i < m; ++i) w2[i] = w2[m + i] = problem.space_y.weights[i];
    lam_space = WeightedSpace(std::move(w2));
  }

  const std::size_t svars = cone_case ? m : 2 * m;
  Vec s(svars, 0.0);
  Vec mu(problem.dim_x(), 0.0);

  auto lambda_of = [&](const Vec& sv) {
    if (cone_case) return sv;
    Vec lam(m);
    for (std::size_t i = 0; i < m; ++i) lam[i] = sv[i] - sv[m + i];
    return lam;
  };

  // Warm start from the unconstrained least-squares multiplier: project the
  // normal-cone part of v out, solve G'(x)* lambda ~ v - mu in the weighted
  // geometry through the conjugated pseudoinverse, then split and repair.
  if (problem.dense_jacobian) {
    mu = normal_cone_project(problem.set_c, x, v, problem.space_x);
    Vec target(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      target[i] = std::sqrt(problem.space_x.weights[i]) * (v[i] - mu[i]);
    const linalg::Matrix adjw = linalg::weighted_conjugate(
        problem.dense_jacobian(x), problem.space_x.weights, problem.space_y.weights)
                                    .transposed();
    const linalg::SvdResult dec = linalg::svd(adjw);
    const std::size_t rank = linalg::numerical_rank(dec, 1e-10);
    Vec coeff = dec.left.apply_transposed(target);
    Vec lam_w(m, 0.0);
    for (std::size_t j = 0; j < rank; ++j) {
      const double cj = coeff[j] / dec.singular_values[j];
      for (std::size_t i = 0; i < m; ++i) lam_w[i] += cj * dec.right(i, j);
    }
    Vec lam0(m);
    for (std::size_t i = 0; i < m; ++i)
      lam0[i] = lam_w[i] / std::sqrt(problem.space_y.weights[i]);
    if (cone_case) {
      s = std::move(lam0);
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        s[i] = std::min(lam0[i], 0.0);
        s[m + i] = -std::max(lam0[i], 0.0);
      }
    }
    s = dykstra_signs_halfspace(std::move(s), signs, halfspace_c, r, lam_space,
                                opts.dykstra_max);
  }

  const double sigma = jacobian_norm_estimate(problem, x);
  const double lip = cone_case ? (sigma + 1.0) * (sigma + 1.0)
                               : (std::sqrt(2.0) * sigma + 1.0) * (std::sqrt(2.0) * sigma + 1.0);
  const double step = 1.0 / std::max(lip, 1e-12);

  MembershipWitness out;
  double phi_prev = std::numeric_limits<double>::infinity();
  int stagnant = 0;

  // Momentum-accelerated projected gradient with a monotone restart: the
  // extrapolated point drives the step, the projected iterate is kept, and
  // the momentum resets whenever the value fails to decrease (the plain
  // projected-gradient step is always retried before giving up).
  Vec s_prev = s, mu_prev = mu;
  double t_momentum = 1.0;

  auto phi_of = [&](const Vec& sv, const Vec& muv, Vec& resid_out) {
    const Vec lam = lambda_of(sv);
    resid_out = problem.jacobian_adjoint(x, lam);
    for (std::size_t i = 0; i < resid_out.size(); ++i) resid_out[i] += muv[i] - v[i];
    return 0.5 * problem.space_x.inner(resid_out, resid_out);
  };

  for (int it = 0; it < opts.max_iter; ++it) {
    Vec resid;
    const double phi = phi_of(s, mu, resid);
    out.residual = std::sqrt(2.0 * phi);
    out.iterations = it;

    if (out.residual <= 0.5 * opts.tol) {
      out.converged = true;
      break;
    }
    // relative stagnation: flat at the limit value
    if (std::abs(phi_prev - phi) <= 1e-12 * phi) {
      if (++stagnant >= 50) {
        out.converged = true;
        break;
      }
    } else {
      stagnant = 0;
    }

    auto take_step = [&](const Vec& s_base, const Vec& mu_base, Vec& s_out, Vec& mu_out) {
      Vec resid_base;
      phi_of(s_base, mu_base, resid_base);
      const Vec grad_lam_y = problem.jacobian_apply(x, resid_base);
      s_out = s_base;
      if (cone_case) {
        linalg::axpy(-step, grad_lam_y, s_out);
      } else {
        for (std::size_t i = 0; i < m; ++i) {
          s_out[i] -= step * grad_lam_y[i];
          s_out[m + i] += step * grad_lam_y[i];
        }
      }
      s_out = dykstra_signs_halfspace(std::move(s_out), signs, halfspace_c, r, lam_space,
                                      opts.dykstra_max);
      mu_out = mu_base;
      linalg::axpy(-step, resid_base, mu_out);
      mu_out = normal_cone_project(problem.set_c, x, mu_out, problem.space_x);
    };

    // extrapolate, step, and keep the result only if it made progress
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
    const double beta = (t_momentum - 1.0) / t_next;
    t_momentum = t_next;
    Vec s_extra = s, mu_extra = mu;
    for (std::size_t i = 0; i < s.size(); ++i) s_extra[i] += beta * (s[i] - s_prev[i]);
    for (std::size_t i = 0; i < mu.size(); ++i) mu_extra[i] += beta * (mu[i] - mu_prev[i]);

    Vec s_next, mu_next, resid_next;
    take_step(s_extra, mu_extra, s_next, mu_next);
    if (phi_of(s_next, mu_next, resid_next) > phi) {
      // restart momentum and take the plain projected-gradient step
      t_momentum = 1.0;
      take_step(s, mu, s_next, mu_next);
    }

    s_prev = std::move(s);
    mu_prev = std::move(mu);
    s = std::move(s_next);
    mu = std::move(mu_next);
    phi_prev = phi;
  }

  out.lambda = lambda_of(s);
  out.mu = mu;
  {
    Vec resid = problem.jacobian_adjoint(x, out.lambda);
    for (std::size_t i = 0; i < resid.size(); ++i) resid[i] += mu[i] - v[i];
    out.residual = problem.space_x.norm(resid);
  }
  out.member = out.converged && out.residual <= opts.tol;
  return out;
}

}  // namespace akkt
