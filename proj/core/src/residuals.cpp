#include "akkt/residuals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace akkt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Vec lagrangian_grad_x(const Problem& problem, const Vec& x, const Vec& lambda) {
  Vec g = problem.objective_grad(x);
  const Vec adj = problem.jacobian_adjoint(x, lambda);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += adj[i];
  return g;
}

AkktRecord akkt_residuals(const Problem& problem, const Vec& x, const Vec& lambda,
                          double feas_tol) {
  AkktRecord rec;
  rec.x = x;
  rec.lambda = lambda;
  const Vec gx = problem.constraint_value(x);
  rec.eps_residual =
      normal_cone_dist(problem.set_c, x, lagrangian_grad_x(problem, x, lambda),
                       problem.space_x, feas_tol);
  rec.signed_gap = support_gap(problem.set_k, lambda, gx, problem.space_y);
  rec.r_residual = std::max(0.0, rec.signed_gap);
  rec.feasibility = set_distance(problem.set_k, gx, problem.space_y);
  rec.multiplier_norm = problem.space_y.norm(lambda);
  return rec;
}

bool is_kkt(const Problem& problem, const Vec& x, const Vec& lambda, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("is_kkt: tol must be positive");
  const AkktRecord rec = akkt_residuals(problem, x, lambda, tol);
  return rec.eps_residual <= tol && rec.r_residual <= tol && rec.feasibility <= tol;
}

std::pair<Vec, Vec> box_split(const Vec& lambda) {
  Vec a(lambda.size()), b(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    a[i] = std::min(lambda[i], 0.0);
    b[i] = -std::max(lambda[i], 0.0);
  }
  return {a, b};
}

SplitBoundReport split_bound_check(const Vec& u, const Vec& u_a, const Vec& u_b,
                                   const Vec& lam_a, const Vec& lam_b, double r,
                                   const WeightedSpace& space, double slack) {
  const std::size_t n = u.size();
  if (u_a.size() != n || u_b.size() != n || lam_a.size() != n || lam_b.size() != n)
    throw std::invalid_argument("split_bound_check: dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (u_a[i] > u_b[i]) throw std::invalid_argument("split_bound_check: requires u_a <= u_b");
    if (lam_a[i] > 0.0 || lam_b[i] > 0.0)
      throw std::invalid_argument("split_bound_check: requires lam_a, lam_b <= 0");
  }

  auto bound_lhs = [&](const Vec& la, const Vec& lb) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      v += space.weights[i] * (-lb[i] * (u_b[i] - u[i]) - la[i] * (u[i] - u_a[i]));
    return v;
  };

  SplitBoundReport report;
  report.r = r;
  report.input_lhs = bound_lhs(lam_a, lam_b);
  if (report.input_lhs > r + slack)
    throw std::invalid_argument("split_bound_check: input pair violates the bound");

  Vec lambda(n);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = lam_a[i] - lam_b[i];
  auto [min_a, min_b] = box_split(lambda);
  report.minimal_lhs = bound_lhs(min_a, min_b);
  report.preserved = report.minimal_lhs <= r + slack;
  return report;
}

double growth_exponent_fit(const std::vector<double>& values) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) continue;
    const double lx = std::log(static_cast<double>(i + 1));
    const double ly = std::log(values[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return 0.0;
  const double denom = m * sxx - sx * sx;
  if (denom <= 0.0) return 0.0;
  return (m * sxy - sx * sy) / denom;
}

MultiplierDiagnostic bounded_multiplier_diagnostic(const std::vector<AkktRecord>& records,
                                                   const Problem* problem) {
  if (records.size() < 3)
    throw std::invalid_argument("bounded_multiplier_diagnostic: need at least 3 records");
  MultiplierDiagnostic diag;
  std::vector<double> norms;
  norms.reserve(records.size());
  for (const AkktRecord& rec : records) {
    diag.sup_norm = std::max(diag.sup_norm, rec.multiplier_norm);
    norms.push_back(rec.multiplier_norm);
  }
  diag.growth_exponent = growth_exponent_fit(norms);
  diag.bounded_trend = diag.growth_exponent <= 0.1;

  if (problem != nullptr && problem->dense_jacobian &&
      problem->set_k.kind() == SetKind::Zero &&
      problem->set_c.kind() == SetKind::WholeSpace) {
    const Vec& xbar = records.back().x;
    const linalg::Matrix jw = linalg::weighted_conjugate(
        problem->dense_jacobian(xbar), problem->space_x.weights, problem->space_y.weights);
    const double gamma = linalg::reduced_min_modulus(jw);
    double worst = 0.0;
    for (const AkktRecord& rec : records) {
      const Vec v = problem->jacobian_adjoint(rec.x, rec.lambda);
      const double denom = problem->space_x.norm(v) *
                               (1.0 + problem->space_x.dist(xbar, rec.x)) +
                           rec.r_residual;
      if (denom > 0.0 && std::isfinite(gamma))
        worst = std::max(worst, rec.multiplier_norm * gamma / denom);
    }
    diag.bound_ratio_max = worst;
  }
  return diag;
}

}  // namespace akkt
