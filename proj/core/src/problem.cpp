#include "akkt/problem.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace akkt {

double FdCheckReport::max_error() const {
  return std::max(gradient_error, std::max(jacobian_error, adjoint_error));
}

FdCheckReport fd_check(const Problem& problem, const Vec& x, double h, std::uint64_t seed) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_check: h must be positive");
  const std::size_t n = problem.dim_x();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Vec> directions;
  if (n <= 24) {
    for (std::size_t i = 0; i < n; ++i) {
      Vec e(n, 0.0);
      e[i] = 1.0;
      directions.push_back(std::move(e));
    }
  }
  for (int r = 0; r < 8; ++r) {
    Vec d(n);
    for (double& v : d) v = gauss(rng);
    const double nrm = linalg::norm2(d);
    if (nrm > 0) for (double& v : d) v /= nrm;
    directions.push_back(std::move(d));
  }

  FdCheckReport report;
  const Vec grad = problem.objective_grad(x);
  for (const Vec& d : directions) {
    Vec xp = x, xm = x;
    linalg::axpy(h, d, xp);
    linalg::axpy(-h, d, xm);

    const double fd = (problem.objective_value(xp) - problem.objective_value(xm)) / (2.0 * h);
    const double exact = problem.space_x.inner(grad, d);
    report.gradient_error =
        std::max(report.gradient_error, std::abs(fd - exact) / (1.0 + std::abs(exact)));

    const Vec gp = problem.constraint_value(xp);
    const Vec gm = problem.constraint_value(xm);
    Vec jfd(problem.dim_y());
    for (std::size_t i = 0; i < jfd.size(); ++i) jfd[i] = (gp[i] - gm[i]) / (2.0 * h);
    const Vec jd = problem.jacobian_apply(x, d);
    report.jacobian_error = std::max(
        report.jacobian_error,
        problem.space_y.dist(jfd, jd) / (1.0 + problem.space_y.norm(jd)));
  }

  for (int r = 0; r < 8; ++r) {
    Vec d(n), lam(problem.dim_y());
    for (double& v : d) v = gauss(rng);
    for (double& v : lam) v = gauss(rng);
    const double lhs = problem.space_y.inner(problem.jacobian_apply(x, d), lam);
    const double rhs = problem.space_x.inner(d, problem.jacobian_adjoint(x, lam));
    report.adjoint_error =
        std::max(report.adjoint_error, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  return report;
}

ConeMembershipReport lin_cone_membership(const Problem& problem, const Vec& xbar,
                                         const Vec& d, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("lin_cone_membership: tol must be positive");
  const double feas_c = set_distance(problem.set_c, xbar, problem.space_x);
  const Vec gx = problem.constraint_value(xbar);
  const double feas_k = set_distance(problem.set_k, gx, problem.space_y);
  if (feas_c > tol || feas_k > tol)
    throw std::invalid_argument("lin_cone_membership: xbar is not feasible to tolerance");

  const double viol_c = tangent_cone_dist(problem.set_c, xbar, d, problem.space_x, tol);
  const Vec jd = problem.jacobian_apply(xbar, d);
  const double viol_k = tangent_cone_dist(problem.set_k, gx, jd, problem.space_y, tol);

  ConeMembershipReport report;
  report.violation = viol_c + viol_k;
  report.member = report.violation <= tol;
  report.witness = tangent_project(problem.set_c, xbar, d, problem.space_x, tol);
  return report;
}

}  // namespace akkt
