#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "akkt/problem.hpp"

namespace akkt {

/// One primal-dual iterate with its inexact-KKT residuals.
///
///   eps_residual : min-norm stationarity defect, the weighted distance of
///                  -L'_x(x, lambda) to N_C(x) (+infinity off C);
///   signed_gap   : sup_{y in K} <lambda, y - G(x)>, the raw support gap
///                  (negative values certify strict satisfaction);
///   r_residual   : max(0, signed_gap);
///   feasibility  : d_K(G(x));
///   multiplier_norm : ||lambda||_Y.
///
/// All fields are recomputable from (x, lambda, problem).
struct AkktRecord {
  Vec x;
  Vec lambda;
  double eps_residual = 0.0;
  double signed_gap = 0.0;
  double r_residual = 0.0;
  double feasibility = 0.0;
  double multiplier_norm = 0.0;
};

/// L'_x(x, lambda) = f'(x) + G'(x)* lambda with the weighted adjoint.
Vec lagrangian_grad_x(const Problem& problem, const Vec& x, const Vec& lambda);

AkktRecord akkt_residuals(const Problem& problem, const Vec& x, const Vec& lambda,
                          double feas_tol = 1e-8);

/// KKT test with a single tolerance: stationarity, support gap, and
/// feasibility all at most tol.
bool is_kkt(const Problem& problem, const Vec& x, const Vec& lambda, double tol);

/// Minimal nonpositive splitting lambda = lambda_a - lambda_b with
/// lambda_a = min(lambda, 0) and lambda_b = -max(lambda, 0); componentwise
/// |lambda_a| + |lambda_b| = |lambda|.
std::pair<Vec, Vec> box_split(const Vec& lambda);

/// Checks that replacing a feasible box-multiplier pair by the minimal
/// splitting of lambda_a - lambda_b preserves the complementarity bound
///   -<lambda_b, u_b - u> - <lambda_a, u - u_a> <= r.
struct SplitBoundReport {
  double input_lhs = 0.0;    // bound evaluated at the given pair
  double minimal_lhs = 0.0;  // bound evaluated at the minimal splitting
  double r = 0.0;
  bool preserved = false;    // minimal_lhs <= r + slack
};

SplitBoundReport split_bound_check(const Vec& u, const Vec& u_a, const Vec& u_b,
                                   const Vec& lam_a, const Vec& lam_b, double r,
                                   const WeightedSpace& space, double slack = 1e-10);

/// Trace diagnostic for multiplier boundedness: the supremum of the
/// multiplier norms, a least-squares growth exponent of ||lambda^k|| against
/// k, and a bounded-trend verdict (exponent <= 0.1).  When the problem has
/// K = {0} and C = X and carries a dense Jacobian, also reports the largest
/// ratio ||lambda^k|| gamma(G'(xbar)) / (||v^k||(1+||xbar-x^k||) + r^k),
/// the quantity a surjectivity-type bound keeps at O(1).
struct MultiplierDiagnostic {
  double sup_norm = 0.0;
  double growth_exponent = 0.0;
  bool bounded_trend = true;
  std::optional<double> bound_ratio_max;
};

MultiplierDiagnostic bounded_multiplier_diagnostic(const std::vector<AkktRecord>& records,
                                                   const Problem* problem = nullptr);

/// Least-squares slope of log(values) against log(1..n), skipping
/// nonpositive entries; 0 when fewer than two usable points remain.
double growth_exponent_fit(const std::vector<double>& values);

}  // namespace akkt
