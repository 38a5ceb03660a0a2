#pragma once

#include "akkt/piecewise.hpp"
#include "akkt/problem.hpp"

namespace akkt {

/// Analytic family indexed by k for the bounded-control equality problem
///
///   minimize -alpha  over  (alpha, u) in R x {|u| <= 1}
///   subject to alpha * q - u = 0,  q(t) = t^{-1/4},
///
/// whose canonical inexact-KKT sequence is alpha_k = 1/k,
/// u_k = clip(alpha_k q, [-1,1]) and lambda_k = (3/4) k^3 on [0, k^{-4}].
/// The closed forms ||lambda_k|| = 3k/4, <q, lambda_k> = 1 and
/// <lambda_k, -G> = -1/(4k) are recomputed through exact integration and
/// asserted on construction.
struct SingularPathExact {
  int k = 1;
  double alpha = 1.0;
  PiecewiseAnalytic q;
  PiecewiseAnalytic u;
  PiecewiseAnalytic lambda;
  PiecewiseAnalytic constraint;  // G = alpha q - u

  double multiplier_norm = 0.0;     // recomputed ||lambda||
  double pairing_q_lambda = 0.0;    // recomputed <q, lambda>
  double support_gap_zero = 0.0;    // recomputed <lambda, 0 - G>
  double stationarity_alpha = 0.0;  // -1 + <q, lambda>, zero at the fixture
  double stationarity_u = 0.0;      // ||-lambda + mu_u||, identically zero
};

SingularPathExact build_example35(int k);

/// Discretization of the singular problem by exact cell averages on a grid:
/// x = (alpha, u-cells), unit weight on alpha and cell measures on u; the
/// constraint alpha qbar - u is affine with K = {0} and C = R x [-1,1]^n.
Problem make_example35_problem(const GridDiscretization& grid);

struct DiscretePair {
  Vec x;       // (alpha, cell averages of u)
  Vec lambda;  // cell averages of lambda
};

DiscretePair discretize_example35_pair(int k, const GridDiscretization& grid);

/// Unconstrained ball instance: C is the unit ball of R^n, the constraint
/// map is identically zero into a one-dimensional Y with K = {0}.  The
/// boundary points (e_1 + e_{k+1})/sqrt(2) are their own normal directions,
/// while the interior point e_1/sqrt(2) has trivial normal cone.
Problem make_ball_fixture_problem(std::size_t n);
Vec ball_fixture_boundary_point(std::size_t n, std::size_t k);  // (e_1 + e_{k+1})/sqrt(2)
Vec ball_fixture_interior_point(std::size_t n);                 // e_1 / sqrt(2)

}  // namespace akkt
