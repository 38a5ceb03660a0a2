#pragma once

#include "akkt/problem.hpp"

namespace akkt {

/// Witness for membership of v in the set of vectors G'(x)*lambda + mu with
/// mu normal to C at x and lambda whose support gap over K at G(x) is at
/// most r.  On a member verdict the returned pair is feasible and
/// reconstructs v up to the residual.
struct MembershipWitness {
  bool member = false;
  Vec lambda;
  Vec mu;
  double residual = 0.0;  // || G'(x)* lambda + mu - v ||_X
  bool converged = false; // false: iteration budget exhausted, inconclusive
  int iterations = 0;
};

struct MembershipOptions {
  double tol = 1e-7;        // member when the residual norm reaches this
  int max_iter = 10000;     // projected-gradient iterations
  int dykstra_max = 10000;  // alternating-projection iterations per step
};

/// Decides v in M(x, r) by minimizing phi(lambda, mu) =
/// 1/2 || G'(x)* lambda + mu - v ||^2 with projected gradient steps.  The
/// lambda-feasible set is handled by cyclic Dykstra projections over the
/// polar/sign constraints and the closing halfspace -<lambda, G(x)> <= r
/// (cone K), or over the sign constraints of the two-sided splitting
/// lambda = lambda_a - lambda_b with lambda_a, lambda_b <= 0 (finite box K).
/// Requires x in C and r >= 0; K must be a cone variant or a finite box.
MembershipWitness mset_membership(const Problem& problem, const Vec& x, double r,
                                  const Vec& v, const MembershipOptions& opts = {});

}  // namespace akkt
