#pragma once

#include <functional>
#include <optional>
#include <string>

#include "akkt/convex_set.hpp"
#include "akkt/linalg.hpp"

namespace akkt {

/// Instance of the constrained program: minimize f(x) over x in C subject
/// to G(x) in K, between weighted spaces X and Y.  Gradients are taken with
/// respect to the weighted inner products (the directional derivative along
/// d equals <grad, d>_X), and jacobian_adjoint realizes the weighted adjoint
/// G'(x)*.  Evaluators must be pure; a Problem value may be shared read-only
/// across workers.
struct Problem {
  std::string name;
  WeightedSpace space_x;
  WeightedSpace space_y;
  ConvexSet set_c;
  ConvexSet set_k;

  std::function<double(const Vec&)> objective_value;
  std::function<Vec(const Vec&)> objective_grad;
  std::function<Vec(const Vec&)> constraint_value;
  std::function<Vec(const Vec&, const Vec&)> jacobian_apply;    // G'(x) d
  std::function<Vec(const Vec&, const Vec&)> jacobian_adjoint;  // G'(x)* lam

  /// Optional densification for linear-algebra diagnostics; entries are the
  /// plain coordinate Jacobian (weights enter through weighted_adjoint /
  /// weighted_conjugate when needed).
  std::function<linalg::Matrix(const Vec&)> dense_jacobian;

  std::size_t dim_x() const { return space_x.dim(); }
  std::size_t dim_y() const { return space_y.dim(); }
};

struct FdCheckReport {
  double gradient_error = 0.0;   // worst relative central-difference error
  double jacobian_error = 0.0;
  double adjoint_error = 0.0;    // worst |<Jd,l>_Y - <d,J*l>_X| / (1 + |<Jd,l>|)
  double max_error() const;
};

/// Central-difference derivative check along coordinate and random
/// directions; the adjoint identity is checked on random pairs.
FdCheckReport fd_check(const Problem& problem, const Vec& x, double h,
                       std::uint64_t seed = 42);

/// Membership of d in the linearization cone at a feasible point: d tangent
/// to C at xbar with G'(xbar) d tangent to K at G(xbar).  The violation is
/// the sum of the two tangent-cone distances; the witness is the tangent
/// projection of d onto T_C(xbar).
ConeMembershipReport lin_cone_membership(const Problem& problem, const Vec& xbar,
                                         const Vec& d, double tol);

}  // namespace akkt
