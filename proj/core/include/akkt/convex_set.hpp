#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "akkt/linalg.hpp"

namespace akkt {

using linalg::Vec;

/// Finite-dimensional inner-product space with strictly positive diagonal
/// weights, <u,v> = sum_i w_i u_i v_i.  Quadrature discretizations of
/// interval L2 problems land here with the cell measures as weights.
struct WeightedSpace {
  Vec weights;

  WeightedSpace() = default;
  explicit WeightedSpace(Vec w);
  static WeightedSpace unit(std::size_t n);

  std::size_t dim() const { return weights.size(); }
  double inner(const Vec& u, const Vec& v) const;
  double norm(const Vec& u) const;
  double dist(const Vec& u, const Vec& v) const;
};

enum class SetKind { Box, Zero, NonnegCone, Ball, WholeSpace, Product };

/// Catalog of nonempty, closed, convex sets with exact projection and cone
/// machinery under diagonal weights.  Box bounds may be +-infinity; Ball is
/// the ball of the ambient weighted norm.
class ConvexSet {
 public:
  ConvexSet() = default;  // zero-dimensional whole space

  static ConvexSet box(Vec lower, Vec upper);
  static ConvexSet zero(std::size_t dim);
  static ConvexSet nonneg_cone(std::size_t dim);
  static ConvexSet ball(Vec center, double radius);
  static ConvexSet whole_space(std::size_t dim);
  static ConvexSet product(std::vector<ConvexSet> blocks);

  SetKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  bool is_cone() const;

  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }
  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  const std::vector<ConvexSet>& blocks() const { return blocks_; }

 private:
  SetKind kind_ = SetKind::WholeSpace;
  std::size_t dim_ = 0;
  Vec lower_, upper_;   // Box
  Vec center_;          // Ball
  double radius_ = 0.0; // Ball
  std::vector<ConvexSet> blocks_;  // Product
};

/// Weighted-norm projection onto the set (componentwise clipping for Box
/// and NonnegCone; diagonal weights keep clipping exact).
Vec project(const ConvexSet& s, const Vec& x, const WeightedSpace& space);

/// Weighted distance ||x - P_S(x)||.
double set_distance(const ConvexSet& s, const Vec& x, const WeightedSpace& space);

/// sup_{y in S} <lam, y - z>.  Returns +infinity when lam pairs positively
/// with an unbounded direction of S.
double support_gap(const ConvexSet& s, const Vec& lam, const Vec& z,
                   const WeightedSpace& space);

/// min over mu in N_S(x) of ||g + mu||, the weighted distance of -g to the
/// normal cone at x.  Zero exactly when -g is normal to S at x.  Points
/// farther than feas_tol from S have an empty normal cone; the distance is
/// +infinity there.  feas_tol also decides which bounds count as active.
double normal_cone_dist(const ConvexSet& s, const Vec& x, const Vec& g,
                        const WeightedSpace& space, double feas_tol = 1e-8);

/// Projection onto the polar cone.  Only cone variants (Zero, NonnegCone,
/// WholeSpace and products of these) are supported.
Vec polar_project(const ConvexSet& s, const Vec& x, const WeightedSpace& space);

/// Weighted projection of v onto the normal cone N_S(x) at a feasible
/// point.  Throws when x is farther than feas_tol from S.
Vec normal_cone_project(const ConvexSet& s, const Vec& x, const Vec& v,
                        const WeightedSpace& space, double feas_tol = 1e-8);

/// d in S_infinity = { d : d + S subset S }.
bool recession_contains(const ConvexSet& s, const Vec& d, double tol);

/// Weighted distance of d to the tangent cone T_S(x) (+infinity when x is
/// farther than feas_tol from S).
double tangent_cone_dist(const ConvexSet& s, const Vec& x, const Vec& d,
                         const WeightedSpace& space, double feas_tol = 1e-8);

/// Projection of d onto the tangent cone at a feasible point.
Vec tangent_project(const ConvexSet& s, const Vec& x, const Vec& d,
                    const WeightedSpace& space, double feas_tol = 1e-8);

struct ConeMembershipReport {
  bool member = false;
  double violation = 0.0;
  std::optional<Vec> witness;
};

}  // namespace akkt
