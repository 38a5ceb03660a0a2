#include "akkt/convex_set.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace akkt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(const ConvexSet& s, const Vec& x, const WeightedSpace& space) {
  if (s.dim() != x.size() || s.dim() != space.dim())
    throw std::invalid_argument("convex set operation: dimension mismatch");
}

// Iterate the blocks of a product set with coordinate offsets; for plain
// sets the single "block" is the set itself.
template <typename F>
void for_blocks(const ConvexSet& s, F&& f) {
  if (s.kind() == SetKind::Product) {
    std::size_t off = 0;
    for (const ConvexSet& b : s.blocks()) {
      f(b, off);
      off += b.dim();
    }
  } else {
    f(s, 0);
  }
}

Vec slice(const Vec& x, std::size_t off, std::size_t n) {
  return Vec(x.begin() + off, x.begin() + off + n);
}

WeightedSpace slice_space(const WeightedSpace& space, std::size_t off, std::size_t n) {
  return WeightedSpace(slice(space.weights, off, n));
}
}  // namespace

WeightedSpace::WeightedSpace(Vec w) : weights(std::move(w)) {
  for (double wi : weights)
    if (!(wi > 0.0) || !std::isfinite(wi))
      throw std::invalid_argument("WeightedSpace: weights must be strictly positive");
}

WeightedSpace WeightedSpace::unit(std::size_t n) { return WeightedSpace(Vec(n, 1.0)); }

double WeightedSpace::inner(const Vec& u, const Vec& v) const {
  if (u.size() != weights.size() || v.size() != weights.size())
    throw std::invalid_argument("WeightedSpace::inner: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * u[i] * v[i];
  return s;
}

double WeightedSpace::norm(const Vec& u) const { return std::sqrt(inner(u, u)); }

double WeightedSpace::dist(const Vec& u, const Vec& v) const {
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double d = u[i] - v[i];
    s += weights[i] * d * d;
  }
  return std::sqrt(s);
}

ConvexSet ConvexSet::box(Vec lower, Vec upper) {
  if (lower.size() != upper.size())
    throw std::invalid_argument("ConvexSet::box: bound sizes differ");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] > upper[i])
      throw std::invalid_argument("ConvexSet::box: requires lower <= upper");
  }
  ConvexSet s;
  s.kind_ = SetKind::Box;
  s.dim_ = lower.size();
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

ConvexSet ConvexSet::zero(std::size_t dim) {
  ConvexSet s;
  s.kind_ = SetKind::Zero;
  s.dim_ = dim;
  return s;
}

ConvexSet ConvexSet::nonneg_cone(std::size_t dim) {
  ConvexSet s;
  s.kind_ = SetKind::NonnegCone;
  s.dim_ = dim;
  return s;
}

ConvexSet ConvexSet::ball(Vec center, double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("ConvexSet::ball: radius must be >= 0");
  ConvexSet s;
  s.kind_ = SetKind::Ball;
  s.dim_ = center.size();
  s.center_ = std::move(center);
  s.radius_ = radius;
  return s;
}

ConvexSet ConvexSet::whole_space(std::size_t dim) {
  ConvexSet s;
  s.kind_ = SetKind::WholeSpace;
  s.dim_ = dim;
  return s;
}

ConvexSet ConvexSet::product(std::vector<ConvexSet> blocks) {
  ConvexSet s;
  s.kind_ = SetKind::Product;
  // Nested products flatten here so the per-block walks stay one level deep.
  for (ConvexSet& b : blocks) {
    if (b.kind() == SetKind::Product) {
      for (ConvexSet& sub : b.blocks_) s.blocks_.push_back(std::move(sub));
    } else {
      s.blocks_.push_back(std::move(b));
    }
  }
  s.dim_ = 0;
  for (const ConvexSet& b : s.blocks_) s.dim_ += b.dim();
  return s;
}

bool ConvexSet::is_cone() const {
  switch (kind_) {
    case SetKind::Zero:
    case SetKind::NonnegCone:
    case SetKind::WholeSpace:
      return true;
    case SetKind::Product:
      for (const ConvexSet& b : blocks_)
        if (!b.is_cone()) return false;
      return true;
    default:
      return false;
  }
}

Vec project(const ConvexSet& s, const Vec& x, const WeightedSpace& space) {
  check_dim(s, x, space);
  if (!linalg::all_finite(x)) throw std::invalid_argument("project: non-finite point");
  Vec y = x;
  for_blocks(s, [&](const ConvexSet& b, std::size_t off) {
    switch (b.kind()) {
      case SetKind::Box:
        for (std::size_t i = 0; i < b.dim(); ++i) {
          double v = y[off + i];
          if (v < b.lower()[i]) v = b.lower()[i];
          if (v > b.upper()[i]) v = b.upper()[i];
          y[off + i] = v;
        }
        break;
      case SetKind::Zero:
        for (std::size_t i = 0; i < b.dim(); ++i) y[off + i] = 0.0;
        break;
      case SetKind::NonnegCone:
        for (std::size_t i = 0; i < b.dim(); ++i)
          if (y[off + i] < 0.0) y[off + i] = 0.0;
        break;
      case SetKind::WholeSpace:
        break;
      case SetKind::Ball: {
        // Radial in the weighted norm: the ball is a metric ball of the
        // ambient inner product.
        WeightedSpace sub = slice_space(space, off, b.dim());
        Vec d = slice(x, off, b.dim());
        for (std::size_t i = 0; i < b.dim(); ++i) d[i] -= b.center()[i];
        const double r = sub.norm(d);
        if (r > b.radius()) {
          const double t = b.radius() / r;
          for (std::size_t i = 0; i < b.dim(); ++i)
            y[off + i] = b.center()[i] + t * d[i];
        }
        break;
      }
      case SetKind::Product:
        throw std::logic_error("nested product sets are flattened at construction");
    }
  });
  return y;
}

double set_distance(const ConvexSet& s, const Vec& x, const WeightedSpace& space) {
  return space.dist(x, project(s, x, space));
}

double support_gap(const ConvexSet& s, const Vec& lam, const Vec& z,
                   const WeightedSpace& space) {
  check_dim(s, lam, space);
  if (z.size() != s.dim()) throw std::invalid_argument("support_gap: dimension mismatch");
  double total = 0.0;
  bool infinite = false;
  for_blocks(s, [&](const ConvexSet& b, std::size_t off) {
    if (infinite) return;
    switch (b.kind()) {
      case SetKind::Box:
        for (std::size_t i = 0; i < b.dim(); ++i) {
          const double li = lam[off + i];
          const double wi = space.weights[off + i];
          if (li > 0.0) {
            if (std::isinf(b.upper()[i])) { infinite = true; return; }
            total += wi * li * (b.upper()[i] - z[off + i]);
          } else if (li < 0.0) {
            if (std::isinf(b.lower()[i])) { infinite = true; return; }
            total += wi * li * (b.lower()[i] - z[off + i]);
          }
        }
        break;
      case SetKind::Zero:
        for (std::size_t i = 0; i < b.dim(); ++i)
          total -= space.weights[off + i] * lam[off + i] * z[off + i];
        break;
      case SetKind::NonnegCone:
        for (std::size_t i = 0; i < b.dim(); ++i) {
          if (lam[off + i] > 0.0) { infinite = true; return; }
          total -= space.weights[off + i] * lam[off + i] * z[off + i];
        }
        break;
      case SetKind::WholeSpace:
        for (std::size_t i = 0; i < b.dim(); ++i)
          if (lam[off + i] != 0.0) { infinite = true; return; }
        break;
      case SetKind::Ball: {
        WeightedSpace sub = slice_space(space, off, b.dim());
        Vec lb = slice(lam, off, b.dim());
        double val = sub.norm(lb) * b.radius();
        for (std::size_t i = 0; i < b.dim(); ++i)
          val += sub.weights[i] * lb[i] * (b.center()[i] - z[off + i]);
        total += val;
        break;
      }
      case SetKind::Product:
        throw std::logic_error("nested product sets are flattened at construction");
    }
  });
  return infinite ? kInf : total;
}

namespace {

// Squared weighted distance of -g to the normal cone of one block at x,
// assuming x is (approximately) feasible for the block.
double normal_dist_sq_block(const ConvexSet& b, const Vec& x, const Vec& g,
                            const WeightedSpace& space, std::size_t off,
                            double act_tol) {
  double sq = 0.0;
  switch (b.kind()) {
    case SetKind::Box:
      for (std::size_t i = 0; i < b.dim(); ++i) {
        const double w = space.weights[off + i];
        const double gi = g[off + i];
        const bool at_lower = x[off + i] <= b.lower()[i] + act_tol;
        const bool at_upper = x[off + i] >= b.upper()[i] - act_tol;
        double resid;
        if (at_lower && at_upper) resid = 0.0;        // pinned, normal cone is R
        else if (at_lower) resid = std::max(0.0, -gi);  // mu <= 0 available
        else if (at_upper) resid = std::max(0.0, gi);   // mu >= 0 available
        else resid = gi;                                // interior, N = {0}
        sq += w * resid * resid;
      }
      break;
    case SetKind::Zero:
      // N_{0}(0) is the whole space; any g is cancelled.
      break;
    case SetKind::NonnegCone:
      for (std::size_t i = 0; i < b.dim(); ++i) {
        const double w = space.weights[off + i];
        const double gi = g[off + i];
        const double resid = (x[off + i] <= act_tol) ? std::max(0.0, -gi) : gi;
        sq += w * resid * resid;
      }
      break;
    case SetKind::WholeSpace:
      for (std::size_t i = 0; i < b.dim(); ++i) {
        const double w = space.weights[off + i];
        sq += w * g[off + i] * g[off + i];
      }
      break;
    case SetKind::Ball: {
      WeightedSpace sub = slice_space(space, off, b.dim());
      Vec gb = slice(g, off, b.dim());
      if (b.radius() <= act_tol) break;  // degenerate ball = point, N = everything
      Vec n = slice(x, off, b.dim());
      for (std::size_t i = 0; i < b.dim(); ++i) n[i] -= b.center()[i];
      const double rad = sub.norm(n);
      if (rad >= b.radius() - act_tol) {
        // boundary: N = nonnegative multiples of x - c
        const double alpha = std::max(0.0, -sub.inner(gb, n) / sub.inner(n, n));
        double val = 0.0;
        for (std::size_t i = 0; i < b.dim(); ++i) {
          const double r = gb[i] + alpha * n[i];
          val += sub.weights[i] * r * r;
        }
        sq += val;
      } else {
        sq += sub.inner(gb, gb);  // interior, N = {0}
      }
      break;
    }
    case SetKind::Product:
      throw std::logic_error("nested product sets are flattened at construction");
  }
  return sq;
}

}  // namespace

double normal_cone_dist(const ConvexSet& s, const Vec& x, const Vec& g,
                        const WeightedSpace& space, double feas_tol) {
  check_dim(s, x, space);
  if (g.size() != s.dim()) throw std::invalid_argument("normal_cone_dist: dimension mismatch");
  if (set_distance(s, x, space) > feas_tol) return kInf;  // empty normal cone off the set
  double sq = 0.0;
  for_blocks(s, [&](const ConvexSet& b, std::size_t off) {
    sq += normal_dist_sq_block(b, x, g, space, off, feas_tol);
  });
  return std::sqrt(sq);
}

Vec polar_project(const ConvexSet& s, const Vec& x, const WeightedSpace& space) {
  check_dim(s, x, space);
  Vec y = x;
  for_blocks(s, [&](const ConvexSet& b, std::size_t off) {
    switch (b.kind()) {
      case SetKind::Zero:
        break;  // polar of {0} is the whole space
      case SetKind::NonnegCone:
        for (std::size_t i = 0; i < b.dim(); ++i)
          if (y[off + i] > 0.0) y[off + i] = 0.0;  // polar is the nonpositive cone
        break;
      case SetKind::WholeSpace:
        for (std::size_t i = 0; i < b.dim(); ++i) y[off + i] = 0.0;  // polar is {0}
        break;
      default:
        throw std::invalid_argument("polar_project: unsupported non-cone variant");
    }
  });
  return y;
}

Vec normal_cone_project(const ConvexSet& s, const Vec& x, const Vec& v,
                        const WeightedSpace& space, double feas_tol) {
  check_dim(s, x, space);
  if (v.size() != s.dim()) throw std::invalid_argument("normal_cone_project: dimension mismatch");
  if (set_distance(s, x, space) > feas_tol)
    throw std::invalid_argument("normal_cone_project: point is not feasible to tolerance");
  Vec y = v;
  for_blocks(s, [&](const ConvexSet& b, std::size_t off) {
    switch (b.kind()) {
      case SetKind::Box:
        for (std::size_t i = 0; i < b.dim(); ++i) {
          const bool at_lower = x[off + i] <= b.lower()[i] + feas_tol;
          const bool at_upper = x[off + i] >= b.upper()[i] - feas_tol;
          if (at_lower && at_upper) continue;            // pinned, N = R
          if (at_lower) y[off + i] = std::min(0.0, y[off + i]);
          else if (at_upper) y[off + i] = std::max(0.0, y[off + i]);
          else y[off + i] = 0.0;
        }
        break;
      case SetKind::Zero:
        break;  // N_{0}(0) is the whole space
      case SetKind::NonnegCone:
        for (std::size_t i = 0; i < b.dim(); ++i) {
          if (x[off + i] <= feas_tol) y[off + i] = std::min(0.0, y[off + i]);
          else y[off + i] = 0.0;
        }
        break;
      case SetKind::WholeSpace:
        for (std::size_t i = 0; i < b.dim(); ++i) y[off + i] = 0.0;
        break;
      case SetKind::Ball: {
        if (b.radius() <= feas_tol) break;  // point set, N = everything
        WeightedSpace sub = slice_space(space, off, b.dim());
        Vec n = slice(x, off, b.dim());
        for (std::size_t i = 0; i < b.dim(); ++i) n[i] -= b.center()[i];
        const double rad = sub.norm(n);
        if (rad >= b.radius() - feas_tol) {
          Vec vb = slice(y, off, b.dim());
          const double alpha = std::max(0.0, sub.inner(vb, n) / sub.inner(n, n));
          for (std::size_t i = 0; i < b.dim(); ++i) y[off + i] = alpha * n[i];
        } else {
          for (std::size_t i = 0; i < b.dim(); ++i) y[off + i] = 0.0;
        }
        break;
      }
      case SetKind::Product:
        throw std::logic_error("nested product sets are flattened at construction");
    }
  });
  return y;
}

bool recession_contains(const ConvexSet& s, const Vec& d, double tol) {
  if (d.size() != s.dim()) throw std::invalid_argument("recession_contains: dimension mismatch");
  if (!linalg::all_finite(d)) throw std::invalid_argument("recession_contains: non-finite direction");
  bool ok = true;
  for_blocks(s, [&](const ConvexSet& b, std::size_t off) {
    if (!ok) return;
    switch (b.kind()) {
      case SetKind::Box:
        for (std::size_t i = 0; i < b.dim(); ++i) {
          const double di = d[off + i];
          const bool lower_free = std::isinf(b.lower()[i]);
          const bool upper_free = std::isinf(b.upper()[i]);
          if (!upper_free && di > tol) { ok = false; return; }
          if (!lower_free && di < -tol) { ok = false; return; }
        }
        break;
      case SetKind::Zero:
      case SetKind::Ball:
        for (std::size_t i = 0; i < b.dim(); ++i)
          if (std::abs(d[off + i]) > tol) { ok = false; return; }
        break;
      case SetKind::NonnegCone:
        for (std::size_t i = 0; i < b.dim(); ++i)
          if (d[off + i] < -tol) { ok = false; return; }
        break;
      case SetKind::WholeSpace:
        break;
      case SetKind::Product:
        throw std::logic_error("nested product sets are flattened at construction");
    }
  });
  return ok;
}

Vec tangent_project(const ConvexSet& s, const Vec& x, const Vec& d,
                    const WeightedSpace& space, double feas_tol) {
  check_dim(s, x, space);
  if (d.size() != s.dim()) throw std::invalid_argument("tangent_project: dimension mismatch");
  Vec y = d;
  for_blocks(s, [&](const ConvexSet& b, std::size_t off) {
    switch (b.kind()) {
      case SetKind::Box:
        for (std::size_t i = 0; i < b.dim(); ++i) {
          const bool at_lower = x[off + i] <= b.lower()[i] + feas_tol;
          const bool at_upper = x[off + i] >= b.upper()[i] - feas_tol;
          if (at_lower && at_upper) y[off + i] = 0.0;
          else if (at_lower) y[off + i] = std::max(0.0, y[off + i]);
          else if (at_upper) y[off + i] = std::min(0.0, y[off + i]);
        }
        break;
      case SetKind::Zero:
        for (std::size_t i = 0; i < b.dim(); ++i) y[off + i] = 0.0;
        break;
      case SetKind::NonnegCone:
        for (std::size_t i = 0; i < b.dim(); ++i)
          if (x[off + i] <= feas_tol) y[off + i] = std::max(0.0, y[off + i]);
        break;
      case SetKind::WholeSpace:
        break;
      case SetKind::Ball: {
        WeightedSpace sub = slice_space(space, off, b.dim());
        if (b.radius() <= feas_tol) {
          for (std::size_t i = 0; i < b.dim(); ++i) y[off + i] = 0.0;
          break;
        }
        Vec n = slice(x, off, b.dim());
        for (std::size_t i = 0; i < b.dim(); ++i) n[i] -= b.center()[i];
        const double rad = sub.norm(n);
        if (rad >= b.radius() - feas_tol) {
          // tangent halfspace <d, x - c> <= 0
          Vec db = slice(y, off, b.dim());
          const double comp = sub.inner(db, n);
          if (comp > 0.0) {
            const double t = comp / sub.inner(n, n);
            for (std::size_t i = 0; i < b.dim(); ++i) y[off + i] -= t * n[i];
          }
        }
        break;
      }
      case SetKind::Product:
        throw std::logic_error("nested product sets are flattened at construction");
    }
  });
  return y;
}

double tangent_cone_dist(const ConvexSet& s, const Vec& x, const Vec& d,
                         const WeightedSpace& space, double feas_tol) {
  if (set_distance(s, x, space) > feas_tol) return kInf;
  return space.dist(d, tangent_project(s, x, d, space, feas_tol));
}

}  // namespace akkt
