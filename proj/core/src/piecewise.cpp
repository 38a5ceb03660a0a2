#include "akkt/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace akkt {

GridDiscretization discretize_interval(std::size_t n, double grading) {
  if (n < 2) throw std::invalid_argument("discretize_interval: need n >= 2");
  if (!(grading >= 1.0)) throw std::invalid_argument("discretize_interval: grading must be >= 1");
  GridDiscretization g;
  g.boundaries.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    g.boundaries[i] = std::pow(static_cast<double>(i) / static_cast<double>(n), grading);
  g.boundaries[0] = 0.0;
  g.boundaries[n] = 1.0;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.nodes[i] = 0.5 * (g.boundaries[i] + g.boundaries[i + 1]);
    g.weights[i] = g.boundaries[i + 1] - g.boundaries[i];
  }
  return g;
}

PiecewiseAnalytic PiecewiseAnalytic::constant(double c) {
  PiecewiseAnalytic f;
  f.segments_ = {{PowerTerm{c, 0.0}}};
  return f;
}

PiecewiseAnalytic PiecewiseAnalytic::power(double coef, double exponent) {
  PiecewiseAnalytic f;
  f.segments_ = {{PowerTerm{coef, exponent}}};
  return f;
}

PiecewiseAnalytic PiecewiseAnalytic::from_segments(
    Vec breakpoints, std::vector<std::vector<PowerTerm>> segments) {
  if (breakpoints.size() < 2 || segments.size() + 1 != breakpoints.size())
    throw std::invalid_argument("PiecewiseAnalytic: breakpoints/segments mismatch");
  if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0)
    throw std::invalid_argument("PiecewiseAnalytic: domain must be (0,1)");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw std::invalid_argument("PiecewiseAnalytic: breakpoints must increase");
  PiecewiseAnalytic f;
  f.breakpoints_ = std::move(breakpoints);
  f.segments_ = std::move(segments);
  return f;
}

namespace {

Vec merge_breaks(const Vec& a, const Vec& b) {
  Vec out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t segment_index(const Vec& breaks, double a, double b) {
  // segment containing the open interval (a, b)
  const double mid = 0.5 * (a + b);
  auto it = std::upper_bound(breaks.begin(), breaks.end(), mid);
  if (it == breaks.begin() || it == breaks.end()) {
    if (mid >= breaks.back()) return breaks.size() - 2;
    return 0;
  }
  return static_cast<std::size_t>(it - breaks.begin()) - 1;
}

}  // namespace

PiecewiseAnalytic PiecewiseAnalytic::operator*(const PiecewiseAnalytic& other) const {
  Vec breaks = merge_breaks(breakpoints_, other.breakpoints_);
  std::vector<std::vector<PowerTerm>> segs(breaks.size() - 1);
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const auto& ta = segments_[segment_index(breakpoints_, breaks[s], breaks[s + 1])];
    const auto& tb = other.segments_[segment_index(other.breakpoints_, breaks[s], breaks[s + 1])];
    for (const PowerTerm& u : ta)
      for (const PowerTerm& v : tb)
        segs[s].push_back(PowerTerm{u.coef * v.coef, u.exponent + v.exponent});
  }
  return from_segments(std::move(breaks), std::move(segs));
}

PiecewiseAnalytic PiecewiseAnalytic::operator+(const PiecewiseAnalytic& other) const {
  Vec breaks = merge_breaks(breakpoints_, other.breakpoints_);
  std::vector<std::vector<PowerTerm>> segs(breaks.size() - 1);
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    segs[s] = segments_[segment_index(breakpoints_, breaks[s], breaks[s + 1])];
    const auto& tb = other.segments_[segment_index(other.breakpoints_, breaks[s], breaks[s + 1])];
    segs[s].insert(segs[s].end(), tb.begin(), tb.end());
  }
  return from_segments(std::move(breaks), std::move(segs));
}

PiecewiseAnalytic PiecewiseAnalytic::operator-(const PiecewiseAnalytic& other) const {
  return *this + other.scaled(-1.0);
}

PiecewiseAnalytic PiecewiseAnalytic::scaled(double t) const {
  PiecewiseAnalytic f = *this;
  for (auto& seg : f.segments_)
    for (PowerTerm& term : seg) term.coef *= t;
  return f;
}

double PiecewiseAnalytic::value(double t) const {
  if (t <= 0.0 || t > 1.0) throw std::invalid_argument("PiecewiseAnalytic::value: t outside (0,1]");
  std::size_t s = segment_index(breakpoints_, t, t);
  double v = 0.0;
  for (const PowerTerm& term : segments_[s]) v += term.coef * std::pow(t, term.exponent);
  return v;
}

namespace {

double term_integral(const PiecewiseAnalytic::PowerTerm& term, double a, double b) {
  if (term.coef == 0.0) return 0.0;
  if (term.exponent == -1.0) {
    if (a <= 0.0) throw std::invalid_argument("PiecewiseAnalytic: non-integrable exponent at 0");
    return term.coef * (std::log(b) - std::log(a));
  }
  const double p1 = term.exponent + 1.0;
  if (a <= 0.0 && p1 <= 0.0)
    throw std::invalid_argument("PiecewiseAnalytic: non-integrable exponent at 0");
  const double upper = std::pow(b, p1);
  const double lower = (a == 0.0) ? 0.0 : std::pow(a, p1);
  return term.coef * (upper - lower) / p1;
}

}  // namespace

double PiecewiseAnalytic::integral(double a, double b) const {
  if (!(0.0 <= a && a <= b && b <= 1.0))
    throw std::invalid_argument("PiecewiseAnalytic::integral: bad interval");
  if (a == b) return 0.0;
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < breakpoints_.size(); ++s) {
    const double lo = std::max(a, breakpoints_[s]);
    const double hi = std::min(b, breakpoints_[s + 1]);
    if (lo >= hi) continue;
    for (const PowerTerm& term : segments_[s]) total += term_integral(term, lo, hi);
  }
  return total;
}

Vec PiecewiseAnalytic::cell_averages(const GridDiscretization& grid) const {
  Vec avg(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = grid.boundaries[i], b = grid.boundaries[i + 1];
    avg[i] = integral(a, b) / (b - a);
  }
  return avg;
}

double exact_inner(const PiecewiseAnalytic& f1, const PiecewiseAnalytic& f2) {
  return (f1 * f2).integral();
}

}  // namespace akkt
