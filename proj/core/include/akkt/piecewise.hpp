#pragma once

#include <cstddef>
#include <vector>

#include "akkt/linalg.hpp"

namespace akkt {

using linalg::Vec;

/// Midpoint discretization of (0,1): strictly increasing cell boundaries
/// b_0 = 0 < ... < b_n = 1, nodes at cell midpoints, weights equal to cell
/// measures (so the weights sum to 1 exactly up to roundoff).
struct GridDiscretization {
  Vec boundaries;  // n + 1 entries
  Vec nodes;       // n midpoints
  Vec weights;     // n cell measures

  std::size_t size() const { return nodes.size(); }
};

/// Composite midpoint grid with boundaries (i/n)^grading.  grading = 1 is
/// the uniform grid; grading > 1 concentrates cells toward 0.
GridDiscretization discretize_interval(std::size_t n, double grading = 1.0);

/// Function on (0,1) given segmentwise as a sum of power terms c * t^p.
/// Products and integrals stay in closed form, which is what makes the
/// singular fixtures exactly evaluable.
class PiecewiseAnalytic {
 public:
  struct PowerTerm {
    double coef;
    double exponent;
  };

  PiecewiseAnalytic() = default;
  static PiecewiseAnalytic constant(double c);
  static PiecewiseAnalytic power(double coef, double exponent);
  /// breakpoints: 0 = t_0 < ... < t_m = 1; one term list per segment.
  static PiecewiseAnalytic from_segments(Vec breakpoints,
                                         std::vector<std::vector<PowerTerm>> segments);

  const Vec& breakpoints() const { return breakpoints_; }

  PiecewiseAnalytic operator*(const PiecewiseAnalytic& other) const;
  PiecewiseAnalytic operator+(const PiecewiseAnalytic& other) const;
  PiecewiseAnalytic operator-(const PiecewiseAnalytic& other) const;
  PiecewiseAnalytic scaled(double t) const;

  double value(double t) const;
  /// Exact integral over (a, b) via antiderivatives of the power terms.
  /// Throws for non-integrable exponents (p <= -1 touching 0).
  double integral(double a, double b) const;
  double integral() const { return integral(0.0, 1.0); }

  /// Exact per-cell averages over a grid (the L2 projection onto piecewise
  /// constants), the discretization used for the singular fixtures.
  Vec cell_averages(const GridDiscretization& grid) const;

 private:
  Vec breakpoints_{0.0, 1.0};
  std::vector<std::vector<PowerTerm>> segments_{{}};
};

/// Integral of f1 * f2 over (0,1), exact to roundoff.
double exact_inner(const PiecewiseAnalytic& f1, const PiecewiseAnalytic& f2);

}  // namespace akkt
