#pragma once

#include <functional>
#include <vector>

#include "akkt/residuals.hpp"

namespace akkt {

/// Drives the localized quadratic penalization
///   minimize f(x) + ||x - xbar||^2 + k d_K^2(G(x))  over  B_radius(xbar) n C
/// for k = 1..k_max and emits the multiplier lambda_k = 2 k d_K(G(x_k)) xi_k
/// with xi_k the unit outward projection residual of G(x_k) onto K (zero
/// multiplier when G(x_k) already lies in K).  The records follow an
/// inexact-KKT sequence whose stationarity defect vanishes as k grows.
struct PenaltyPathOptions {
  int k_max = 20;
  std::function<double(int)> inner_tol = [](int k) {
    return std::max(1e-10, 1e-6 / static_cast<double>(k));
  };
  double radius = 1e3;  // localization ball around xbar
  int max_inner = 20000;
};

struct PenaltyPathResult {
  std::vector<AkktRecord> records;
  std::vector<int> inner_iterations;
  bool truncated = false;  // an inner solve ran out of budget
};

PenaltyPathResult quadratic_penalty_path(const Problem& problem, const Vec& xbar,
                                         const PenaltyPathOptions& opts = {});

}  // namespace akkt
