#include "akkt/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace akkt {

namespace {

void assert_close(double actual, double expected, double tol, const char* what) {
  if (std::abs(actual - expected) > tol)
    throw std::logic_error(std::string("example fixture: ") + what +
                           " does not match its closed form");
}

}  // namespace

SingularPathExact build_example35(int k) {
  if (k < 1) throw std::invalid_argument("build_example35: k must be >= 1");
  SingularPathExact fx;
  fx.k = k;
  const double kd = static_cast<double>(k);
  fx.alpha = 1.0 / kd;
  const double cut = 1.0 / (kd * kd * kd * kd);  // k^{-4}

  using PA = PiecewiseAnalytic;
  using Term = PA::PowerTerm;

  fx.q = PA::power(1.0, -0.25);
  if (k == 1) {
    // alpha q clips everywhere: u = 1, lambda = 3/4 on all of (0,1)
    fx.u = PA::constant(1.0);
    fx.lambda = PA::constant(0.75 * kd * kd * kd);
  } else {
    fx.u = PA::from_segments({0.0, cut, 1.0},
                             {{Term{1.0, 0.0}}, {Term{fx.alpha, -0.25}}});
    fx.lambda = PA::from_segments({0.0, cut, 1.0},
                                  {{Term{0.75 * kd * kd * kd, 0.0}}, {}});
  }
  fx.constraint = fx.q.scaled(fx.alpha) - fx.u;

  fx.multiplier_norm = std::sqrt(exact_inner(fx.lambda, fx.lambda));
  fx.pairing_q_lambda = exact_inner(fx.q, fx.lambda);
  fx.support_gap_zero = -exact_inner(fx.lambda, fx.constraint);
  fx.stationarity_alpha = -1.0 + fx.pairing_q_lambda;
  // u-component of f' + G'*lambda + mu is -lambda + lambda; form it
  // explicitly and take its norm.
  const PA u_component = fx.lambda.scaled(-1.0) + fx.lambda;
  fx.stationarity_u = std::sqrt(std::abs(exact_inner(u_component, u_component)));

  assert_close(fx.multiplier_norm, 0.75 * kd, 1e-12, "multiplier norm 3k/4");
  assert_close(fx.pairing_q_lambda, 1.0, 1e-12, "pairing <q, lambda> = 1");
  assert_close(fx.support_gap_zero, -1.0 / (4.0 * kd), 1e-12, "support gap -1/(4k)");
  return fx;
}

Problem make_example35_problem(const GridDiscretization& grid) {
  const std::size_t n = grid.size();
  const PiecewiseAnalytic q = PiecewiseAnalytic::power(1.0, -0.25);
  const Vec qbar = q.cell_averages(grid);

  Vec wx(n + 1);
  wx[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) wx[i + 1] = grid.weights[i];

  Problem p;
  p.name = "example35";
  p.space_x = WeightedSpace(wx);
  p.space_y = WeightedSpace(grid.weights);
  {
    std::vector<ConvexSet> blocks;
    blocks.push_back(ConvexSet::whole_space(1));
    blocks.push_back(ConvexSet::box(Vec(n, -1.0), Vec(n, 1.0)));
    p.set_c = ConvexSet::product(std::move(blocks));
  }
  p.set_k = ConvexSet::zero(n);

  p.objective_value = [](const Vec& x) { return -x[0]; };
  p.objective_grad = [n](const Vec&) {
    Vec g(n + 1, 0.0);
    g[0] = -1.0;
    return g;
  };
  p.constraint_value = [qbar, n](const Vec& x) {
    Vec g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = x[0] * qbar[i] - x[i + 1];
    return g;
  };
  p.jacobian_apply = [qbar, n](const Vec&, const Vec& d) {
    Vec g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = d[0] * qbar[i] - d[i + 1];
    return g;
  };
  // <G'(x)d, lam>_Y = d_alpha <qbar, lam>_Y - <d_u, lam>_Y; the u-block of X
  // carries the same weights as Y, so the adjoint is (<qbar,lam>_Y, -lam).
  p.jacobian_adjoint = [qbar, n, wy = grid.weights](const Vec&, const Vec& lam) {
    Vec out(n + 1, 0.0);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += wy[i] * qbar[i] * lam[i];
    out[0] = s;
    for (std::size_t i = 0; i < n; ++i) out[i + 1] = -lam[i];
    return out;
  };
  p.dense_jacobian = [qbar, n](const Vec&) {
    linalg::Matrix j(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      j(i, 0) = qbar[i];
      j(i, i + 1) = -1.0;
    }
    return j;
  };
  return p;
}

DiscretePair discretize_example35_pair(int k, const GridDiscretization& grid) {
  const SingularPathExact fx = build_example35(k);
  const std::size_t n = grid.size();
  DiscretePair pair;
  pair.x.resize(n + 1);
  pair.x[0] = fx.alpha;
  const Vec ubar = fx.u.cell_averages(grid);
  for (std::size_t i = 0; i < n; ++i) pair.x[i + 1] = ubar[i];
  pair.lambda = fx.lambda.cell_averages(grid);
  return pair;
}

Problem make_ball_fixture_problem(std::size_t n) {
  Problem p;
  p.name = "ball-fixture";
  p.space_x = WeightedSpace::unit(n);
  p.space_y = WeightedSpace::unit(1);
  p.set_c = ConvexSet::ball(Vec(n, 0.0), 1.0);
  p.set_k = ConvexSet::zero(1);
  p.objective_value = [](const Vec&) { return 0.0; };
  p.objective_grad = [n](const Vec&) { return Vec(n, 0.0); };
  p.constraint_value = [](const Vec&) { return Vec{0.0}; };
  p.jacobian_apply = [](const Vec&, const Vec&) { return Vec{0.0}; };
  p.jacobian_adjoint = [n](const Vec&, const Vec&) { return Vec(n, 0.0); };
  p.dense_jacobian = [n](const Vec&) { return linalg::Matrix(1, n); };
  return p;
}

Vec ball_fixture_boundary_point(std::size_t n, std::size_t k) {
  if (k + 1 >= n) throw std::invalid_argument("ball_fixture_boundary_point: k + 1 must be < n");
  Vec x(n, 0.0);
  x[0] = 1.0 / std::sqrt(2.0);
  x[k + 1] = 1.0 / std::sqrt(2.0);
  return x;
}

Vec ball_fixture_interior_point(std::size_t n) {
  Vec x(n, 0.0);
  x[0] = 1.0 / std::sqrt(2.0);
  return x;
}

}  // namespace akkt
