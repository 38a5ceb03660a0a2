#include "akkt/alm.hpp"

#include <cmath>
#include <stdexcept>

#include "akkt/projected_gradient.hpp"

namespace akkt {

double AlmConfig::inner_tol(int k) const {
  return std::max(inner_tol_floor, std::pow(inner_tol_ratio, static_cast<double>(k)));
}

void AlmConfig::validate() const {
  if (!(rho0 > 0.0)) throw std::invalid_argument("AlmConfig: rho0 must be > 0");
  if (!(gamma > 1.0)) throw std::invalid_argument("AlmConfig: gamma must be > 1");
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("AlmConfig: tau must be in (0,1)");
  if (!(safeguard_bound > 0.0)) throw std::invalid_argument("AlmConfig: safeguard bound must be > 0");
  if (!(inner_tol_floor > 0.0) || !(inner_tol_ratio > 0.0 && inner_tol_ratio < 1.0))
    throw std::invalid_argument("AlmConfig: invalid inner tolerance schedule");
  if (!(armijo_sigma > 0.0 && armijo_sigma < 1.0) || !(armijo_beta > 0.0 && armijo_beta < 1.0))
    throw std::invalid_argument("AlmConfig: invalid line-search parameters");
  if (!(step0 > 0.0)) throw std::invalid_argument("AlmConfig: step0 must be > 0");
  if (max_outer < 1 || max_inner < 1) throw std::invalid_argument("AlmConfig: iteration caps");
}

namespace {

// Shifted projection residual rho * (z - P_K z) at z = G(x) + w / rho.  Both
// the augmented gradient and the multiplier update are built from this very
// expression, which is what makes the gradient identity exact.
Vec shifted_residual(const Problem& problem, const Vec& x, const Vec& w, double rho) {
  Vec z = problem.constraint_value(x);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += w[i] / rho;
  const Vec pz = project(problem.set_k, z, problem.space_y);
  Vec out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = rho * (z[i] - pz[i]);
  return out;
}

}  // namespace

double aug_lagrangian_value(const Problem& problem, const Vec& x, const Vec& w, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("aug_lagrangian_value: rho must be > 0");
  Vec z = problem.constraint_value(x);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += w[i] / rho;
  const double dk = set_distance(problem.set_k, z, problem.space_y);
  const double wn = problem.space_y.norm(w);
  return problem.objective_value(x) + 0.5 * rho * dk * dk - wn * wn / (2.0 * rho);
}

Vec aug_lagrangian_grad(const Problem& problem, const Vec& x, const Vec& w, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("aug_lagrangian_grad: rho must be > 0");
  const Vec lam = shifted_residual(problem, x, w, rho);
  Vec grad = problem.objective_grad(x);
  const Vec pull = problem.jacobian_adjoint(x, lam);
  for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += pull[i];
  return grad;
}

double v_measure(const Problem& problem, const Vec& x, const Vec& lambda, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("v_measure: rho must be > 0");
  const Vec g = problem.constraint_value(x);
  Vec z = g;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += lambda[i] / rho;
  return problem.space_y.dist(g, project(problem.set_k, z, problem.space_y));
}

InnerResult inner_solve(const Problem& problem, const Vec& w, double rho,
                        const Vec& x_start, double tol_inner, int max_inner,
                        const AlmConfig& config) {
  if (!(tol_inner > 0.0)) throw std::invalid_argument("inner_solve: tol must be > 0");
  PgOptions pg;
  pg.tol = tol_inner;
  pg.max_iter = max_inner;
  pg.armijo_sigma = config.armijo_sigma;
  pg.armijo_beta = config.armijo_beta;
  pg.step0 = config.step0;

  PgResult sol = pg_minimize(
      [&](const Vec& p) { return aug_lagrangian_value(problem, p, w, rho); },
      [&](const Vec& p) { return aug_lagrangian_grad(problem, p, w, rho); },
      [&](const Vec& p) { return project(problem.set_c, p, problem.space_x); },
      [&](const Vec& p, const Vec& grad) {
        return normal_cone_dist(problem.set_c, p, grad, problem.space_x);
      },
      problem.space_x, x_start, pg);

  InnerResult out;
  out.x = std::move(sol.x);
  out.residual = sol.residual;
  out.iterations = sol.iterations;
  out.converged = sol.converged;
  return out;
}

Vec multiplier_update(const Problem& problem, const Vec& x_new, const Vec& w, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("multiplier_update: rho must be > 0");
  return shifted_residual(problem, x_new, w, rho);
}

double penalty_update(double v_new, double v_old, double rho, double gamma, double tau, int k) {
  if (k == 0) return rho;  // first iteration is exempt from growth
  if (v_new <= tau * v_old) return rho;
  return gamma * rho;
}

Vec safeguard(const Vec& lambda, double bound, const WeightedSpace& space) {
  if (!(bound > 0.0)) throw std::invalid_argument("safeguard: bound must be > 0");
  const double n = space.norm(lambda);
  if (n <= bound) return lambda;
  return linalg::scaled(lambda, bound / n);
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Kkt: return "kkt";
    case Verdict::AkktTrending: return "akkt-trending";
    case Verdict::InfeasibleStationary: return "infeasible-stationary";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::Kkt: return 0;
    case Verdict::InfeasibleStationary: return 2;
    case Verdict::AkktTrending: return 3;
    case Verdict::Inconclusive: return 4;
  }
  return 4;
}

std::vector<AkktRecord> AlmTrace::records() const {
  std::vector<AkktRecord> recs;
  recs.reserve(rows.size());
  for (const TraceRow& row : rows) recs.push_back(row.record);
  return recs;
}

namespace {

double decay_exponent(const AlmTrace& trace, double (*field)(const TraceRow&)) {
  std::vector<double> vals;
  vals.reserve(trace.rows.size());
  for (const TraceRow& row : trace.rows) vals.push_back(field(row));
  return growth_exponent_fit(vals);
}

Certificate classify(const Problem& problem, const AlmConfig& config, const AlmTrace& trace) {
  Certificate cert;
  // Classify on the last iterate whose subproblem met its tolerance; a
  // trailing failed solve is recorded in the trace but is not a valid
  // inexact-stationary point.
  const TraceRow* final_row = &trace.rows.back();
  for (auto it = trace.rows.rbegin(); it != trace.rows.rend(); ++it) {
    if (it->inner_converged) {
      final_row = &*it;
      break;
    }
  }
  const TraceRow& last = *final_row;
  cert.final_record = last.record;
  cert.eps_decay = decay_exponent(trace, [](const TraceRow& r) { return r.record.eps_residual; });
  cert.r_decay = decay_exponent(trace, [](const TraceRow& r) { return r.record.r_residual; });
  cert.feas_decay = decay_exponent(trace, [](const TraceRow& r) { return r.record.feasibility; });
  {
    std::vector<double> norms;
    for (const TraceRow& r : trace.rows) norms.push_back(r.record.multiplier_norm);
    cert.multiplier_growth = growth_exponent_fit(norms);
  }

  // Stationarity of the squared infeasibility  d_K^2 o G  over C at the
  // final iterate: gradient 2 G'(x)* (G(x) - P_K G(x)).
  {
    const Vec& x = last.record.x;
    const Vec g = problem.constraint_value(x);
    Vec outward = linalg::sub(g, project(problem.set_k, g, problem.space_y));
    Vec grad = problem.jacobian_adjoint(x, outward);
    for (double& v : grad) v *= 2.0;
    cert.infeasibility_stationarity =
        normal_cone_dist(problem.set_c, x, grad, problem.space_x);
  }

  const double eps = last.record.eps_residual;
  const double r = last.record.r_residual;
  const double feas = last.record.feasibility;

  if (eps <= config.outer_tol_kkt && r <= config.outer_tol_kkt &&
      feas <= config.outer_tol_feas) {
    cert.verdict = Verdict::Kkt;
    cert.detail = "all three residuals below outer tolerances";
    return cert;
  }

  const double feas_threshold = std::max(1e-4, 100.0 * config.outer_tol_feas);
  if (feas > feas_threshold &&
      cert.infeasibility_stationarity <= std::max(1e-6, config.outer_tol_kkt)) {
    cert.verdict = Verdict::InfeasibleStationary;
    cert.detail = "stationary point of the squared constraint violation over C";
    return cert;
  }

  // On a converged row the stationarity defect already sits below the inner
  // schedule, so the trend test reduces to the feasibility and gap history.
  const bool residuals_trending = last.inner_converged && feas <= feas_threshold &&
                                  r <= std::max(1e-4, 100.0 * config.outer_tol_kkt);
  if (residuals_trending) {
    cert.verdict = Verdict::AkktTrending;
    cert.detail = "residuals vanish along the trace without meeting the KKT tolerances";
    return cert;
  }

  cert.verdict = Verdict::Inconclusive;
  cert.detail = "no classification applies at the final iterate";
  return cert;
}

}  // namespace

std::pair<Certificate, AlmTrace> alm_solve(const Problem& problem, const AlmConfig& config,
                                           Vec x0, Vec lambda0) {
  config.validate();
  if (x0.size() != problem.dim_x()) throw std::invalid_argument("alm_solve: x0 dimension");
  if (lambda0.size() != problem.dim_y()) throw std::invalid_argument("alm_solve: lambda0 dimension");

  AlmState state;
  state.x = project(problem.set_c, x0, problem.space_x);
  state.lambda = std::move(lambda0);
  state.rho = config.rho0;

  AlmTrace trace;
  bool stop = false;

  for (int k = 0; k < config.max_outer && !stop; ++k) {
    state.k = k;
    state.w = safeguard(state.lambda, config.safeguard_bound, problem.space_y);
    const bool guard_active =
        problem.space_y.norm(state.lambda) > config.safeguard_bound;

    const InnerResult inner = inner_solve(problem, state.w, state.rho, state.x,
                                          config.inner_tol(k + 1), config.max_inner, config);
    state.x = inner.x;
    state.lambda = multiplier_update(problem, state.x, state.w, state.rho);
    const double v_new = v_measure(problem, state.x, state.w, state.rho);

    TraceRow row;
    row.k = k + 1;
    row.rho = state.rho;
    row.v = v_new;
    row.record = akkt_residuals(problem, state.x, state.lambda);
    row.inner_iters = inner.iterations;
    row.inner_residual = inner.residual;
    row.inner_converged = inner.converged;
    row.safeguard_active = guard_active;
    row.w_norm = problem.space_y.norm(state.w);
    trace.rows.push_back(std::move(row));

    const AkktRecord& rec = trace.rows.back().record;
    if (rec.eps_residual <= config.outer_tol_kkt && rec.r_residual <= config.outer_tol_kkt &&
        rec.feasibility <= config.outer_tol_feas) {
      stop = true;  // KKT at tolerances
    }

    // A hard inner failure means the inexactness assumption cannot be met
    // at this penalty level; growing rho further only worsens conditioning.
    if (!inner.converged && inner.residual > 100.0 * config.inner_tol(k + 1)) stop = true;

    state.rho = penalty_update(v_new, state.v_value, state.rho, config.gamma, config.tau, k);
    state.v_value = v_new;
    if (state.rho > config.rho_max) stop = true;  // penalty divergence guard
  }

  Certificate cert = classify(problem, config, trace);
  return {std::move(cert), std::move(trace)};
}

}  // namespace akkt
