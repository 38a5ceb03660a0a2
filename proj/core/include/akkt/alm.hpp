#pragma once

#include <string>
#include <vector>

#include "akkt/residuals.hpp"

namespace akkt {

/// Configuration of the safeguarded augmented Lagrangian loop.  The inner
/// tolerance schedule is tol_k = max(floor, ratio^k), strictly positive and
/// nonincreasing.
struct AlmConfig {
  double rho0 = 10.0;
  double gamma = 10.0;           // penalty growth factor, > 1
  double tau = 0.5;              // sufficient V-decrease factor, in (0,1)
  double safeguard_bound = 1e6;  // radius of the safeguarding ball B
  double inner_tol_floor = 1e-8;
  double inner_tol_ratio = 0.5;
  double outer_tol_kkt = 1e-6;
  double outer_tol_feas = 1e-8;
  int max_outer = 50;
  int max_inner = 20000;
  double armijo_sigma = 1e-4;
  double armijo_beta = 0.5;
  double step0 = 1.0;
  double rho_max = 1e16;  // divergence guard

  double inner_tol(int k) const;
  void validate() const;
};

/// L_rho(x, w) = f(x) + (rho/2) d_K^2(G(x) + w/rho) - ||w||^2 / (2 rho).
double aug_lagrangian_value(const Problem& problem, const Vec& x, const Vec& w, double rho);

/// f'(x) + rho G'(x)*[ G(x) + w/rho - P_K(G(x) + w/rho) ].
Vec aug_lagrangian_grad(const Problem& problem, const Vec& x, const Vec& w, double rho);

/// V(x, lambda, rho) = || G(x) - P_K(G(x) + lambda/rho) ||, the joint
/// feasibility-complementarity measure steering the penalty update.
double v_measure(const Problem& problem, const Vec& x, const Vec& lambda, double rho);

struct InnerResult {
  Vec x;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Projected-gradient minimization of L_rho(., w) over C, terminating when
/// the weighted normal-cone distance of the gradient drops below tol_inner.
InnerResult inner_solve(const Problem& problem, const Vec& w, double rho,
                        const Vec& x_start, double tol_inner, int max_inner,
                        const AlmConfig& config);

/// lambda_new = rho [ G(x) + w/rho - P_K(G(x) + w/rho) ]; by construction
/// the augmented gradient at (x, w, rho) equals L'_x(x, lambda_new).
Vec multiplier_update(const Problem& problem, const Vec& x_new, const Vec& w, double rho);

/// rho stays put at k = 0 or on sufficient V-decrease, otherwise grows by gamma.
double penalty_update(double v_new, double v_old, double rho, double gamma, double tau, int k);

/// Projection of lambda onto the weighted-norm ball of the given radius;
/// the identity whenever the multiplier is already inside.
Vec safeguard(const Vec& lambda, double bound, const WeightedSpace& space);

/// Loop state of the safeguarded method: iterate, multiplier, its bounded
/// surrogate w (always inside the safeguard ball), the current penalty
/// (never below rho0), and the last progress-measure value.
struct AlmState {
  int k = 0;
  Vec x;
  Vec lambda;
  Vec w;
  double rho = 0.0;
  double v_value = 0.0;
};

enum class Verdict { Kkt, AkktTrending, InfeasibleStationary, Inconclusive };

std::string verdict_name(Verdict v);
int verdict_exit_code(Verdict v);

struct TraceRow {
  int k = 0;             // outer iteration, 1-based
  double rho = 0.0;      // penalty used for this iteration
  double v = 0.0;        // V(x^k, w^{k-1}, rho^{k-1})
  AkktRecord record;
  int inner_iters = 0;
  double inner_residual = 0.0;
  bool inner_converged = true;
  bool safeguard_active = false;  // w != lambda (truncated by the bound)
  double w_norm = 0.0;            // ||w^{k-1}||, the safeguarded multiplier
};

struct AlmTrace {
  std::vector<TraceRow> rows;
  std::vector<AkktRecord> records() const;
};

struct Certificate {
  Verdict verdict = Verdict::Inconclusive;
  AkktRecord final_record;
  double eps_decay = 0.0;        // least-squares decay exponents over the trace
  double r_decay = 0.0;
  double feas_decay = 0.0;
  double multiplier_growth = 0.0;
  double infeasibility_stationarity = 0.0;  // normal-cone residual of d_K^2 o G
  std::string detail;
};

/// Full safeguarded loop: warm-started inner solves, multiplier update,
/// V-controlled penalty growth, ball safeguarding, verdict classification.
std::pair<Certificate, AlmTrace> alm_solve(const Problem& problem, const AlmConfig& config,
                                           Vec x0, Vec lambda0);

}  // namespace akkt
