#include "akkt/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <mutex>
#include <random>
#include <thread>

#include "akkt/fixtures.hpp"
#include "akkt/membership.hpp"

namespace akkt {

namespace fs = std::filesystem;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// Trace-derived property checks attached to every solve report: the
// complementarity-gap bound r^k <= ||l^k|| V^k + ||w^k||^2 / rho^k, the
// stationarity bound eps^k <= inner tolerance, and the multiplier-update
// gradient identity.  The safeguarded multiplier of iteration k is
// reconstructed from the stored multiplier of iteration k-1.
std::vector<CheckRow> trace_property_checks(const Problem& problem, const AlmConfig& config,
                                            const AlmTrace& trace, const Vec& lambda0) {
  std::vector<CheckRow> checks;
  double worst_gap = 0.0, worst_eps = 0.0, worst_ident = 0.0;
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const TraceRow& row = trace.rows[i];
    const Vec& lambda_prev = (i == 0) ? lambda0 : trace.rows[i - 1].record.lambda;
    const Vec w = safeguard(lambda_prev, config.safeguard_bound, problem.space_y);

    const double wn = problem.space_y.norm(w);
    const double bound = row.record.multiplier_norm * row.v + wn * wn / row.rho + 1e-10;
    worst_gap = std::max(worst_gap, row.record.r_residual - bound);
    if (row.inner_converged)
      worst_eps = std::max(worst_eps, row.record.eps_residual - config.inner_tol(row.k));

    // Both sides of the gradient identity, recomputed from the stored pair.
    const Vec lhs = lagrangian_grad_x(problem, row.record.x, row.record.lambda);
    const Vec rhs = aug_lagrangian_grad(problem, row.record.x, w, row.rho);
    worst_ident = std::max(worst_ident, problem.space_x.dist(lhs, rhs));
  }
  checks.push_back({"trace-gap-bound-slack", 0.0, worst_gap, 0.0, worst_gap <= 0.0});
  checks.push_back({"trace-eps-vs-schedule", 0.0, worst_eps, 0.0, worst_eps <= 0.0});
  checks.push_back({"trace-gradient-identity", 0.0, worst_ident, 1e-12, worst_ident <= 1e-12});
  return checks;
}

}  // namespace

int run_solve(const std::string& spec_path, const std::string& out_dir,
              const CliOverrides& overrides, std::ostream& log) {
  try {
    ProblemSpec spec = load_spec_file(spec_path);
    if (overrides.seed) spec.seed = *overrides.seed;
    const Problem problem = build_problem(spec);
    AlmConfig config = build_config(spec);
    if (overrides.tol_kkt) config.outer_tol_kkt = *overrides.tol_kkt;
    if (overrides.tol_feas) config.outer_tol_feas = *overrides.tol_feas;
    if (overrides.max_outer) config.max_outer = *overrides.max_outer;

    auto [x0, lambda0] = initial_point(spec, problem);

    const double t0 = now_ms();
    auto [cert, trace] = alm_solve(problem, config, x0, lambda0);
    const double t1 = now_ms();

    fs::create_directories(out_dir);
    const std::string trace_path = (fs::path(out_dir) / (spec.name + ".trace.jsonl")).string();
    const std::string meta_path = (fs::path(out_dir) / (spec.name + ".meta.json")).string();
    const std::string report_path = (fs::path(out_dir) / (spec.name + ".report.json")).string();
    write_trace_file(trace_path, trace);
    write_trace_meta(meta_path, spec, config);

    RunReport report;
    report.name = spec.name;
    report.verdict = cert.verdict;
    report.certificate = cert;
    report.trace_path = trace_path;
    report.timing_ms = t1 - t0;
    report.config_echo = config_to_json(config);
    report.checks = trace_property_checks(problem, config, trace, lambda0);
    write_report_file(report_path, report);

    log << spec.name << ": verdict " << verdict_name(cert.verdict) << " after "
        << trace.rows.size() << " outer iterations; eps "
        << fmt17(cert.final_record.eps_residual) << ", gap "
        << fmt17(cert.final_record.r_residual) << ", feas "
        << fmt17(cert.final_record.feasibility) << ", |lambda| "
        << fmt17(cert.final_record.multiplier_norm) << "\n";
    log << "wrote " << trace_path << ", " << report_path << "\n";
    for (const CheckRow& c : report.checks)
      if (!c.pass) log << "warning: trace property failed: " << c.name << "\n";
    return verdict_exit_code(cert.verdict);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_certify(const std::string& spec_path, const std::string& point_path, double tol,
                std::ostream& log) {
  try {
    const ProblemSpec spec = load_spec_file(spec_path);
    const Problem problem = build_problem(spec);
    PointDoc point = load_point_file(point_path);
    if (point.lambda.empty()) point.lambda.assign(problem.dim_y(), 0.0);
    if (point.x.size() != problem.dim_x() || point.lambda.size() != problem.dim_y()) {
      log << "error: point dimensions disagree with the problem\n";
      return 1;
    }
    const AkktRecord rec = akkt_residuals(problem, point.x, point.lambda);
    const bool kkt = rec.eps_residual <= tol && rec.r_residual <= tol && rec.feasibility <= tol;
    log << "eps_residual    " << fmt17(rec.eps_residual) << "\n"
        << "r_residual      " << fmt17(rec.r_residual) << "\n"
        << "signed_gap      " << fmt17(rec.signed_gap) << "\n"
        << "feasibility     " << fmt17(rec.feasibility) << "\n"
        << "multiplier_norm " << fmt17(rec.multiplier_norm) << "\n"
        << "kkt             " << (kkt ? "yes" : "no") << " (tol " << fmt17(tol) << ")\n";
    return kkt ? 0 : 2;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

namespace {

Problem make_affine_problem(const linalg::Matrix& a, const Vec& b) {
  auto am = std::make_shared<linalg::Matrix>(a);
  auto bv = std::make_shared<Vec>(b);
  Problem prob;
  prob.name = "affine";
  prob.space_x = WeightedSpace::unit(a.cols);
  prob.space_y = WeightedSpace::unit(a.rows);
  prob.set_c = ConvexSet::whole_space(a.cols);
  prob.set_k = ConvexSet::zero(a.rows);
  prob.objective_value = [](const Vec&) { return 0.0; };
  prob.objective_grad = [n = a.cols](const Vec&) { return Vec(n, 0.0); };
  prob.constraint_value = [am, bv](const Vec& x) {
    Vec g = am->apply(x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= (*bv)[i];
    return g;
  };
  prob.jacobian_apply = [am](const Vec&, const Vec& d) { return am->apply(d); };
  prob.jacobian_adjoint = [am](const Vec&, const Vec& lam) { return am->apply_transposed(lam); };
  prob.dense_jacobian = [am](const Vec&) { return *am; };
  return prob;
}

void add_check(std::vector<CheckRow>& rows, const std::string& name, double expected,
               double actual, double tol) {
  rows.push_back({name, expected, actual, tol, std::abs(actual - expected) <= tol});
}

std::vector<CheckRow> checks_ex35() {
  std::vector<CheckRow> rows;
  for (int k : {1, 2, 4, 8, 16}) {
    const SingularPathExact fx = build_example35(k);
    const std::string tag = "k=" + std::to_string(k);
    add_check(rows, "multiplier-norm-" + tag, 0.75 * k, fx.multiplier_norm, 1e-12);
    add_check(rows, "support-gap-" + tag, -0.25 / k, fx.support_gap_zero, 1e-12);
    add_check(rows, "pairing-q-lambda-" + tag, 1.0, fx.pairing_q_lambda, 1e-12);
    add_check(rows, "stationarity-" + tag, 0.0,
              std::abs(fx.stationarity_alpha) + fx.stationarity_u, 1e-12);
  }
  return rows;
}

std::vector<CheckRow> checks_gamma() {
  std::vector<CheckRow> rows;
  using linalg::Matrix;
  add_check(rows, "gamma-identity-3x3", 1.0,
            linalg::reduced_min_modulus(Matrix::identity(3)), 1e-12);
  // gamma equals the smallest nonzero singular value, i.e. the reciprocal
  // of the pseudoinverse norm: for diag(1, eps) that is eps itself.
  for (double eps : {1e-1, 1e-3, 1e-6}) {
    Matrix d = Matrix::diagonal({1.0, eps});
    add_check(rows, "gamma-diag-1-" + fmt17(eps), eps, linalg::reduced_min_modulus(d), 1e-12);
    add_check(rows, "gamma-pinv-reciprocal-" + fmt17(eps), eps,
              1.0 / linalg::operator_norm(Matrix::diagonal({1.0, 1.0 / eps})), 1e-12);
  }
  add_check(rows, "gamma-transpose-symmetry", 0.0,
            std::abs(linalg::reduced_min_modulus(Matrix::diagonal({2.0, 0.5})) -
                     linalg::reduced_min_modulus(Matrix::diagonal({2.0, 0.5}).transposed())),
            1e-12);
  // gap conventions
  linalg::Subspace e1 = linalg::Subspace::span_of(Matrix::diagonal({1.0, 0.0}));
  linalg::Subspace e2 = linalg::Subspace::span_of(Matrix::diagonal({0.0, 1.0}));
  add_check(rows, "gap-self", 0.0, linalg::subspace_gap(e1, e1), 0.0);
  add_check(rows, "gap-trivial-subspace", 0.0,
            linalg::subspace_gap(linalg::Subspace::trivial(2), e2), 0.0);
  add_check(rows, "gap-orthogonal-lines", 1.0, linalg::subspace_gap(e1, e2), 1e-12);
  return rows;
}

std::vector<CheckRow> checks_affine(std::uint64_t seed) {
  std::vector<CheckRow> rows;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  linalg::Matrix a(4, 7);
  for (double& v : a.data) v = gauss(rng);
  Vec xbar(7);
  for (double& v : xbar) v = gauss(rng);
  const Vec b = a.apply(xbar);
  const Problem prob = make_affine_problem(a, b);
  const linalg::Subspace adj_range = linalg::Subspace::range_of(a.transposed());

  const linalg::Subspace kernel = linalg::Subspace::kernel_of(a);
  int member_fail = 0, reject_fail = 0, range_mismatch = 0;
  for (int trial = 0; trial < 20; ++trial) {
    // random feasible point: xbar plus a kernel direction
    Vec x = xbar;
    for (std::size_t j = 0; j < kernel.dim(); ++j) {
      const double t = gauss(rng);
      for (std::size_t i = 0; i < 7; ++i) x[i] += t * kernel.basis(i, j);
    }
    const double r = std::abs(gauss(rng));

    Vec lam(4);
    for (double& v : lam) v = gauss(rng);
    const Vec v_in = a.apply_transposed(lam);  // in the range of the adjoint
    const MembershipWitness win = mset_membership(prob, x, r, v_in);
    if (!win.member) ++member_fail;
    if (linalg::dist_to_subspace(v_in, adj_range) > 1e-8) ++range_mismatch;

    // push the member off the range along the kernel of A
    Vec v_out = v_in;
    Vec off(7, 0.0);
    for (std::size_t j = 0; j < kernel.dim(); ++j)
      for (std::size_t i = 0; i < 7; ++i) off[i] += kernel.basis(i, j);
    const double off_norm = linalg::norm2(off);
    for (std::size_t i = 0; i < 7; ++i) v_out[i] += off[i] / off_norm;
    const MembershipWitness wout = mset_membership(prob, x, r, v_out);
    if (wout.member) ++reject_fail;
    if (linalg::dist_to_subspace(v_out, adj_range) < 0.5) ++range_mismatch;
  }
  add_check(rows, "affine-members-accepted", 0.0, member_fail, 0.0);
  add_check(rows, "affine-off-range-rejected", 0.0, reject_fail, 0.0);
  add_check(rows, "affine-range-projection-agrees", 0.0, range_mismatch, 0.0);
  return rows;
}

std::vector<CheckRow> checks_box_split(std::uint64_t seed) {
  std::vector<CheckRow> rows;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const std::size_t n = 50;
  const WeightedSpace space = WeightedSpace::unit(n);
  int violations = 0, norm_violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Vec u(n), ua(n), ub(n), la(n), lb(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = gauss(rng);
      ua[i] = u[i] - 2.0 * unif(rng);
      ub[i] = ua[i] + 3.0 * unif(rng);
      la[i] = -std::abs(gauss(rng));
      lb[i] = -std::abs(gauss(rng));
    }
    double lhs = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      lhs += -lb[i] * (ub[i] - u[i]) - la[i] * (u[i] - ua[i]);
    const double r = lhs + unif(rng);

    const SplitBoundReport rep = split_bound_check(u, ua, ub, la, lb, r, space);
    if (!rep.preserved) ++violations;

    Vec lambda(n);
    for (std::size_t i = 0; i < n; ++i) lambda[i] = la[i] - lb[i];
    auto [ta, tb] = box_split(lambda);
    const double ln = space.norm(lambda);
    if (space.norm(ta) > ln + 1e-12 || space.norm(tb) > ln + 1e-12) ++norm_violations;
  }
  add_check(rows, "box-split-bound-preserved", 0.0, violations, 0.0);
  add_check(rows, "box-split-norms-dominated", 0.0, norm_violations, 0.0);
  return rows;
}

std::vector<CheckRow> checks_ball() {
  std::vector<CheckRow> rows;
  const std::size_t n = 20;
  const Problem prob = make_ball_fixture_problem(n);
  MembershipOptions opts;
  opts.tol = 1e-8;

  int member_fail = 0;
  double worst_resid = 0.0;
  for (std::size_t k = 1; k <= 18; ++k) {
    const Vec xk = ball_fixture_boundary_point(n, k);
    const MembershipWitness w = mset_membership(prob, xk, 0.0, xk, opts);
    if (!w.member) ++member_fail;
    worst_resid = std::max(worst_resid, w.residual);
  }
  add_check(rows, "ball-boundary-self-normal", 0.0, member_fail, 0.0);
  add_check(rows, "ball-boundary-witness-residual", 0.0, worst_resid, 1e-8);

  MembershipOptions interior_opts;
  interior_opts.tol = 1e-6;
  const Vec xbar = ball_fixture_interior_point(n);
  const MembershipWitness w = mset_membership(prob, xbar, 0.0, xbar, interior_opts);
  add_check(rows, "ball-interior-rejected", 0.0, w.member ? 1.0 : 0.0, 0.0);
  add_check(rows, "ball-interior-residual-is-norm", 1.0 / std::sqrt(2.0), w.residual, 1e-9);
  return rows;
}

}  // namespace

std::vector<CheckRow> examples_checks(const std::string& which, std::uint64_t seed) {
  std::vector<CheckRow> rows;
  auto extend = [&rows](std::vector<CheckRow> more) {
    rows.insert(rows.end(), more.begin(), more.end());
  };
  if (which == "all" || which == "ex35") extend(checks_ex35());
  if (which == "all" || which == "gamma") extend(checks_gamma());
  if (which == "all" || which == "affine") extend(checks_affine(seed));
  if (which == "all" || which == "box-split") extend(checks_box_split(seed));
  if (which == "all" || which == "ball") extend(checks_ball());
  if (rows.empty())
    throw std::invalid_argument("unknown examples suite: " + which +
                                " (expected all|ex35|box-split|affine|gamma|ball)");
  return rows;
}

int run_examples(const std::string& which, std::uint64_t seed, std::ostream& log) {
  try {
    const std::vector<CheckRow> rows = examples_checks(which, seed);
    std::size_t width = 8;
    for (const CheckRow& row : rows) width = std::max(width, row.name.size());
    log << std::left << std::setw(static_cast<int>(width)) << "check"
        << "  expected                 actual                   tol        pass\n";
    bool all_pass = true;
    for (const CheckRow& row : rows) {
      all_pass = all_pass && row.pass;
      log << std::left << std::setw(static_cast<int>(width)) << row.name << "  "
          << std::setw(23) << fmt17(row.expected) << "  " << std::setw(23) << fmt17(row.actual)
          << "  " << std::setw(9) << fmt17(row.tolerance) << "  "
          << (row.pass ? "pass" : "FAIL") << "\n";
    }
    log << (all_pass ? "all checks passed\n" : "some checks FAILED\n");
    return all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  const fs::path p(pattern);
  if (pattern.find('*') == std::string::npos) {
    if (fs::exists(p)) return {pattern};
    return {};
  }
  const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
  const std::string stem = p.filename().string();

  // '*' wildcard match
  auto matches = [](const std::string& pat, const std::string& text) {
    std::size_t pi = 0, ti = 0, star = std::string::npos, star_ti = 0;
    while (ti < text.size()) {
      if (pi < pat.size() && (pat[pi] == text[ti])) {
        ++pi, ++ti;
      } else if (pi < pat.size() && pat[pi] == '*') {
        star = pi++;
        star_ti = ti;
      } else if (star != std::string::npos) {
        pi = star + 1;
        ti = ++star_ti;
      } else {
        return false;
      }
    }
    while (pi < pat.size() && pat[pi] == '*') ++pi;
    return pi == pat.size();
  };

  std::vector<std::string> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (matches(stem, entry.path().filename().string()))
      out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int run_bench(const std::string& spec_glob, int repeats, int jobs, std::ostream& log) {
  const std::vector<std::string> paths = expand_glob(spec_glob);
  if (paths.empty()) {
    log << "error: no specs match " << spec_glob << "\n";
    return 1;
  }
  if (repeats < 1) repeats = 1;
  if (jobs < 1) jobs = 1;

  struct BenchRow {
    std::string name, file, verdict;
    double median_ms = 0.0;
    int outer = 0;
    long inner_total = 0;
    double eps = 0.0, gap = 0.0, feas = 0.0;
    std::string error;
  };
  std::vector<BenchRow> rows(paths.size());

  std::mutex next_mutex;
  std::size_t next = 0;
  auto worker = [&]() {
    for (;;) {
      std::size_t idx;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next >= paths.size()) return;
        idx = next++;
      }
      BenchRow& row = rows[idx];
      row.file = paths[idx];
      try {
        const ProblemSpec spec = load_spec_file(paths[idx]);
        const Problem problem = build_problem(spec);
        const AlmConfig config = build_config(spec);
        row.name = spec.name;
        std::vector<double> times;
        for (int rep = 0; rep < repeats; ++rep) {
          auto [x0, l0] = initial_point(spec, problem);
          const double t0 = now_ms();
          auto [cert, trace] = alm_solve(problem, config, x0, l0);
          times.push_back(now_ms() - t0);
          if (rep == 0) {
            row.verdict = verdict_name(cert.verdict);
            row.outer = static_cast<int>(trace.rows.size());
            for (const TraceRow& tr : trace.rows) row.inner_total += tr.inner_iters;
            row.eps = cert.final_record.eps_residual;
            row.gap = cert.final_record.r_residual;
            row.feas = cert.final_record.feasibility;
          }
        }
        std::sort(times.begin(), times.end());
        row.median_ms = times[times.size() / 2];
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < std::min<int>(jobs, static_cast<int>(paths.size())); ++j)
    pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  log << "name\tfile\trepeats\tmedian_ms\touter\tinner_total\teps\tgap\tfeas\tverdict\n";
  bool any_error = false;
  for (const BenchRow& row : rows) {
    if (!row.error.empty()) {
      any_error = true;
      log << row.name << "\t" << row.file << "\terror: " << row.error << "\n";
      continue;
    }
    log << row.name << "\t" << row.file << "\t" << repeats << "\t" << fmt17(row.median_ms)
        << "\t" << row.outer << "\t" << row.inner_total << "\t" << fmt17(row.eps) << "\t"
        << fmt17(row.gap) << "\t" << fmt17(row.feas) << "\t" << row.verdict << "\n";
  }
  return any_error ? 1 : 0;
}

}  // namespace akkt
