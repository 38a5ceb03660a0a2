// Command-line front end: solve and certify constrained problem specs,
// reproduce the bundled analytic fixtures, and benchmark spec files.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "akkt/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"constrained-optimization toolkit: safeguarded augmented Lagrangian "
               "solver with inexact-KKT certificates"};
  app.require_subcommand(1);

  std::string spec_path, point_path, out_dir = "out", which = "all", glob;
  double tol = 1e-6;
  std::uint64_t seed = 42;
  bool seed_set = false;
  double tol_kkt = 0.0, tol_feas = 0.0;
  int max_outer = 0, repeats = 3, jobs = 1;

  CLI::App* solve = app.add_subcommand("solve", "run the solver on a problem spec");
  solve->add_option("spec", spec_path, "problem spec file")->required();
  solve->add_option("--out", out_dir, "output directory for trace/report files");
  solve->add_option("--tol-kkt", tol_kkt, "override outer KKT tolerance");
  solve->add_option("--tol-feas", tol_feas, "override outer feasibility tolerance");
  solve->add_option("--max-outer", max_outer, "override outer iteration cap");
  solve->add_option("--seed", seed, "override spec seed")->each([&](const std::string&) {
    seed_set = true;
  });

  CLI::App* certify = app.add_subcommand("certify", "evaluate residuals of a stored point");
  certify->add_option("spec", spec_path, "problem spec file")->required();
  certify->add_option("point", point_path, "point file {x: [...], lambda: [...]}")->required();
  certify->add_option("--tol-kkt", tol, "KKT tolerance for the verdict");

  CLI::App* examples = app.add_subcommand("examples", "run the analytic reproduction suites");
  examples->add_option("which", which, "all|ex35|box-split|affine|gamma|ball");
  examples->add_option("--seed", seed, "seed for the randomized suites");

  CLI::App* bench = app.add_subcommand("bench", "time solver runs over a glob of spec files");
  bench->add_option("glob", glob, "spec file glob, e.g. specs/*.json")->required();
  bench->add_option("--repeats", repeats, "runs per spec (median reported)");
  bench->add_option("--jobs", jobs, "concurrent workers");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) {
    akkt::CliOverrides ov;
    if (tol_kkt > 0.0) ov.tol_kkt = tol_kkt;
    if (tol_feas > 0.0) ov.tol_feas = tol_feas;
    if (max_outer > 0) ov.max_outer = max_outer;
    if (seed_set) ov.seed = seed;
    return akkt::run_solve(spec_path, out_dir, ov, std::cout);
  }
  if (certify->parsed()) return akkt::run_certify(spec_path, point_path, tol, std::cout);
  if (examples->parsed()) return akkt::run_examples(which, seed, std::cout);
  if (bench->parsed()) return akkt::run_bench(glob, repeats, jobs, std::cout);
  return 1;
}
