#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "akkt/spec_io.hpp"

namespace akkt {

struct CliOverrides {
  std::optional<double> tol_kkt;
  std::optional<double> tol_feas;
  std::optional<int> max_outer;
  std::optional<std::uint64_t> seed;
};

/// solve: run the safeguarded loop on a spec, write trace + metadata +
/// report under out_dir.  Exit code: 0 kkt, 2 infeasible-stationary,
/// 3 akkt-trending, 4 inconclusive, 1 error.
int run_solve(const std::string& spec_path, const std::string& out_dir,
              const CliOverrides& overrides, std::ostream& log);

/// certify: one-shot residual evaluation of a stored point against a spec.
/// Exit 0 iff the point passes the KKT test at tol, 2 otherwise, 1 on error.
int run_certify(const std::string& spec_path, const std::string& point_path, double tol,
                std::ostream& log);

/// examples: named reproduction suites printing expected-vs-actual tables.
/// `which` is one of all|ex35|box-split|affine|gamma|ball.  Exit 0 iff every
/// check passes.
int run_examples(const std::string& which, std::uint64_t seed, std::ostream& log);
std::vector<CheckRow> examples_checks(const std::string& which, std::uint64_t seed);

/// bench: run every spec matching the glob `repeats` times and print one
/// machine-readable row per spec (median wall time, iteration counts, final
/// residuals).  Exit 1 when the glob matches nothing.
int run_bench(const std::string& spec_glob, int repeats, int jobs, std::ostream& log);

/// Expand a trailing-component glob ('*' wildcards) against the filesystem.
std::vector<std::string> expand_glob(const std::string& pattern);

}  // namespace akkt
