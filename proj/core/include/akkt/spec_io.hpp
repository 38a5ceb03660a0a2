#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "akkt/alm.hpp"
#include "akkt/problem.hpp"

namespace akkt {

using nlohmann::json;

/// Problem-spec document: {name, family, seed, params, solver}.  Families:
///   qp-box             quadratic objective, affine equality, box C
///   affine-equality    tracking objective, affine equality, free C
///   nonlinear-equality quadratic objective and quadratic constraint maps
///   l2-box-control     grid tracking objective with two-sided bound cone
///   example35          the singular bounded-control fixture, discretized
struct ProblemSpec {
  std::string name;
  std::string family;
  std::uint64_t seed = 42;
  json params = json::object();
  json solver = json::object();

  static ProblemSpec from_json(const json& doc);
  json to_json() const;  // normalized, defaults filled in
};

ProblemSpec load_spec_file(const std::string& path);

/// Builds and validates the problem (derivative checks are run at random
/// points; mismatch beyond 1e-3 rejects the spec).
Problem build_problem(const ProblemSpec& spec);

/// Solver configuration from the spec's solver block.
AlmConfig build_config(const ProblemSpec& spec);
json config_to_json(const AlmConfig& config);

/// Initial point: solver.x0 / solver.lambda0 when present, zeros otherwise.
std::pair<Vec, Vec> initial_point(const ProblemSpec& spec, const Problem& problem);

/// FNV-1a hash of the normalized spec, used to tie traces to problems.
std::uint64_t spec_hash(const ProblemSpec& spec);

/// Decimal with 17 significant digits; round-trips IEEE doubles exactly.
std::string fmt17(double v);

// ---- trace files: one flat JSON object per line -------------------------

void write_trace_file(const std::string& path, const AlmTrace& trace);
AlmTrace read_trace_file(const std::string& path);
void write_trace_meta(const std::string& path, const ProblemSpec& spec, const AlmConfig& config);

// ---- point documents -----------------------------------------------------

struct PointDoc {
  Vec x;
  Vec lambda;
};
PointDoc load_point_file(const std::string& path);
void write_point_file(const std::string& path, const PointDoc& point);

// ---- run reports -----------------------------------------------------------

struct CheckRow {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct RunReport {
  std::string name;
  Verdict verdict = Verdict::Inconclusive;
  Certificate certificate;
  std::string trace_path;
  double timing_ms = 0.0;
  json config_echo;
  std::vector<CheckRow> checks;
};

json report_to_json(const RunReport& report);
void write_report_file(const std::string& path, const RunReport& report);

json certificate_to_json(const Certificate& cert);

}  // namespace akkt
