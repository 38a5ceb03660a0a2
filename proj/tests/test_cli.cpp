#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "akkt/fixtures.hpp"
#include "akkt/runner.hpp"

using namespace akkt;
namespace fs = std::filesystem;

namespace {

const std::string kSpecsDir = AKKT_SPECS_DIR;
const std::string kCliPath = AKKT_CLI_PATH;

fs::path temp_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("akkt_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("solve command writes trace, metadata, and report with the right exit code") {
  const fs::path out = temp_dir("solve");
  std::ostringstream log;
  const int code = run_solve(kSpecsDir + "/qp2.json", out.string(), {}, log);
  CHECK(code == 0);
  CHECK(fs::exists(out / "qp2.trace.jsonl"));
  CHECK(fs::exists(out / "qp2.meta.json"));
  CHECK(fs::exists(out / "qp2.report.json"));

  SUBCASE("report carries the verdict and passing trace checks") {
    std::ifstream in(out / "qp2.report.json");
    json report;
    in >> report;
    CHECK(report["verdict"] == "kkt");
    CHECK(report["exit_code"] == 0);
    REQUIRE(report["checks"].is_array());
    for (const json& check : report["checks"]) CHECK(check["pass"] == true);
  }

  SUBCASE("metadata ties the trace to the spec hash") {
    std::ifstream in(out / "qp2.meta.json");
    json meta;
    in >> meta;
    CHECK(meta["name"] == "qp2");
    CHECK(meta["problem_hash"].is_string());
    CHECK(meta["config"]["rho0"] == 10.0);
  }
}

TEST_CASE("exit codes per verdict") {
  const fs::path out = temp_dir("codes");
  std::ostringstream log;
  CHECK(run_solve(kSpecsDir + "/infeasible1d.json", out.string(), {}, log) == 2);
  CHECK(run_solve(kSpecsDir + "/nonlinear2.json", out.string(), {}, log) == 0);
  CHECK(run_solve("/nonexistent/spec.json", out.string(), {}, log) == 1);
}

TEST_CASE("trace files round-trip and residuals recompute") {
  const fs::path out = temp_dir("roundtrip");
  std::ostringstream log;
  REQUIRE(run_solve(kSpecsDir + "/qp2.json", out.string(), {}, log) == 0);

  const ProblemSpec spec = load_spec_file(kSpecsDir + "/qp2.json");
  const Problem problem = build_problem(spec);
  const AlmTrace trace = read_trace_file((out / "qp2.trace.jsonl").string());
  REQUIRE(!trace.rows.empty());
  for (const TraceRow& row : trace.rows) {
    const AkktRecord rec = akkt_residuals(problem, row.record.x, row.record.lambda);
    CHECK(std::abs(rec.eps_residual - row.record.eps_residual) <= 1e-12);
    CHECK(std::abs(rec.r_residual - row.record.r_residual) <= 1e-12);
    CHECK(std::abs(rec.feasibility - row.record.feasibility) <= 1e-12);
    CHECK(std::abs(rec.multiplier_norm - row.record.multiplier_norm) <= 1e-12);
  }
}

TEST_CASE("non-finite residuals serialize as null and read back as infinity") {
  const fs::path out = temp_dir("inf");
  AlmTrace trace;
  TraceRow row;
  row.k = 1;
  row.rho = 10.0;
  row.v = 0.5;
  row.record.x = {0.25};
  row.record.lambda = {1.5};
  row.record.eps_residual = std::numeric_limits<double>::infinity();
  row.record.r_residual = std::numeric_limits<double>::infinity();
  row.record.feasibility = 2.0;
  row.record.multiplier_norm = 1.5;
  trace.rows.push_back(row);
  const std::string path = (out / "inf.trace.jsonl").string();
  write_trace_file(path, trace);
  const AlmTrace back = read_trace_file(path);
  REQUIRE(back.rows.size() == 1);
  CHECK(std::isinf(back.rows[0].record.eps_residual));
  CHECK(std::isinf(back.rows[0].record.r_residual));
  CHECK(back.rows[0].record.x[0] == 0.25);
}

TEST_CASE("certify command") {
  const fs::path out = temp_dir("certify");
  std::ostringstream log;

  SUBCASE("hand KKT point passes") {
    const fs::path point = out / "good.json";
    write_point_file(point.string(), {{0.5, 0.5}, {-0.5}});
    CHECK(run_certify(kSpecsDir + "/qp2.json", point.string(), 1e-8, log) == 0);
  }
  SUBCASE("zero multiplier at a nonstationary point fails with the gradient norm") {
    const fs::path point = out / "bad.json";
    write_point_file(point.string(), {{0.2, 0.8}, {0.0}});
    std::ostringstream text;
    CHECK(run_certify(kSpecsDir + "/qp2.json", point.string(), 1e-8, text) == 2);
    CHECK(text.str().find("eps_residual") != std::string::npos);
  }
  SUBCASE("a point file without a multiplier defaults it to zero") {
    const fs::path point = out / "primal_only.json";
    std::ofstream file(point);
    file << "{\"x\": [0.2, 0.8]}\n";
    file.close();
    CHECK(run_certify(kSpecsDir + "/qp2.json", point.string(), 1e-8, log) == 2);
  }
  SUBCASE("dimension mismatch errors out") {
    const fs::path point = out / "wrong.json";
    write_point_file(point.string(), {{0.5, 0.5, 0.5}, {-0.5}});
    CHECK(run_certify(kSpecsDir + "/qp2.json", point.string(), 1e-8, log) == 1);
  }
  SUBCASE("singular-path pair is stationary but not feasible, hence not certified") {
    const ProblemSpec spec = load_spec_file(kSpecsDir + "/example35.json");
    const GridDiscretization grid =
        discretize_interval(spec.params["n"].get<std::size_t>(), spec.params["grading"]);
    const DiscretePair pair = discretize_example35_pair(2, grid);
    const fs::path point = out / "ex35_k2.json";
    write_point_file(point.string(), {pair.x, pair.lambda});
    std::ostringstream text;
    CHECK(run_certify(kSpecsDir + "/example35.json", point.string(), 1e-6, text) == 2);
    // the printed stationarity defect is numerically zero even though the
    // verdict fails on feasibility
    CHECK(text.str().find("eps_residual    0") != std::string::npos);
  }
}

TEST_CASE("examples command is deterministic across runs") {
  std::ostringstream run1, run2;
  CHECK(run_examples("all", 42, run1) == 0);
  CHECK(run_examples("all", 42, run2) == 0);
  CHECK(run1.str() == run2.str());

  SUBCASE("unknown suite errors") {
    std::ostringstream log;
    CHECK(run_examples("nonsense", 42, log) == 1);
  }
}

TEST_CASE("bench command") {
  std::ostringstream log;
  SUBCASE("empty glob exits 1") {
    CHECK(run_bench(kSpecsDir + "/zzz*.json", 1, 1, log) == 1);
  }
  SUBCASE("glob expansion finds the shipped specs") {
    const std::vector<std::string> paths = expand_glob(kSpecsDir + "/qp*.json");
    CHECK(paths.size() == 2);  // qp2 and qp100
  }
  SUBCASE("runs and reports a table") {
    std::ostringstream table;
    CHECK(run_bench(kSpecsDir + "/qp2.json", 2, 1, table) == 0);
    CHECK(table.str().find("median_ms") != std::string::npos);
    CHECK(table.str().find("qp2") != std::string::npos);
  }
  SUBCASE("concurrent workers cover independent specs") {
    std::ostringstream table;
    CHECK(run_bench(kSpecsDir + "/qp*.json", 1, 2, table) == 0);
    CHECK(table.str().find("qp100") != std::string::npos);
  }
}

TEST_CASE("installed binary smoke test") {
  const fs::path out = temp_dir("binary");
  const std::string cmd = kCliPath + " solve " + kSpecsDir + "/qp2.json --out " +
                          out.string() + " > " + (out / "stdout.txt").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(fs::exists(out / "qp2.report.json"));

  const std::string examples_cmd =
      kCliPath + " examples ex35 > " + (out / "examples.txt").string() + " 2>&1";
  CHECK(WEXITSTATUS(std::system(examples_cmd.c_str())) == 0);
}
