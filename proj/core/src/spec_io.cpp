#include "akkt/spec_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "akkt/fixtures.hpp"

namespace akkt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void schema_error(const std::string& what) {
  throw std::runtime_error("problem spec: " + what);
}

double bound_from_json(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  schema_error("bounds must be numbers or \"inf\"/\"-inf\"");
}

json bound_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return json(v);
}

Vec vec_from_json(const json& v, const char* what) {
  if (!v.is_array()) schema_error(std::string(what) + " must be an array");
  Vec out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) schema_error(std::string(what) + " must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

Vec bounds_from_json(const json& v, const char* what) {
  if (!v.is_array()) schema_error(std::string(what) + " must be an array");
  Vec out;
  out.reserve(v.size());
  for (const json& e : v) out.push_back(bound_from_json(e));
  return out;
}

json bounds_to_json(const Vec& v) {
  json arr = json::array();
  for (double e : v) arr.push_back(bound_to_json(e));
  return arr;
}

// Bound parameter accepting a scalar (uniform bound), a 1-element array
// (broadcast), or a full-length array.
Vec bounds_param(const json& p, const char* key, std::size_t n, double dflt) {
  if (!p.contains(key)) return Vec(n, dflt);
  const json& v = p[key];
  if (v.is_number() || v.is_string()) return Vec(n, bound_from_json(v));
  Vec out = bounds_from_json(v, key);
  if (out.size() == 1 && n > 1) return Vec(n, out[0]);
  if (out.size() != n) schema_error(std::string(key) + " has the wrong length");
  return out;
}

linalg::Matrix matrix_from_json(const json& v, const char* what) {
  if (!v.is_array() || v.empty()) schema_error(std::string(what) + " must be a 2-D array");
  const std::size_t rows = v.size();
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  if (cols == 0) schema_error(std::string(what) + " must be a 2-D array");
  linalg::Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols)
      schema_error(std::string(what) + " rows must have equal length");
    for (std::size_t j = 0; j < cols; ++j) {
      if (!v[i][j].is_number()) schema_error(std::string(what) + " must hold numbers");
      m(i, j) = v[i][j].get<double>();
    }
  }
  return m;
}

json matrix_to_json(const linalg::Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

PiecewiseAnalytic power_sum_from_json(const json& v) {
  if (!v.is_array() || v.empty()) schema_error("power-term list must be a nonempty array");
  std::vector<PiecewiseAnalytic::PowerTerm> terms;
  for (const json& t : v) {
    if (!t.contains("coef") || !t.contains("exponent"))
      schema_error("power terms need coef and exponent");
    terms.push_back({t["coef"].get<double>(), t["exponent"].get<double>()});
  }
  return PiecewiseAnalytic::from_segments({0.0, 1.0}, {terms});
}

}  // namespace

ProblemSpec ProblemSpec::from_json(const json& doc) {
  if (!doc.is_object()) schema_error("document must be an object");
  ProblemSpec spec;
  if (!doc.contains("name") || !doc["name"].is_string()) schema_error("missing string field: name");
  if (!doc.contains("family") || !doc["family"].is_string())
    schema_error("missing string field: family");
  spec.name = doc["name"].get<std::string>();
  spec.family = doc["family"].get<std::string>();
  if (doc.contains("seed")) spec.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("params")) {
    if (!doc["params"].is_object()) schema_error("params must be an object");
    spec.params = doc["params"];
  }
  if (doc.contains("solver")) {
    if (!doc["solver"].is_object()) schema_error("solver must be an object");
    spec.solver = doc["solver"];
  }
  static const char* known[] = {"name", "family", "seed", "params", "solver"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool ok = false;
    for (const char* key : known) ok = ok || it.key() == key;
    if (!ok) schema_error("unknown top-level field: " + it.key());
  }
  return spec;
}

json ProblemSpec::to_json() const {
  // Normalized form: re-emit with family defaults materialized.
  ProblemSpec copy = *this;
  json params = copy.params;
  auto fill = [&params](const char* key, const json& value) {
    if (!params.contains(key)) params[key] = value;
  };

  if (family == "qp-box") {
    const std::size_t n =
        params.contains("A") ? params["A"][0].size() : params.value("n", std::size_t{2});
    fill("n", static_cast<int>(n));
    if (!params.contains("Q")) params["Q"] = matrix_to_json(linalg::Matrix::identity(n));
    fill("c", json(Vec(n, 0.0)));
    fill("lower", bounds_to_json(Vec(n, -kInf)));
    fill("upper", bounds_to_json(Vec(n, kInf)));
  } else if (family == "affine-equality") {
    const std::size_t n = params.contains("A") ? params["A"][0].size() : 2;
    fill("target", json(Vec(n, 0.0)));
  } else if (family == "nonlinear-equality") {
    const std::size_t n = params.value("n", std::size_t{2});
    fill("n", static_cast<int>(n));
    if (!params.contains("Q")) params["Q"] = matrix_to_json(linalg::Matrix::identity(n));
    fill("c", json(Vec(n, 0.0)));
  } else if (family == "l2-box-control") {
    fill("n", 256);
    fill("grading", 1.0);
    fill("lower", 0.0);
    fill("upper", 1.0);
    if (!params.contains("target"))
      params["target"] = json::array({{{"coef", 2.0}, {"exponent", 1.0}}});
  } else if (family == "example35") {
    fill("n", 4096);
    fill("grading", 4.0);
  }

  json solver = copy.solver;
  const AlmConfig defaults{};
  auto sfill = [&solver](const char* key, double value) {
    if (!solver.contains(key)) solver[key] = value;
  };
  sfill("rho0", defaults.rho0);
  sfill("gamma", defaults.gamma);
  sfill("tau", defaults.tau);
  sfill("safeguard_bound", defaults.safeguard_bound);
  sfill("inner_tol_floor", defaults.inner_tol_floor);
  sfill("inner_tol_ratio", defaults.inner_tol_ratio);
  sfill("tol_kkt", defaults.outer_tol_kkt);
  sfill("tol_feas", defaults.outer_tol_feas);
  if (!solver.contains("max_outer")) solver["max_outer"] = defaults.max_outer;
  if (!solver.contains("max_inner")) solver["max_inner"] = defaults.max_inner;

  return json{{"name", name}, {"family", family}, {"seed", seed},
              {"params", params}, {"solver", solver}};
}

ProblemSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("spec parse error in " + path + ": " + e.what());
  }
  return ProblemSpec::from_json(doc);
}

namespace {

Problem build_qp_box(const ProblemSpec& spec) {
  const json& p = spec.params;
  if (!p.contains("A") || !p.contains("b")) schema_error("qp-box needs A and b");
  auto a = std::make_shared<linalg::Matrix>(matrix_from_json(p["A"], "A"));
  auto b = std::make_shared<Vec>(vec_from_json(p["b"], "b"));
  const std::size_t n = a->cols, m = a->rows;
  if (b->size() != m) schema_error("qp-box: A and b sizes disagree");

  auto q = std::make_shared<linalg::Matrix>(
      p.contains("Q") ? matrix_from_json(p["Q"], "Q") : linalg::Matrix::identity(n));
  auto c = std::make_shared<Vec>(p.contains("c") ? vec_from_json(p["c"], "c") : Vec(n, 0.0));
  if (q->rows != n || q->cols != n || c->size() != n) schema_error("qp-box: Q/c sizes disagree");

  Vec lower = bounds_param(p, "lower", n, -kInf);
  Vec upper = bounds_param(p, "upper", n, kInf);

  Problem prob;
  prob.name = spec.name;
  prob.space_x = WeightedSpace::unit(n);
  prob.space_y = WeightedSpace::unit(m);
  prob.set_c = ConvexSet::box(std::move(lower), std::move(upper));
  prob.set_k = ConvexSet::zero(m);
  prob.objective_value = [q, c](const Vec& x) {
    return 0.5 * linalg::dot(x, q->apply(x)) + linalg::dot(*c, x);
  };
  prob.objective_grad = [q, c](const Vec& x) {
    Vec g = q->apply(x);
    // symmetrize so an asymmetric Q in the spec still gives the exact gradient
    const Vec gt = q->apply_transposed(x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = 0.5 * (g[i] + gt[i]) + (*c)[i];
    return g;
  };
  prob.constraint_value = [a, b](const Vec& x) {
    Vec g = a->apply(x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= (*b)[i];
    return g;
  };
  prob.jacobian_apply = [a](const Vec&, const Vec& d) { return a->apply(d); };
  prob.jacobian_adjoint = [a](const Vec&, const Vec& lam) { return a->apply_transposed(lam); };
  prob.dense_jacobian = [a](const Vec&) { return *a; };
  return prob;
}

Problem build_affine_equality(const ProblemSpec& spec) {
  const json& p = spec.params;
  if (!p.contains("A") || !p.contains("b")) schema_error("affine-equality needs A and b");
  auto a = std::make_shared<linalg::Matrix>(matrix_from_json(p["A"], "A"));
  auto b = std::make_shared<Vec>(vec_from_json(p["b"], "b"));
  const std::size_t n = a->cols, m = a->rows;
  if (b->size() != m) schema_error("affine-equality: A and b sizes disagree");
  auto target = std::make_shared<Vec>(
      p.contains("target") ? vec_from_json(p["target"], "target") : Vec(n, 0.0));
  if (target->size() != n) schema_error("affine-equality: target size disagrees");

  Problem prob;
  prob.name = spec.name;
  prob.space_x = WeightedSpace::unit(n);
  prob.space_y = WeightedSpace::unit(m);
  prob.set_c = ConvexSet::whole_space(n);
  prob.set_k = ConvexSet::zero(m);
  prob.objective_value = [target](const Vec& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - (*target)[i];
      s += d * d;
    }
    return 0.5 * s;
  };
  prob.objective_grad = [target](const Vec& x) {
    Vec g = x;
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= (*target)[i];
    return g;
  };
  prob.constraint_value = [a, b](const Vec& x) {
    Vec g = a->apply(x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= (*b)[i];
    return g;
  };
  prob.jacobian_apply = [a](const Vec&, const Vec& d) { return a->apply(d); };
  prob.jacobian_adjoint = [a](const Vec&, const Vec& lam) { return a->apply_transposed(lam); };
  prob.dense_jacobian = [a](const Vec&) { return *a; };
  return prob;
}

Problem build_nonlinear_equality(const ProblemSpec& spec) {
  const json& p = spec.params;
  if (!p.contains("n") || !p.contains("constraints"))
    schema_error("nonlinear-equality needs n and constraints");
  const std::size_t n = p["n"].get<std::size_t>();

  auto q = std::make_shared<linalg::Matrix>(
      p.contains("Q") ? matrix_from_json(p["Q"], "Q") : linalg::Matrix::identity(n));
  auto c = std::make_shared<Vec>(p.contains("c") ? vec_from_json(p["c"], "c") : Vec(n, 0.0));
  if (q->rows != n || q->cols != n || c->size() != n)
    schema_error("nonlinear-equality: Q/c sizes disagree");

  struct QuadMap {
    linalg::Matrix b;  // symmetric part is what matters
    Vec a;
    double offset;
  };
  auto maps = std::make_shared<std::vector<QuadMap>>();
  for (const json& entry : p["constraints"]) {
    QuadMap qm;
    qm.b = entry.contains("B") ? matrix_from_json(entry["B"], "B") : linalg::Matrix(n, n);
    qm.a = entry.contains("a") ? vec_from_json(entry["a"], "a") : Vec(n, 0.0);
    qm.offset = entry.value("offset", 0.0);
    if (qm.b.rows != n || qm.b.cols != n || qm.a.size() != n)
      schema_error("nonlinear-equality: constraint sizes disagree");
    maps->push_back(std::move(qm));
  }
  const std::size_t m = maps->size();
  if (m == 0) schema_error("nonlinear-equality: needs at least one constraint");

  auto grad_row = [maps](std::size_t i, const Vec& x) {
    const auto& qm = (*maps)[i];
    Vec g = qm.b.apply(x);
    const Vec gt = qm.b.apply_transposed(x);
    for (std::size_t j = 0; j < g.size(); ++j) g[j] = 0.5 * (g[j] + gt[j]) + qm.a[j];
    return g;
  };

  Problem prob;
  prob.name = spec.name;
  prob.space_x = WeightedSpace::unit(n);
  prob.space_y = WeightedSpace::unit(m);
  prob.set_c = ConvexSet::whole_space(n);
  if (p.contains("lower") || p.contains("upper")) {
    Vec lower = bounds_param(p, "lower", n, -kInf);
    Vec upper = bounds_param(p, "upper", n, kInf);
    prob.set_c = ConvexSet::box(std::move(lower), std::move(upper));
  }
  prob.set_k = ConvexSet::zero(m);
  prob.objective_value = [q, c](const Vec& x) {
    return 0.5 * linalg::dot(x, q->apply(x)) + linalg::dot(*c, x);
  };
  prob.objective_grad = [q, c](const Vec& x) {
    Vec g = q->apply(x);
    const Vec gt = q->apply_transposed(x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = 0.5 * (g[i] + gt[i]) + (*c)[i];
    return g;
  };
  prob.constraint_value = [maps, m](const Vec& x) {
    Vec g(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& qm = (*maps)[i];
      g[i] = 0.5 * linalg::dot(x, qm.b.apply(x)) + linalg::dot(qm.a, x) + qm.offset;
    }
    return g;
  };
  prob.jacobian_apply = [grad_row, m](const Vec& x, const Vec& d) {
    Vec g(m);
    for (std::size_t i = 0; i < m; ++i) g[i] = linalg::dot(grad_row(i, x), d);
    return g;
  };
  prob.jacobian_adjoint = [grad_row, m](const Vec& x, const Vec& lam) {
    Vec g(x.size(), 0.0);
    for (std::size_t i = 0; i < m; ++i) linalg::axpy(lam[i], grad_row(i, x), g);
    return g;
  };
  prob.dense_jacobian = [grad_row, m](const Vec& x) {
    linalg::Matrix j(m, x.size());
    for (std::size_t i = 0; i < m; ++i) {
      const Vec row = grad_row(i, x);
      for (std::size_t k = 0; k < row.size(); ++k) j(i, k) = row[k];
    }
    return j;
  };
  return prob;
}

Problem build_l2_box_control(const ProblemSpec& spec) {
  const json& p = spec.params;
  const std::size_t n = p.value("n", 256);
  const double grading = p.value("grading", 1.0);
  const double lower = p.value("lower", 0.0);
  const double upper = p.value("upper", 1.0);
  if (!(lower <= upper)) schema_error("l2-box-control: lower must be <= upper");

  const GridDiscretization grid = discretize_interval(n, grading);
  PiecewiseAnalytic target = p.contains("target")
                                 ? power_sum_from_json(p["target"])
                                 : PiecewiseAnalytic::power(2.0, 1.0);
  auto ud = std::make_shared<Vec>(target.cell_averages(grid));
  auto w = std::make_shared<Vec>(grid.weights);

  Problem prob;
  prob.name = spec.name;
  prob.space_x = WeightedSpace(grid.weights);
  {
    Vec wy(2 * n);
    for (std::size_t i = 0; i < n; ++i) wy[i] = wy[n + i] = grid.weights[i];
    prob.space_y = WeightedSpace(std::move(wy));
  }
  prob.set_c = ConvexSet::whole_space(n);
  prob.set_k = ConvexSet::product({ConvexSet::nonneg_cone(n), ConvexSet::nonneg_cone(n)});
  prob.objective_value = [ud, w](const Vec& u) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double d = u[i] - (*ud)[i];
      s += (*w)[i] * d * d;
    }
    return 0.5 * s;
  };
  prob.objective_grad = [ud](const Vec& u) {
    Vec g = u;
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= (*ud)[i];
    return g;
  };
  // G(u) = (upper - u, u - lower), bound residuals into the nonnegative cone.
  prob.constraint_value = [n, lower, upper](const Vec& u) {
    Vec g(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = upper - u[i];
      g[n + i] = u[i] - lower;
    }
    return g;
  };
  prob.jacobian_apply = [n](const Vec&, const Vec& d) {
    Vec g(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = -d[i];
      g[n + i] = d[i];
    }
    return g;
  };
  prob.jacobian_adjoint = [n](const Vec&, const Vec& lam) {
    Vec g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = lam[n + i] - lam[i];
    return g;
  };
  prob.dense_jacobian = [n](const Vec&) {
    linalg::Matrix j(2 * n, n);
    for (std::size_t i = 0; i < n; ++i) {
      j(i, i) = -1.0;
      j(n + i, i) = 1.0;
    }
    return j;
  };
  return prob;
}

}  // namespace

Problem build_problem(const ProblemSpec& spec) {
  Problem prob;
  if (spec.family == "qp-box") {
    prob = build_qp_box(spec);
  } else if (spec.family == "affine-equality") {
    prob = build_affine_equality(spec);
  } else if (spec.family == "nonlinear-equality") {
    prob = build_nonlinear_equality(spec);
  } else if (spec.family == "l2-box-control") {
    prob = build_l2_box_control(spec);
  } else if (spec.family == "example35") {
    const std::size_t n = spec.params.value("n", 4096);
    const double grading = spec.params.value("grading", 4.0);
    prob = make_example35_problem(discretize_interval(n, grading));
    prob.name = spec.name;
  } else {
    schema_error("unknown family: " + spec.family);
  }

  // Derivative validation at a few seeded random points.
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    Vec x(prob.dim_x());
    for (double& v : x) v = 0.3 * gauss(rng);
    const FdCheckReport rep = fd_check(prob, x, 1e-6, spec.seed + trial);
    if (rep.max_error() > 1e-3)
      throw std::runtime_error("problem spec rejected: derivative check failed (error " +
                               std::to_string(rep.max_error()) + ")");
  }
  return prob;
}

AlmConfig build_config(const ProblemSpec& spec) {
  AlmConfig cfg;
  const json& s = spec.solver;
  if (s.contains("rho0")) cfg.rho0 = s["rho0"].get<double>();
  if (s.contains("gamma")) cfg.gamma = s["gamma"].get<double>();
  if (s.contains("tau")) cfg.tau = s["tau"].get<double>();
  if (s.contains("safeguard_bound")) cfg.safeguard_bound = s["safeguard_bound"].get<double>();
  if (s.contains("inner_tol_floor")) cfg.inner_tol_floor = s["inner_tol_floor"].get<double>();
  if (s.contains("inner_tol_ratio")) cfg.inner_tol_ratio = s["inner_tol_ratio"].get<double>();
  if (s.contains("tol_kkt")) cfg.outer_tol_kkt = s["tol_kkt"].get<double>();
  if (s.contains("tol_feas")) cfg.outer_tol_feas = s["tol_feas"].get<double>();
  if (s.contains("max_outer")) cfg.max_outer = s["max_outer"].get<int>();
  if (s.contains("max_inner")) cfg.max_inner = s["max_inner"].get<int>();
  if (s.contains("armijo_sigma")) cfg.armijo_sigma = s["armijo_sigma"].get<double>();
  if (s.contains("armijo_beta")) cfg.armijo_beta = s["armijo_beta"].get<double>();
  if (s.contains("step0")) cfg.step0 = s["step0"].get<double>();
  cfg.validate();
  return cfg;
}

json config_to_json(const AlmConfig& c) {
  return json{{"rho0", c.rho0},
              {"gamma", c.gamma},
              {"tau", c.tau},
              {"safeguard_bound", c.safeguard_bound},
              {"inner_tol_floor", c.inner_tol_floor},
              {"inner_tol_ratio", c.inner_tol_ratio},
              {"tol_kkt", c.outer_tol_kkt},
              {"tol_feas", c.outer_tol_feas},
              {"max_outer", c.max_outer},
              {"max_inner", c.max_inner},
              {"armijo_sigma", c.armijo_sigma},
              {"armijo_beta", c.armijo_beta},
              {"step0", c.step0}};
}

std::pair<Vec, Vec> initial_point(const ProblemSpec& spec, const Problem& problem) {
  Vec x0(problem.dim_x(), 0.0);
  Vec l0(problem.dim_y(), 0.0);
  if (spec.solver.contains("x0")) x0 = vec_from_json(spec.solver["x0"], "x0");
  if (spec.solver.contains("lambda0")) l0 = vec_from_json(spec.solver["lambda0"], "lambda0");
  if (x0.size() != problem.dim_x() || l0.size() != problem.dim_y())
    schema_error("initial point dimensions disagree with the problem");
  return {x0, l0};
}

std::uint64_t spec_hash(const ProblemSpec& spec) {
  const std::string dump = spec.to_json().dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fmt17(double v) {
  if (std::isinf(v)) return v > 0 ? "null" : "null";  // JSON has no infinity
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void append_vec17(std::string& out, const Vec& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt17(v[i]);
  }
  out += ']';
}

}  // namespace

void write_trace_file(const std::string& path, const AlmTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
  for (const TraceRow& row : trace.rows) {
    std::string line = "{";
    line += "\"k\":" + std::to_string(row.k);
    line += ",\"rho\":" + fmt17(row.rho);
    line += ",\"v\":" + fmt17(row.v);
    line += ",\"eps_residual\":" + fmt17(row.record.eps_residual);
    line += ",\"r_residual\":" + fmt17(row.record.r_residual);
    line += ",\"feasibility\":" + fmt17(row.record.feasibility);
    line += ",\"multiplier_norm\":" + fmt17(row.record.multiplier_norm);
    line += ",\"inner_iters\":" + std::to_string(row.inner_iters);
    line += std::string(",\"safeguard_active\":") + (row.safeguard_active ? "true" : "false");
    line += ",\"x\":";
    append_vec17(line, row.record.x);
    line += ",\"lambda\":";
    append_vec17(line, row.record.lambda);
    line += "}\n";
    out << line;
  }
}

AlmTrace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  AlmTrace trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json row = json::parse(line);
    TraceRow tr;
    tr.k = row["k"].get<int>();
    tr.rho = row["rho"].get<double>();
    tr.v = row["v"].get<double>();
    tr.record.eps_residual =
        row["eps_residual"].is_null() ? kInf : row["eps_residual"].get<double>();
    tr.record.r_residual = row["r_residual"].is_null() ? kInf : row["r_residual"].get<double>();
    tr.record.feasibility = row["feasibility"].get<double>();
    tr.record.multiplier_norm = row["multiplier_norm"].get<double>();
    tr.inner_iters = row["inner_iters"].get<int>();
    tr.safeguard_active = row["safeguard_active"].get<bool>();
    tr.record.x = vec_from_json(row["x"], "x");
    tr.record.lambda = vec_from_json(row["lambda"], "lambda");
    trace.rows.push_back(std::move(tr));
  }
  return trace;
}

void write_trace_meta(const std::string& path, const ProblemSpec& spec, const AlmConfig& config) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, spec_hash(spec));
  const json meta{{"name", spec.name},
                  {"problem_hash", hash},
                  {"config", config_to_json(config)},
                  {"spec", spec.to_json()}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace metadata for writing: " + path);
  out << meta.dump(2) << "\n";
}

PointDoc load_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open point file: " + path);
  json doc;
  in >> doc;
  PointDoc point;
  if (!doc.contains("x")) throw std::runtime_error("point file needs field x");
  point.x = vec_from_json(doc["x"], "x");
  if (doc.contains("lambda")) point.lambda = vec_from_json(doc["lambda"], "lambda");
  return point;
}

void write_point_file(const std::string& path, const PointDoc& point) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open point file for writing: " + path);
  std::string body = "{\"x\":";
  append_vec17(body, point.x);
  body += ",\"lambda\":";
  append_vec17(body, point.lambda);
  body += "}\n";
  out << body;
}

json certificate_to_json(const Certificate& cert) {
  const AkktRecord& rec = cert.final_record;
  auto num = [](double v) { return std::isinf(v) ? json() : json(v); };
  return json{{"verdict", verdict_name(cert.verdict)},
              {"eps_residual", num(rec.eps_residual)},
              {"r_residual", num(rec.r_residual)},
              {"signed_gap", num(rec.signed_gap)},
              {"feasibility", rec.feasibility},
              {"multiplier_norm", rec.multiplier_norm},
              {"eps_decay", cert.eps_decay},
              {"r_decay", cert.r_decay},
              {"feas_decay", cert.feas_decay},
              {"multiplier_growth", cert.multiplier_growth},
              {"infeasibility_stationarity", num(cert.infeasibility_stationarity)},
              {"detail", cert.detail}};
}

json report_to_json(const RunReport& report) {
  json checks = json::array();
  for (const CheckRow& row : report.checks) {
    checks.push_back(json{{"name", row.name},
                          {"expected", row.expected},
                          {"actual", row.actual},
                          {"tolerance", row.tolerance},
                          {"pass", row.pass}});
  }
  return json{{"name", report.name},
              {"verdict", verdict_name(report.verdict)},
              {"exit_code", verdict_exit_code(report.verdict)},
              {"certificate", certificate_to_json(report.certificate)},
              {"trace", report.trace_path},
              {"timing_ms", report.timing_ms},
              {"config", report.config_echo},
              {"checks", checks}};
}

void write_report_file(const std::string& path, const RunReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open report file for writing: " + path);
  out << report_to_json(report).dump(2) << "\n";
}

}  // namespace akkt
