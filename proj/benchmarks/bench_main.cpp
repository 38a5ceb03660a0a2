// Microbenchmarks for the dense kernels and solver layers.

#include <benchmark/benchmark.h>

#include <random>

#include "akkt/alm.hpp"
#include "akkt/fixtures.hpp"
#include "akkt/membership.hpp"
#include "akkt/spec_io.hpp"

namespace {

using namespace akkt;

linalg::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  linalg::Matrix m(rows, cols);
  for (double& v : m.data) v = gauss(rng);
  return m;
}

void BM_svd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const linalg::Matrix a = random_matrix(n, n, 42);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::svd(a));
}
BENCHMARK(BM_svd)->Arg(8)->Arg(20)->Arg(64);

void BM_reduced_min_modulus(benchmark::State& state) {
  const linalg::Matrix a = random_matrix(20, 16, 7);
  for (auto _ : state) benchmark::DoNotOptimize(linalg::reduced_min_modulus(a));
}
BENCHMARK(BM_reduced_min_modulus);

void BM_box_projection(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ConvexSet box = ConvexSet::box(Vec(n, -1.0), Vec(n, 1.0));
  const WeightedSpace space = WeightedSpace::unit(n);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss(0.0, 2.0);
  Vec x(n);
  for (double& v : x) v = gauss(rng);
  for (auto _ : state) benchmark::DoNotOptimize(project(box, x, space));
}
BENCHMARK(BM_box_projection)->Arg(256)->Arg(4096);

void BM_alm_qp2(benchmark::State& state) {
  ProblemSpec spec;
  spec.name = "qp2";
  spec.family = "qp-box";
  spec.params = {{"A", {{1.0, 1.0}}},
                 {"b", {1.0}},
                 {"lower", {-10.0, -10.0}},
                 {"upper", {10.0, 10.0}}};
  const Problem problem = build_problem(spec);
  for (auto _ : state) benchmark::DoNotOptimize(alm_solve(problem, {}, {0.0, 0.0}, {0.0}));
}
BENCHMARK(BM_alm_qp2);

void BM_membership_small(benchmark::State& state) {
  ProblemSpec spec;
  spec.name = "aff";
  spec.family = "affine-equality";
  spec.params = {{"A", {{1.0, 0.0, 2.0, -1.0}, {0.0, 1.0, 1.0, 0.0}}}, {"b", {0.0, 0.0}}};
  const Problem problem = build_problem(spec);
  const Vec v = problem.jacobian_adjoint(Vec(4, 0.0), {1.0, -2.0});
  for (auto _ : state)
    benchmark::DoNotOptimize(mset_membership(problem, Vec(4, 0.0), 0.0, v));
}
BENCHMARK(BM_membership_small);

void BM_exact_fixture(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_example35(8));
}
BENCHMARK(BM_exact_fixture);

void BM_discretize_fixture(benchmark::State& state) {
  const GridDiscretization grid = discretize_interval(4096, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(discretize_example35_pair(8, grid));
}
BENCHMARK(BM_discretize_fixture);

}  // namespace

BENCHMARK_MAIN();
