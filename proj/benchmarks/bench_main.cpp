#include <benchmark/benchmark.h>

#include <random>

#include "augls/adapt.hpp"
#include "augls/assembly.hpp"
#include "augls/problems.hpp"

using namespace augls;

namespace {

Mesh uniform_mesh(int n, int rounds) {
  Mesh mesh = initial_square_mesh(n);
  for (int r = 0; r < rounds; ++r) {
    std::vector<int> all(mesh.num_triangles());
    for (int t = 0; t < mesh.num_triangles(); ++t) all[t] = t;
    mesh = bisect(mesh, all);
  }
  return mesh;
}

void BM_assemble(benchmark::State& state, Method method, Family family) {
  const Mesh mesh = uniform_mesh(8, static_cast<int>(state.range(0)));
  const ProblemSetup setup = make_kellogg_problem(1, mesh);
  const SpacePair space = build_space_pair(mesh, family);
  MethodConfig cfg;
  cfg.method = method;
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble(mesh, space, setup.data, cfg));
  }
  state.SetItemsProcessed(state.iterations() * mesh.num_triangles());
}

void BM_solve(benchmark::State& state) {
  const Mesh mesh = uniform_mesh(8, static_cast<int>(state.range(0)));
  const ProblemSetup setup = make_kellogg_problem(1, mesh);
  const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
  MethodConfig cfg;
  cfg.method = Method::kAug1;
  const LinearSystem reduced =
      apply_essential_bc(assemble(mesh, space, setup.data, cfg), space, setup.data);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_system(reduced));
  }
  state.SetLabel(std::to_string(reduced.matrix.rows) + " dofs");
}

void BM_indicators(benchmark::State& state) {
  const Mesh mesh = uniform_mesh(8, static_cast<int>(state.range(0)));
  const ProblemSetup setup = make_kellogg_problem(1, mesh);
  const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
  MethodConfig cfg;
  cfg.method = Method::kAug1;
  const SolutionPair sol = solve_discrete(mesh, space, setup.data, cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(indicators(Method::kAug1, mesh, space, setup.data, sol));
  }
  state.SetItemsProcessed(state.iterations() * mesh.num_triangles());
}

void BM_bisect(benchmark::State& state) {
  const Mesh mesh = uniform_mesh(8, static_cast<int>(state.range(0)));
  std::mt19937 rng(17);
  std::vector<int> marked;
  std::uniform_int_distribution<int> pick(0, mesh.num_triangles() - 1);
  for (int i = 0; i < mesh.num_triangles() / 10; ++i) marked.push_back(pick(rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bisect(mesh, marked));
  }
  state.SetItemsProcessed(state.iterations() * mesh.num_triangles());
}

void BM_exact_solution(benchmark::State& state) {
  const ExactSolution exact(preset_params(4));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (auto _ : state) {
    const Vec2 x{dist(rng), dist(rng)};
    if (x.x == 0.0 && x.y == 0.0) continue;
    benchmark::DoNotOptimize(exact.grad_u(x));
    benchmark::DoNotOptimize(exact.sigma(x));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_assemble, aug1_rt0, Method::kAug1, Family::kRt0P1)->Arg(0)->Arg(2);
BENCHMARK_CAPTURE(BM_assemble, aug2_bdm, Method::kAug2, Family::kBdm1P2)->Arg(0)->Arg(2);
BENCHMARK_CAPTURE(BM_assemble, ls_rt0, Method::kLs, Family::kRt0P1)->Arg(0)->Arg(2);
BENCHMARK(BM_solve)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_indicators)->Arg(0)->Arg(2);
BENCHMARK(BM_bisect)->Arg(0)->Arg(2);
BENCHMARK(BM_exact_solution);

BENCHMARK_MAIN();
