#include <benchmark/benchmark.h>

#include "lswg/assembly.hpp"
#include "lswg/problems.hpp"
#include "lswg/solver.hpp"

using namespace lswg;

namespace {

GridFamily family(std::int64_t f) { return f == 0 ? GridFamily::triangular : GridFamily::polygonal; }

void BM_BuildOperators(benchmark::State& state) {
  const Mesh m = generate_grid(family(state.range(0)), static_cast<int>(state.range(1)), DomainKind::unit_square);
  const WeakSpace space(m, SpaceConfig::make(static_cast<int>(state.range(2))));
  for (auto _ : state) benchmark::DoNotOptimize(build_operators(space));
  state.counters["elements"] = m.num_elements();
}

void BM_Assemble(benchmark::State& state) {
  const Problem p = problem_smooth();
  const Mesh m = generate_grid(family(state.range(0)), static_cast<int>(state.range(1)), DomainKind::unit_square);
  const WeakSpace space(m, SpaceConfig::make(static_cast<int>(state.range(2))));
  const auto ops = build_operators(space);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(space, ops, p.coefficient, p.source));
  state.counters["ndof"] = space.dofs().num_free();
}

void BM_Solve(benchmark::State& state) {
  const Problem p = problem_smooth();
  const Mesh m = generate_grid(GridFamily::triangular, static_cast<int>(state.range(0)), DomainKind::unit_square);
  const WeakSpace space(m, SpaceConfig::make(2));
  const SparseSystem sys = assemble(space, build_operators(space), p.coefficient, p.source);
  SolverOptions opt;
  opt.method = state.range(1) == 0 ? SolverMethod::cholesky : SolverMethod::cg;
  opt.preconditioner = state.range(1) == 2 ? Preconditioner::incomplete_cholesky : Preconditioner::jacobi;
  int iterations = 0;
  for (auto _ : state) {
    const SolveReport r = solve(sys, opt);
    iterations = r.iterations;
    benchmark::DoNotOptimize(r.solution.data());
  }
  state.counters["ndof"] = static_cast<double>(sys.size());
  state.counters["iterations"] = iterations;
}

}  // namespace

// Arguments: family (0 triangular, 1 polygonal), level, degree.
BENCHMARK(BM_BuildOperators)->ArgsProduct({{0, 1}, {3, 5}, {2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Assemble)->ArgsProduct({{0, 1}, {3, 5}, {2, 4}})->Unit(benchmark::kMillisecond);
// Arguments: level, method (0 cholesky, 1 jacobi-cg, 2 ic0-cg).
BENCHMARK(BM_Solve)->ArgsProduct({{3, 4, 5}, {0, 1, 2}})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
