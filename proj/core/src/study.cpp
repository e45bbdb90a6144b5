#include "lswg/study.hpp"

#include <chrono>

namespace lswg {

Discretization Discretization::build(Mesh mesh, const SpaceConfig& config) {
  Discretization d;
  d.mesh = std::make_unique<const Mesh>(std::move(mesh));
  d.space = std::make_unique<const WeakSpace>(*d.mesh, config);
  d.ops = build_operators(*d.space);
  return d;
}

LevelRun run_level(const Problem& problem, GridFamily family, int level, const SpaceConfig& config,
                   const LevelOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  LevelRun run;
  run.level = level;
  Mesh mesh = generate_grid(family, level, problem.domain);
  check_alignment(mesh, problem.coefficient);
  run.disc = Discretization::build(std::move(mesh), config);
  const WeakSpace& space = *run.disc.space;
  run.system = assemble(space, run.disc.ops, problem.coefficient, problem.source);
  run.solve = solve(run.system, options.solver);
  run.uh = std::make_unique<WeakFunction>(WeakFunction::from_free(space.dofs(), run.solve.solution));
  run.l2_error = l2_error(problem.exact, *run.uh, space);
  run.h2w_error = h2w_error(problem.exact, *run.uh, space, run.disc.ops);
  if (options.compute_energy_error) {
    WeakFunction diff = interpolate_Qh(problem.exact.u, problem.exact.grad, space);
    diff.coefficients() -= run.uh->coefficients();
    run.energy_error = triple_norm(diff, space, run.disc.ops, problem.coefficient);
  }
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace lswg
