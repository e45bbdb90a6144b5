#pragma once

#include <memory>
#include <vector>

#include "lswg/assembly.hpp"
#include "lswg/fespace.hpp"
#include "lswg/mesh.hpp"
#include "lswg/postproc.hpp"
#include "lswg/problems.hpp"
#include "lswg/solver.hpp"
#include "lswg/weak_hessian.hpp"

namespace lswg {

/// Mesh, weak space and per-element weak Hessian operators, heap-pinned so
/// the space's reference to the mesh survives moves.
struct Discretization {
  std::unique_ptr<const Mesh> mesh;
  std::unique_ptr<const WeakSpace> space;
  std::vector<WeakHessianOperator> ops;

  static Discretization build(Mesh mesh, const SpaceConfig& config);
};

struct LevelRun {
  int level = 0;
  Discretization disc;
  SparseSystem system;
  SolveReport solve;
  std::unique_ptr<WeakFunction> uh;
  double l2_error = 0.0;
  double h2w_error = 0.0;
  /// |||Q_h u - u_h|||
  double energy_error = 0.0;
  double seconds = 0.0;
};

struct LevelOptions {
  SolverOptions solver;
  bool compute_energy_error = true;
};

/// Generates the grid, assembles, solves and measures errors for one level.
LevelRun run_level(const Problem& problem, GridFamily family, int level, const SpaceConfig& config,
                   const LevelOptions& options = {});

}  // namespace lswg
