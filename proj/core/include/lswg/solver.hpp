#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lswg/assembly.hpp"

namespace lswg {

enum class SolverMethod { automatic, cg, cholesky };
enum class Preconditioner { none, jacobi, incomplete_cholesky };

std::string to_string(SolverMethod method);
std::string to_string(Preconditioner preconditioner);
SolverMethod parse_solver_method(const std::string& name);
Preconditioner parse_preconditioner(const std::string& name);

struct SolverOptions {
  SolverMethod method = SolverMethod::automatic;
  Preconditioner preconditioner = Preconditioner::jacobi;
  double rel_tolerance = 1e-12;
  /// 0 selects 10 n.
  int max_iterations = 0;
  /// automatic picks Cholesky up to this many unknowns and CG above.
  Eigen::Index cholesky_threshold = 20000;
  /// Iterative refinement sweeps applied after a Cholesky solve.
  int refinement_steps = 3;
  /// A solve whose normwise backward error ||b - Ax|| / (||A|| ||x|| + ||b||)
  /// (infinity norms) is at or below this floor has reached double-precision
  /// rounding and counts as converged even when rel_tolerance is out of reach.
  /// CG only applies it once restarts stop reducing the true residual.
  double backward_error_floor = 1e-15;

  void check() const;
};

struct SolveReport {
  Eigen::VectorXd solution;
  SolverMethod method = SolverMethod::cholesky;
  Preconditioner preconditioner = Preconditioner::none;
  int iterations = 0;
  /// ||b - A x|| / ||b||, recomputed from the final iterate.
  double relative_residual = 0.0;
  double backward_error = 0.0;
  /// Converged on the backward-error floor rather than on rel_tolerance.
  bool floor_limited = false;
  double seconds = 0.0;
  bool converged = false;
  /// CG: recursive relative residual norms per iteration.
  std::vector<double> residual_history;
  /// CG: decrease of the squared A-norm error in each step (alpha_k r_k^T z_k).
  std::vector<double> energy_decrements;
  /// Cholesky: smallest pivot (squared diagonal of the factor).
  double min_pivot = 0.0;
  std::string warning;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SolveReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const SolveReport& report() const { return report_; }

 private:
  SolveReport report_;
};

class NotSpdError : public SolverError {
 public:
  using SolverError::SolverError;
};

class NonConvergenceError : public SolverError {
 public:
  using SolverError::SolverError;
};

SolveReport solve(const SparseMatrix& A, const Eigen::VectorXd& b, const SolverOptions& options = {});
SolveReport solve(const SparseSystem& system, const SolverOptions& options = {});

SolveReport conjugate_gradient(const SparseMatrix& A, const Eigen::VectorXd& b, const SolverOptions& options);
SolveReport cholesky_solve(const SparseMatrix& A, const Eigen::VectorXd& b, const SolverOptions& options);

/// Power-iteration estimate of the largest eigenvalue; diagnostic only.
double estimate_largest_eigenvalue(const SparseMatrix& A, int iterations = 100);

}  // namespace lswg
