#include <random>

#include <gtest/gtest.h>

#include "lswg/problems.hpp"
#include "lswg/solver.hpp"

using namespace lswg;

namespace {

SparseMatrix dense_to_sparse(const Eigen::MatrixXd& D) { return D.sparseView(); }

Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd B(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) B(i, j) = g(rng);
  }
  // Spread the spectrum so CG needs many steps.
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = std::pow(10.0, 3.0 * i / (n - 1));
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(B);
  const Eigen::MatrixXd Q = qr.householderQ();
  return Q * d.asDiagonal() * Q.transpose();
}

SolverOptions cg(Preconditioner p) {
  SolverOptions o;
  o.method = SolverMethod::cg;
  o.preconditioner = p;
  return o;
}

SparseSystem level_three_system() {
  const Problem p = problem_smooth();
  static const Mesh m = generate_grid(GridFamily::triangular, 3, DomainKind::unit_square);
  static const WeakSpace space(m, SpaceConfig::make(2));
  return assemble(space, build_operators(space), p.coefficient, p.source);
}

}  // namespace

TEST(Solver, IdentityInOneIteration) {
  const SparseMatrix I = dense_to_sparse(Eigen::MatrixXd::Identity(5, 5));
  const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(5, -2.0, 3.0);
  for (const Preconditioner p : {Preconditioner::none, Preconditioner::jacobi, Preconditioner::incomplete_cholesky}) {
    const SolveReport r = solve(I, b, cg(p));
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.iterations, 1);
    EXPECT_LE((r.solution - b).norm(), 1e-15);
  }
}

TEST(Solver, TwoByTwoByHand) {
  const SparseMatrix A = dense_to_sparse((Eigen::Matrix2d() << 4, 1, 1, 3).finished());
  const Eigen::Vector2d b(1, 2), x(1.0 / 11, 7.0 / 11);
  SolverOptions chol;
  chol.method = SolverMethod::cholesky;
  for (const SolverOptions& o : {chol, cg(Preconditioner::none), cg(Preconditioner::jacobi)}) {
    const SolveReport r = solve(A, b, o);
    EXPECT_TRUE(r.converged);
    EXPECT_LE((r.solution - x).lpNorm<Eigen::Infinity>(), 1e-15);
    EXPECT_LE(r.relative_residual, 1e-12);
  }
}

TEST(Solver, CgEnergyErrorIsMonotone) {
  std::mt19937_64 rng(50);
  const Eigen::MatrixXd D = random_spd(50, rng);
  const SparseMatrix A = dense_to_sparse(D);
  const Eigen::VectorXd b = Eigen::VectorXd::Ones(50);
  const Eigen::VectorXd exact = D.ldlt().solve(b);
  const SolveReport full = solve(A, b, cg(Preconditioner::none));
  ASSERT_TRUE(full.converged);
  for (double d : full.energy_decrements) EXPECT_GE(d, 0.0);

  double previous = std::sqrt(exact.dot(D * exact));
  for (int it = 1; it <= 40; ++it) {
    SolverOptions o = cg(Preconditioner::none);
    o.max_iterations = it;
    Eigen::VectorXd x;
    try {
      x = solve(A, b, o).solution;
    } catch (const NonConvergenceError& e) {
      x = e.report().solution;
    }
    const Eigen::VectorXd err = x - exact;
    const double energy = std::sqrt(err.dot(D * err));
    EXPECT_LE(energy, previous * (1.0 + 1e-12)) << "iteration " << it;
    previous = energy;
  }
}

TEST(Solver, PreconditionersAgree) {
  const SparseSystem sys = level_three_system();
  SolverOptions chol;
  chol.method = SolverMethod::cholesky;
  const Eigen::VectorXd ref = solve(sys, chol).solution;
  for (const Preconditioner p : {Preconditioner::none, Preconditioner::jacobi, Preconditioner::incomplete_cholesky}) {
    SolverOptions o = cg(p);
    o.max_iterations = 50 * static_cast<int>(sys.size());
    const SolveReport r = solve(sys, o);
    EXPECT_TRUE(r.converged) << to_string(p);
    EXPECT_LE((r.solution - ref).norm(), 1e-10 * ref.norm()) << to_string(p);
  }
}

TEST(Solver, JacobiCgMeetsToleranceWithinNIterations) {
  const SparseSystem sys = level_three_system();
  SolverOptions o = cg(Preconditioner::jacobi);
  o.max_iterations = static_cast<int>(sys.size());
  o.backward_error_floor = 0.0;
  SolveReport r;
  try {
    r = solve(sys, o);
  } catch (const NonConvergenceError& e) {
    r = e.report();
  }
  EXPECT_TRUE(r.converged) << "n = " << sys.size() << ", relative residual " << r.relative_residual << " after "
                           << r.iterations << " iterations";
  EXPECT_LE(r.relative_residual, 1e-12);
}

TEST(Solver, JacobiCgConvergesWithinDefaultBudget) {
  const SparseSystem sys = level_three_system();
  const SolveReport r = solve(sys, cg(Preconditioner::jacobi));
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 10 * sys.size());
  EXPECT_LE(r.backward_error, 1e-15);
  SolverOptions chol;
  chol.method = SolverMethod::cholesky;
  const Eigen::VectorXd ref = solve(sys, chol).solution;
  EXPECT_LE((r.solution - ref).norm(), 1e-9 * ref.norm());
}

TEST(Solver, Determinism) {
  const SparseSystem sys = level_three_system();
  SolverOptions chol;
  chol.method = SolverMethod::cholesky;
  EXPECT_EQ(solve(sys, chol).solution, solve(sys, chol).solution);
  EXPECT_EQ(solve(sys, cg(Preconditioner::jacobi)).solution, solve(sys, cg(Preconditioner::jacobi)).solution);
}

TEST(Solver, IncompleteCholeskyBreakdownFallsBack) {
  // Kershaw's matrix: SPD, but IC(0) produces a negative pivot.
  Eigen::Matrix4d K;
  K << 3, -2, 0, 2, -2, 3, -2, 0, 0, -2, 3, -2, 2, 0, -2, 3;
  const Eigen::Vector4d b(1, 2, 3, 4);
  const SolveReport r = solve(dense_to_sparse(K), b, cg(Preconditioner::incomplete_cholesky));
  EXPECT_TRUE(r.converged);
  EXPECT_NE(r.warning.find("falling back to jacobi"), std::string::npos);
  EXPECT_EQ(r.preconditioner, Preconditioner::jacobi);
  EXPECT_LE((K * r.solution - b).norm(), 1e-12 * b.norm());
}

TEST(Solver, Errors) {
  const SparseMatrix indefinite = dense_to_sparse((Eigen::Matrix2d() << 1, 2, 2, 1).finished());
  SolverOptions chol;
  chol.method = SolverMethod::cholesky;
  EXPECT_THROW(solve(indefinite, Eigen::Vector2d(1, 1), chol), NotSpdError);

  std::mt19937_64 rng(2);
  const SparseMatrix A = dense_to_sparse(random_spd(30, rng));
  SolverOptions few = cg(Preconditioner::none);
  few.max_iterations = 2;
  try {
    solve(A, Eigen::VectorXd::Ones(30), few);
    FAIL() << "expected non-convergence";
  } catch (const NonConvergenceError& e) {
    EXPECT_EQ(e.report().iterations, 2);
    EXPECT_FALSE(e.report().residual_history.empty());
  }

  SolverOptions bad;
  bad.rel_tolerance = 1.5;
  EXPECT_THROW(bad.check(), std::invalid_argument);
  EXPECT_THROW(solve(A, Eigen::VectorXd::Ones(3)), std::invalid_argument);
  EXPECT_THROW(parse_solver_method("lu"), std::invalid_argument);
  EXPECT_EQ(parse_preconditioner("jacobi"), Preconditioner::jacobi);
}

TEST(Solver, CholeskyReportsPivotAndResidual) {
  const SparseSystem sys = level_three_system();
  SolverOptions chol;
  chol.method = SolverMethod::cholesky;
  const SolveReport r = solve(sys, chol);
  EXPECT_GT(r.min_pivot, 0.0);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.relative_residual, 1e-12);
  EXPECT_NEAR((sys.b - sys.A * r.solution).norm() / sys.b.norm(), r.relative_residual, 1e-20 + 1e-3 * r.relative_residual);
}

TEST(Solver, LargestEigenvalueEstimate) {
  const SparseMatrix A = dense_to_sparse(Eigen::Vector3d(1, 2, 7).asDiagonal().toDenseMatrix());
  EXPECT_NEAR(estimate_largest_eigenvalue(A, 200), 7.0, 1e-6);
}
