#include "lswg/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>

namespace lswg {

std::string to_string(SolverMethod method) {
  switch (method) {
    case SolverMethod::automatic: return "auto";
    case SolverMethod::cg: return "cg";
    case SolverMethod::cholesky: return "cholesky";
  }
  return "unknown";
}

std::string to_string(Preconditioner preconditioner) {
  switch (preconditioner) {
    case Preconditioner::none: return "none";
    case Preconditioner::jacobi: return "jacobi";
    case Preconditioner::incomplete_cholesky: return "incomplete_cholesky";
  }
  return "unknown";
}

SolverMethod parse_solver_method(const std::string& name) {
  if (name == "auto" || name == "automatic") return SolverMethod::automatic;
  if (name == "cg") return SolverMethod::cg;
  if (name == "cholesky") return SolverMethod::cholesky;
  throw std::invalid_argument("unknown solver '" + name + "'");
}

Preconditioner parse_preconditioner(const std::string& name) {
  if (name == "none") return Preconditioner::none;
  if (name == "jacobi") return Preconditioner::jacobi;
  if (name == "incomplete_cholesky" || name == "ic0") return Preconditioner::incomplete_cholesky;
  throw std::invalid_argument("unknown preconditioner '" + name + "'");
}

void SolverOptions::check() const {
  if (!(rel_tolerance > 0.0 && rel_tolerance < 1.0)) throw std::invalid_argument("rel_tolerance must lie in (0, 1)");
  if (max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 1 (or 0 for the default)");
}

namespace {

using Clock = std::chrono::steady_clock;

double relative_residual(const SparseMatrix& A, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  const double bnorm = b.norm();
  const double rnorm = (b - A * x).norm();
  return bnorm == 0.0 ? rnorm : rnorm / bnorm;
}

double inf_norm(const SparseMatrix& A) {
  double m = 0.0;
  for (Eigen::Index r = 0; r < A.outerSize(); ++r) {
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(A, r); it; ++it) s += std::abs(it.value());
    m = std::max(m, s);
  }
  return m;
}

double backward_error(const SparseMatrix& A, double a_norm, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  const double denom = a_norm * x.lpNorm<Eigen::Infinity>() + b.lpNorm<Eigen::Infinity>();
  const double r = (b - A * x).lpNorm<Eigen::Infinity>();
  return denom == 0.0 ? r : r / denom;
}

// Fills the final residual metrics and decides convergence.
void finalize(SolveReport& report, const SparseMatrix& A, double a_norm, const Eigen::VectorXd& b,
              const SolverOptions& options) {
  report.relative_residual = relative_residual(A, report.solution, b);
  report.backward_error = backward_error(A, a_norm, report.solution, b);
  if (report.relative_residual <= options.rel_tolerance) {
    report.converged = true;
  } else if (report.backward_error <= options.backward_error_floor) {
    report.converged = true;
    report.floor_limited = true;
    if (!report.warning.empty()) report.warning += "; ";
    report.warning += "relative residual limited by rounding (backward error at floor)";
  }
}

// Zero fill-in incomplete Cholesky factor L (lower triangle of A's pattern).
class IncompleteCholesky {
 public:
  // Returns false on a non-positive pivot.
  bool factor(const SparseMatrix& A) {
    const Eigen::Index n = A.rows();
    lower_ = A.triangularView<Eigen::Lower>();
    lower_.makeCompressed();
    Eigen::VectorXd work = Eigen::VectorXd::Zero(n);
    const int* outer = lower_.outerIndexPtr();
    const int* inner = lower_.innerIndexPtr();
    double* val = lower_.valuePtr();
    for (Eigen::Index i = 0; i < n; ++i) {
      const int begin = outer[i], end = outer[i + 1];
      if (end == begin || inner[end - 1] != i) return false;  // missing diagonal
      for (int p = begin; p < end - 1; ++p) {
        const int k = inner[p];
        // L(i,k) = (A(i,k) - sum_{j<k} L(i,j) L(k,j)) / L(k,k), using entries of row i already final.
        double s = val[p];
        for (int q = outer[k]; q < outer[k + 1] - 1; ++q) s -= work(inner[q]) * val[q];
        val[p] = s / val[outer[k + 1] - 1];
        work(k) = val[p];
      }
      double d = val[end - 1];
      for (int p = begin; p < end - 1; ++p) d -= val[p] * val[p];
      for (int p = begin; p < end - 1; ++p) work(inner[p]) = 0.0;
      if (!(d > 0.0)) return false;
      val[end - 1] = std::sqrt(d);
    }
    return true;
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& r) const {
    const Eigen::Index n = lower_.rows();
    const int* outer = lower_.outerIndexPtr();
    const int* inner = lower_.innerIndexPtr();
    const double* val = lower_.valuePtr();
    Eigen::VectorXd y = r;
    for (Eigen::Index i = 0; i < n; ++i) {
      double s = y(i);
      for (int p = outer[i]; p < outer[i + 1] - 1; ++p) s -= val[p] * y(inner[p]);
      y(i) = s / val[outer[i + 1] - 1];
    }
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      y(i) /= val[outer[i + 1] - 1];
      for (int p = outer[i]; p < outer[i + 1] - 1; ++p) y(inner[p]) -= val[p] * y(i);
    }
    return y;
  }

 private:
  SparseMatrix lower_;
};

}  // namespace

SolveReport conjugate_gradient(const SparseMatrix& A, const Eigen::VectorXd& b, const SolverOptions& options) {
  options.check();
  const auto start = Clock::now();
  const Eigen::Index n = A.rows();
  SolveReport report;
  report.method = SolverMethod::cg;
  report.preconditioner = options.preconditioner;
  report.solution = Eigen::VectorXd::Zero(n);
  const int max_iterations = options.max_iterations > 0 ? options.max_iterations : static_cast<int>(10 * n);

  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    report.converged = true;
    report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return report;
  }

  Eigen::VectorXd inv_diag;
  IncompleteCholesky ic;
  if (report.preconditioner == Preconditioner::incomplete_cholesky && !ic.factor(A)) {
    report.preconditioner = Preconditioner::jacobi;
    report.warning = "incomplete Cholesky breakdown; falling back to jacobi";
  }
  if (report.preconditioner == Preconditioner::jacobi) {
    inv_diag = A.diagonal();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(inv_diag(i) > 0.0)) {
        throw NotSpdError("non-positive diagonal entry " + std::to_string(i) + " in CG matrix", report);
      }
      inv_diag(i) = 1.0 / inv_diag(i);
    }
  }
  auto precondition = [&](const Eigen::VectorXd& r) -> Eigen::VectorXd {
    switch (report.preconditioner) {
      case Preconditioner::jacobi: return inv_diag.cwiseProduct(r);
      case Preconditioner::incomplete_cholesky: return ic.apply(r);
      case Preconditioner::none: break;
    }
    return r;
  };

  const double a_norm = inf_norm(A);
  Eigen::VectorXd& x = report.solution;
  Eigen::VectorXd r = b;
  Eigen::VectorXd z = precondition(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  double best_restart = std::numeric_limits<double>::infinity();
  int stalls = 0;
  for (int it = 0; it < max_iterations; ++it) {
    const Eigen::VectorXd ap = A * p;
    const double pap = p.dot(ap);
    if (!(pap > 0.0)) throw NotSpdError("CG encountered non-positive curvature", report);
    const double alpha = rz / pap;
    x += alpha * p;
    r -= alpha * ap;
    report.iterations = it + 1;
    report.energy_decrements.push_back(alpha * rz);
    const double rel = r.norm() / bnorm;
    report.residual_history.push_back(rel);
    if (rel <= options.rel_tolerance) {
      // Confirm with the true residual; on drift, restart from it.
      r = b - A * x;
      const double true_rel = r.norm() / bnorm;
      if (true_rel <= options.rel_tolerance) break;
      // Restarts that repeatedly fail to halve the best true residual mean the rounding floor is reached.
      if (true_rel > 0.5 * best_restart) ++stalls;
      best_restart = std::min(best_restart, true_rel);
      if (stalls >= 2 && backward_error(A, a_norm, x, b) <= options.backward_error_floor) break;
      z = precondition(r);
      p = z;
      rz = r.dot(z);
      continue;
    }
    z = precondition(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  finalize(report, A, a_norm, b, options);
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (!report.converged) {
    throw NonConvergenceError("CG did not converge in " + std::to_string(max_iterations) +
                                  " iterations (relative residual " +
                                  std::to_string(report.relative_residual) + ")",
                              report);
  }
  return report;
}

SolveReport cholesky_solve(const SparseMatrix& A, const Eigen::VectorXd& b, const SolverOptions& options) {
  options.check();
  const auto start = Clock::now();
  SolveReport report;
  report.method = SolverMethod::cholesky;
  const Eigen::SparseMatrix<double> colmajor = A;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>> llt(colmajor);
  if (llt.info() != Eigen::Success) {
    throw NotSpdError("Cholesky factorization hit a non-positive pivot: matrix is not SPD", report);
  }
  const Eigen::VectorXd diag = Eigen::SparseMatrix<double>(llt.matrixL()).diagonal();
  report.min_pivot = diag.size() ? diag.cwiseAbs2().minCoeff() : 0.0;
  if (!(report.min_pivot > 0.0)) throw NotSpdError("Cholesky produced a zero pivot", report);

  report.solution = llt.solve(b);
  report.relative_residual = relative_residual(A, report.solution, b);
  for (int step = 0; step < options.refinement_steps && report.relative_residual > 0.1 * options.rel_tolerance; ++step) {
    const Eigen::VectorXd correction = llt.solve(b - A * report.solution);
    const Eigen::VectorXd candidate = report.solution + correction;
    const double res = relative_residual(A, candidate, b);
    if (!(res < report.relative_residual)) break;
    report.solution = candidate;
    report.relative_residual = res;
    ++report.iterations;
  }
  finalize(report, A, inf_norm(A), b, options);
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (!report.converged) {
    throw NonConvergenceError("Cholesky residual " + std::to_string(report.relative_residual) +
                                  " above tolerance after refinement",
                              report);
  }
  return report;
}

SolveReport solve(const SparseMatrix& A, const Eigen::VectorXd& b, const SolverOptions& options) {
  if (A.rows() != A.cols() || A.rows() != b.size()) throw std::invalid_argument("system dimensions mismatch");
  if (!b.allFinite()) throw std::invalid_argument("right-hand side has non-finite entries");
  SolverMethod method = options.method;
  if (method == SolverMethod::automatic) {
    method = A.rows() <= options.cholesky_threshold ? SolverMethod::cholesky : SolverMethod::cg;
  }
  return method == SolverMethod::cholesky ? cholesky_solve(A, b, options) : conjugate_gradient(A, b, options);
}

SolveReport solve(const SparseSystem& system, const SolverOptions& options) {
  return solve(system.A, system.b, options);
}

double estimate_largest_eigenvalue(const SparseMatrix& A, int iterations) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(A.rows()).normalized();
  double lambda = 0.0;
  for (int i = 0; i < iterations; ++i) {
    const Eigen::VectorXd w = A * v;
    lambda = v.dot(w);
    const double nrm = w.norm();
    if (nrm == 0.0) return 0.0;
    v = w / nrm;
  }
  return lambda;
}

}  // namespace lswg
