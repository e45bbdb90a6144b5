#include "lswg/assembly.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>

#include "lswg/parallel.hpp"

namespace lswg {

CoefficientField CoefficientField::constant(const Eigen::Matrix2d& a) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(a);
  CoefficientField c;
  c.eval = [a](Point2) { return a; };
  c.alpha = eig.eigenvalues()(0);
  c.beta = eig.eigenvalues()(1);
  return c;
}

void check_alignment(const Mesh& mesh, const CoefficientField& coeff) {
  for (const auto& line : coeff.discontinuities) {
    for (int t = 0; t < mesh.num_elements(); ++t) {
      bool below = false, above = false;
      for (int v : mesh.element(t).vertices) {
        const Point2 p = mesh.vertex(v);
        const double c = line.axis == 0 ? p.x : p.y;
        below |= c < line.value;
        above |= c > line.value;
      }
      if (below && above) {
        throw AlignmentError("coefficient discontinuity " + std::string(line.axis == 0 ? "x" : "y") +
                             " = " + std::to_string(line.value) + " crosses element " + std::to_string(t));
      }
    }
  }
}

Eigen::MatrixXd weighted_weak_hessian(const WeakSpace& space, const WeakHessianOperator& op,
                                      const CoefficientField& coeff) {
  const auto& quad = space.element(op.element).quadrature;
  const auto nq = static_cast<Eigen::Index>(quad.size());
  Eigen::MatrixXd phi(nq, op.range_size());
  for (Eigen::Index q = 0; q < nq; ++q) {
    phi.row(q) = op.range_basis.values(quad.points[static_cast<std::size_t>(q)]).transpose();
  }
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(nq, op.local_size());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Eigen::MatrixXd values = phi * op.H(i, j);
      for (Eigen::Index q = 0; q < nq; ++q) {
        g.row(q) += coeff.eval(quad.points[static_cast<std::size_t>(q)])(i, j) * values.row(q);
      }
    }
  }
  return g;
}

namespace {

Eigen::VectorXd weights_of(const QuadratureRule& rule) {
  return Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), static_cast<Eigen::Index>(rule.weights.size()));
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

Eigen::MatrixXd local_ls_block(const WeakSpace& space, const WeakHessianOperator& op,
                               const CoefficientField& coeff) {
  const Eigen::MatrixXd g = weighted_weak_hessian(space, op, coeff);
  const Eigen::VectorXd w = weights_of(space.element(op.element).quadrature);
  return symmetrized(g.transpose() * w.asDiagonal() * g);
}

Eigen::MatrixXd local_stabilizer(const WeakSpace& space, int element) {
  const Mesh& mesh = space.mesh();
  const DofMap& dofs = space.dofs();
  const Element& el = mesh.element(element);
  const auto& interior = space.element(element).interior_basis;
  const int ne = static_cast<int>(el.edges.size());
  const int nloc = dofs.local_size(ne);
  const int nk = interior.size();
  const double h = el.diameter;

  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(nloc, nloc);
  for (int le = 0; le < ne; ++le) {
    const EdgeData& ed = space.edge(el.edges[static_cast<std::size_t>(le)]);
    const auto nq = static_cast<Eigen::Index>(ed.quadrature.size());
    Eigen::MatrixXd jump = Eigen::MatrixXd::Zero(nq, nloc);
    Eigen::MatrixXd grad_x = Eigen::MatrixXd::Zero(nq, nloc);
    Eigen::MatrixXd grad_y = Eigen::MatrixXd::Zero(nq, nloc);
    const int vb = dofs.local_trace_offset(le);
    const int vgx = dofs.local_gradient_offset(ne, le, 0);
    const int vgy = dofs.local_gradient_offset(ne, le, 1);
    for (Eigen::Index q = 0; q < nq; ++q) {
      const Point2 x = ed.quadrature.points[static_cast<std::size_t>(q)];
      const Eigen::VectorXd mu = ed.trace_basis.values(x);
      const Eigen::VectorXd nu = ed.gradient_basis.values(x);
      const auto dpsi = interior.gradients(x);
      jump.row(q).head(nk) = interior.values(x).transpose();
      jump.row(q).segment(vb, mu.size()) = -mu.transpose();
      grad_x.row(q).head(nk) = dpsi.row(0);
      grad_x.row(q).segment(vgx, nu.size()) = -nu.transpose();
      grad_y.row(q).head(nk) = dpsi.row(1);
      grad_y.row(q).segment(vgy, nu.size()) = -nu.transpose();
    }
    const Eigen::VectorXd w = weights_of(ed.quadrature);
    s.noalias() += std::pow(h, -3) * (jump.transpose() * w.asDiagonal() * jump);
    s.noalias() += (1.0 / h) * (grad_x.transpose() * w.asDiagonal() * grad_x +
                                grad_y.transpose() * w.asDiagonal() * grad_y);
  }
  return symmetrized(s);
}

Eigen::VectorXd local_load(const WeakSpace& space, const WeakHessianOperator& op,
                           const CoefficientField& coeff, const ScalarField& source) {
  const auto& quad = space.element(op.element).quadrature;
  const Eigen::MatrixXd g = weighted_weak_hessian(space, op, coeff);
  Eigen::VectorXd wf(static_cast<Eigen::Index>(quad.size()));
  for (std::size_t q = 0; q < quad.size(); ++q) wf(static_cast<Eigen::Index>(q)) = quad.weights[q] * source(quad.points[q]);
  return g.transpose() * wf;
}

SparseSystem assemble(const WeakSpace& space, const std::vector<WeakHessianOperator>& ops,
                      const CoefficientField& coeff, const ScalarField& source,
                      const AssemblyOptions& options) {
  using Clock = std::chrono::steady_clock;
  const Mesh& mesh = space.mesh();
  const DofMap& dofs = space.dofs();
  check_alignment(mesh, coeff);
  if (ops.size() != static_cast<std::size_t>(mesh.num_elements())) {
    throw ConfigurationError("one weak Hessian operator per element is required");
  }

  const auto start = Clock::now();
  const int n_elements = mesh.num_elements();
  std::vector<Eigen::MatrixXd> blocks(static_cast<std::size_t>(n_elements));
  std::vector<Eigen::VectorXd> loads(static_cast<std::size_t>(n_elements));
  parallel_for(
      n_elements,
      [&](int begin, int end) {
        for (int t = begin; t < end; ++t) {
          const auto& op = ops[static_cast<std::size_t>(t)];
          const int nloc = dofs.local_size(static_cast<int>(mesh.element(t).edges.size()));
          Eigen::MatrixXd block = Eigen::MatrixXd::Zero(nloc, nloc);
          if (options.include_least_squares) block += local_ls_block(space, op, coeff);
          if (options.include_stabilizer) block += local_stabilizer(space, t);
          blocks[static_cast<std::size_t>(t)] = std::move(block);
          loads[static_cast<std::size_t>(t)] = local_load(space, op, coeff, source);
        }
      },
      options.workers);
  const auto local_done = Clock::now();

  const int n = options.eliminate_boundary ? dofs.num_free() : dofs.total();
  auto row_index = [&](int global) { return options.eliminate_boundary ? dofs.free_index(global) : global; };

  // Triplets are emitted in element order, so duplicate summation order (and
  // hence every matrix entry) does not depend on the worker count.
  std::vector<Eigen::Triplet<double>> triplets;
  std::size_t reserve = 0;
  for (const auto& b : blocks) reserve += static_cast<std::size_t>(b.size());
  triplets.reserve(reserve);
  SparseSystem system;
  system.b = Eigen::VectorXd::Zero(n);
  for (int t = 0; t < n_elements; ++t) {
    const auto map = dofs.local_to_global(mesh, t);
    const auto& block = blocks[static_cast<std::size_t>(t)];
    const auto& load = loads[static_cast<std::size_t>(t)];
    for (std::size_t p = 0; p < map.size(); ++p) {
      const int row = row_index(map[p]);
      if (row < 0) continue;
      system.b(row) += load(static_cast<Eigen::Index>(p));
      for (std::size_t q = 0; q < map.size(); ++q) {
        const int col = row_index(map[q]);
        if (col < 0) continue;
        triplets.emplace_back(row, col, block(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)));
      }
    }
    blocks[static_cast<std::size_t>(t)] = Eigen::MatrixXd();
  }
  system.A.resize(n, n);
  system.A.setFromTriplets(triplets.begin(), triplets.end());
  system.A.makeCompressed();
  system.dofs = &dofs;
  system.eliminated = options.eliminate_boundary;
  const auto global_done = Clock::now();
  system.timings.local_seconds = std::chrono::duration<double>(local_done - start).count();
  system.timings.global_seconds = std::chrono::duration<double>(global_done - local_done).count();
  return system;
}

void write_triplets(const SparseMatrix& A, std::ostream& out) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << A.rows() << ' ' << A.nonZeros() << '\n';
  for (Eigen::Index r = 0; r < A.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(A, r); it; ++it) out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
  }
  out.precision(old_precision);
}

}  // namespace lswg
