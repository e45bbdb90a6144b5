#include "lswg/weak_hessian.hpp"

#include <stdexcept>

#include <Eigen/Cholesky>

#include "lswg/parallel.hpp"

namespace lswg {

WeakHessianOperator build_local_operator(const WeakSpace& space, int element) {
  const Mesh& mesh = space.mesh();
  const DofMap& dofs = space.dofs();
  const Element& el = mesh.element(element);
  const ElementData& data = space.element(element);
  const ScaledMonomialBasis& interior = data.interior_basis;
  const ScaledMonomialBasis& range = data.hessian_basis;
  const int ne = static_cast<int>(el.edges.size());
  const int nr = range.size();
  const int nloc = dofs.local_size(ne);

  WeakHessianOperator op;
  op.element = element;
  op.range_basis = range;

  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(nr, nr);
  std::array<Eigen::MatrixXd, 4> rhs;
  for (auto& b : rhs) b = Eigen::MatrixXd::Zero(nr, nloc);

  // (v0, d2_{ij} phi)_T
  const auto& quad = data.quadrature;
  for (std::size_t q = 0; q < quad.size(); ++q) {
    const Point2 x = quad.points[q];
    const double w = quad.weights[q];
    const Eigen::VectorXd phi = range.values(x);
    const Eigen::Matrix<double, 3, Eigen::Dynamic> hess = range.hessians(x);
    const Eigen::VectorXd psi = interior.values(x);
    mass.noalias() += w * phi * phi.transpose();
    const std::array<int, 4> component{0, 1, 1, 2};  // xx, xy, yx, yy
    for (int ij = 0; ij < 4; ++ij) {
      rhs[static_cast<std::size_t>(ij)].leftCols(interior.size()).noalias() +=
          w * hess.row(component[static_cast<std::size_t>(ij)]).transpose() * psi.transpose();
    }
  }

  for (int le = 0; le < ne; ++le) {
    const int e = el.edges[static_cast<std::size_t>(le)];
    const EdgeData& ed = space.edge(e);
    const Point2 n = mesh.edge(e).unit_normal_of(element);
    const std::array<double, 2> nrm{n.x, n.y};
    const int vb = dofs.local_trace_offset(le);
    for (std::size_t q = 0; q < ed.quadrature.size(); ++q) {
      const Point2 x = ed.quadrature.points[q];
      const double w = ed.quadrature.weights[q];
      const Eigen::VectorXd phi = range.values(x);
      const Eigen::Matrix<double, 2, Eigen::Dynamic> dphi = range.gradients(x);
      const Eigen::VectorXd mu = ed.trace_basis.values(x);
      const Eigen::VectorXd nu = ed.gradient_basis.values(x);
      for (int i = 0; i < 2; ++i) {
        const int vg = dofs.local_gradient_offset(ne, le, i);
        for (int j = 0; j < 2; ++j) {
          auto& b = rhs[static_cast<std::size_t>(2 * i + j)];
          // -<vb n_i, d_j phi>
          b.middleCols(vb, mu.size()).noalias() -= (w * nrm[i]) * dphi.row(j).transpose() * mu.transpose();
          // +<vg_i, phi n_j>
          b.middleCols(vg, nu.size()).noalias() += (w * nrm[j]) * phi * nu.transpose();
        }
      }
    }
  }

  const Eigen::LLT<Eigen::MatrixXd> llt(mass);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("P_r mass matrix not positive definite on element " + std::to_string(element));
  }
  for (int ij = 0; ij < 4; ++ij) op.blocks[static_cast<std::size_t>(ij)] = llt.solve(rhs[static_cast<std::size_t>(ij)]);
  return op;
}

std::vector<WeakHessianOperator> build_operators(const WeakSpace& space) {
  std::vector<WeakHessianOperator> ops(static_cast<std::size_t>(space.mesh().num_elements()));
  parallel_for(space.mesh().num_elements(), [&](int begin, int end) {
    for (int t = begin; t < end; ++t) ops[static_cast<std::size_t>(t)] = build_local_operator(space, t);
  });
  return ops;
}

Eigen::VectorXd apply_weak_hessian(const WeakHessianOperator& op, const Eigen::VectorXd& local, int i, int j) {
  if (local.size() != op.local_size()) {
    throw std::invalid_argument("local DOF vector has length " + std::to_string(local.size()) +
                                ", operator expects " + std::to_string(op.local_size()));
  }
  if (i < 0 || i > 1 || j < 0 || j > 1) throw std::invalid_argument("Hessian index out of range");
  return op.H(i, j) * local;
}

std::vector<Eigen::Matrix2d> eval_weak_hessian_at(const WeakHessianOperator& op,
                                                  const Eigen::VectorXd& local,
                                                  const std::vector<Point2>& points) {
  std::array<Eigen::VectorXd, 4> coeffs;
  for (int ij = 0; ij < 4; ++ij) coeffs[static_cast<std::size_t>(ij)] = apply_weak_hessian(op, local, ij / 2, ij % 2);
  std::vector<Eigen::Matrix2d> out;
  out.reserve(points.size());
  for (const Point2& p : points) {
    const Eigen::VectorXd phi = op.range_basis.values(p);
    Eigen::Matrix2d m;
    m << phi.dot(coeffs[0]), phi.dot(coeffs[1]), phi.dot(coeffs[2]), phi.dot(coeffs[3]);
    out.push_back(m);
  }
  return out;
}

}  // namespace lswg
