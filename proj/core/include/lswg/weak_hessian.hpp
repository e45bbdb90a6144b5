#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "lswg/fespace.hpp"

namespace lswg {

/// Discrete weak second derivatives on one element. For each (i, j), the
/// matrix H(i, j) maps local weak DOFs (DofMap local layout) to P_r(T)
/// coefficients of d2_{ij,w} v, defined by
///
///   (d2_{ij,w} v, phi)_T = (v0, d2_{ji} phi)_T - <vb n_i, d_j phi>_{dT}
///                        + <vg_i, phi n_j>_{dT}     for all phi in P_r(T).
struct WeakHessianOperator {
  int element = -1;
  ScaledMonomialBasis range_basis;
  std::array<Eigen::MatrixXd, 4> blocks;  // row-major (i, j) index i * 2 + j

  const Eigen::MatrixXd& H(int i, int j) const { return blocks[static_cast<std::size_t>(2 * i + j)]; }
  Eigen::Index range_size() const { return blocks[0].rows(); }
  Eigen::Index local_size() const { return blocks[0].cols(); }
};

WeakHessianOperator build_local_operator(const WeakSpace& space, int element);
std::vector<WeakHessianOperator> build_operators(const WeakSpace& space);

/// P_r(T) coefficients of d2_{ij,w} v for the local DOF vector `local`.
Eigen::VectorXd apply_weak_hessian(const WeakHessianOperator& op, const Eigen::VectorXd& local, int i, int j);

/// Full 2x2 weak Hessian at each point.
std::vector<Eigen::Matrix2d> eval_weak_hessian_at(const WeakHessianOperator& op,
                                                  const Eigen::VectorXd& local,
                                                  const std::vector<Point2>& points);

}  // namespace lswg
