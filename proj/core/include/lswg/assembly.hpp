#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "lswg/fespace.hpp"
#include "lswg/fields.hpp"
#include "lswg/weak_hessian.hpp"

namespace lswg {

/// Line x = value (axis 0) or y = value (axis 1) across which a coefficient may jump.
struct DiscontinuityLine {
  int axis = 0;
  double value = 0.0;
};

/// Symmetric uniformly elliptic coefficient a(x) with bounds alpha |xi|^2 <= xi^T a xi <= beta |xi|^2.
struct CoefficientField {
  MatrixField eval;
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<DiscontinuityLine> discontinuities;

  static CoefficientField constant(const Eigen::Matrix2d& a);
};

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct AssemblyOptions {
  /// Drop rows and columns of boundary vb DOFs (homogeneous Dirichlet data).
  bool eliminate_boundary = true;
  bool include_least_squares = true;
  bool include_stabilizer = true;
  int workers = 0;
};

struct AssemblyTimings {
  double local_seconds = 0.0;
  double global_seconds = 0.0;
};

/// Normal equations of the least-squares functional over the free DOFs.
struct SparseSystem {
  SparseMatrix A;
  Eigen::VectorXd b;
  const DofMap* dofs = nullptr;
  bool eliminated = true;
  AssemblyTimings timings;

  Eigen::Index size() const { return A.rows(); }
  Eigen::Index nnz() const { return A.nonZeros(); }
};

/// Raised when a coefficient discontinuity line cuts through an element interior.
class AlignmentError : public ConfigurationError {
 public:
  using ConfigurationError::ConfigurationError;
};

void check_alignment(const Mesh& mesh, const CoefficientField& coeff);

/// Values of sum_ij a_ij(x_q) d2_{ij,w} phi_p at the element quadrature points
/// (rows: points, columns: local DOFs).
Eigen::MatrixXd weighted_weak_hessian(const WeakSpace& space, const WeakHessianOperator& op,
                                      const CoefficientField& coeff);

Eigen::MatrixXd local_ls_block(const WeakSpace& space, const WeakHessianOperator& op,
                               const CoefficientField& coeff);
/// h^-3 <v0 - vb, w0 - wb> + h^-1 <grad v0 - vg, grad w0 - wg> over the element boundary.
Eigen::MatrixXd local_stabilizer(const WeakSpace& space, int element);
Eigen::VectorXd local_load(const WeakSpace& space, const WeakHessianOperator& op,
                           const CoefficientField& coeff, const ScalarField& source);

SparseSystem assemble(const WeakSpace& space, const std::vector<WeakHessianOperator>& ops,
                      const CoefficientField& coeff, const ScalarField& source,
                      const AssemblyOptions& options = {});

/// Header line "n nnz", then one "row col value" line per stored entry.
void write_triplets(const SparseMatrix& A, std::ostream& out);

}  // namespace lswg
