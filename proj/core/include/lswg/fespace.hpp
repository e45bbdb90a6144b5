#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lswg/basis.hpp"
#include "lswg/fields.hpp"
#include "lswg/mesh.hpp"
#include "lswg/quadrature.hpp"

namespace lswg {

class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degrees of the weak space: v0 in P_k(T), vb in P_k(e), vg in [P_{k-1}(e)]^2,
/// and the weak Hessian range P_r(T).
struct SpaceConfig {
  int k = 2;
  int r = 2;
  int quad_order = 6;

  /// r defaults to k, quad_order to 2k + 2.
  static SpaceConfig make(int k, std::optional<int> r = std::nullopt,
                          std::optional<int> quad_order = std::nullopt);
  void check() const;
};

/// Global numbering: all interior blocks (element order), then all vb blocks,
/// then all vg blocks (edge order; component x before component y).
class DofMap {
 public:
  DofMap() = default;
  DofMap(const Mesh& mesh, const SpaceConfig& config);

  int interior_size() const { return interior_size_; }
  int trace_size() const { return trace_size_; }
  /// Size of one vg component block (k).
  int gradient_component_size() const { return gradient_component_size_; }
  int gradient_size() const { return 2 * gradient_component_size_; }

  int interior_offset(int element) const { return element * interior_size_; }
  int trace_offset(int edge) const { return trace_base_ + edge * trace_size_; }
  int gradient_offset(int edge, int component) const {
    return gradient_base_ + edge * gradient_size() + component * gradient_component_size_;
  }

  int total() const { return total_; }
  int num_free() const { return static_cast<int>(free_to_global_.size()); }
  int num_constrained() const { return total_ - num_free(); }
  bool is_constrained(int global) const { return global_to_free_[static_cast<std::size_t>(global)] < 0; }
  /// -1 for constrained DOFs.
  int free_index(int global) const { return global_to_free_[static_cast<std::size_t>(global)]; }
  const std::vector<int>& free_to_global() const { return free_to_global_; }

  /// Local layout: interior block, then vb blocks of the element's edges in
  /// element edge order, then vg blocks in the same order.
  int local_size(int num_element_edges) const {
    return interior_size_ + num_element_edges * (trace_size_ + gradient_size());
  }
  int local_trace_offset(int local_edge) const { return interior_size_ + local_edge * trace_size_; }
  int local_gradient_offset(int num_element_edges, int local_edge, int component) const {
    return interior_size_ + num_element_edges * trace_size_ + local_edge * gradient_size() +
           component * gradient_component_size_;
  }
  std::vector<int> local_to_global(const Mesh& mesh, int element) const;

 private:
  int interior_size_ = 0;
  int trace_size_ = 0;
  int gradient_component_size_ = 0;
  int trace_base_ = 0;
  int gradient_base_ = 0;
  int total_ = 0;
  std::vector<int> global_to_free_;
  std::vector<int> free_to_global_;
};

/// Coefficient vector of a discrete weak function {v0, vb, vg} over a DofMap.
class WeakFunction {
 public:
  explicit WeakFunction(const DofMap& dofs);
  WeakFunction(const DofMap& dofs, Eigen::VectorXd coefficients);
  /// Expands a free-DOF vector, zero at constrained positions.
  static WeakFunction from_free(const DofMap& dofs, const Eigen::VectorXd& free);

  const DofMap& dofs() const { return *dofs_; }
  Eigen::VectorXd& coefficients() { return coefficients_; }
  const Eigen::VectorXd& coefficients() const { return coefficients_; }

  auto interior(int element) { return coefficients_.segment(dofs_->interior_offset(element), dofs_->interior_size()); }
  auto interior(int element) const { return coefficients_.segment(dofs_->interior_offset(element), dofs_->interior_size()); }
  auto trace(int edge) { return coefficients_.segment(dofs_->trace_offset(edge), dofs_->trace_size()); }
  auto trace(int edge) const { return coefficients_.segment(dofs_->trace_offset(edge), dofs_->trace_size()); }
  auto gradient(int edge, int component) {
    return coefficients_.segment(dofs_->gradient_offset(edge, component), dofs_->gradient_component_size());
  }
  auto gradient(int edge, int component) const {
    return coefficients_.segment(dofs_->gradient_offset(edge, component), dofs_->gradient_component_size());
  }

  Eigen::VectorXd free_part() const;
  /// Local coefficient vector for one element, in DofMap local layout.
  Eigen::VectorXd gather(const Mesh& mesh, int element) const;
  /// Writes a local vector back; shared edge blocks are overwritten.
  void scatter(const Mesh& mesh, int element, const Eigen::VectorXd& local);

 private:
  const DofMap* dofs_;
  Eigen::VectorXd coefficients_;
};

/// Per-element cached bases and quadrature.
struct ElementData {
  ScaledMonomialBasis interior_basis;  // P_k(T)
  ScaledMonomialBasis hessian_basis;   // P_r(T)
  QuadratureRule quadrature;           // exact to quad_order
};

struct EdgeData {
  LegendreEdgeBasis trace_basis;     // P_k(e)
  LegendreEdgeBasis gradient_basis;  // P_{k-1}(e)
  QuadratureRule quadrature;
};

/// The weak finite element space W_h over a mesh. Keeps a reference to the
/// mesh, which must outlive it.
class WeakSpace {
 public:
  WeakSpace(const Mesh& mesh, SpaceConfig config);

  const Mesh& mesh() const { return *mesh_; }
  const SpaceConfig& config() const { return config_; }
  const DofMap& dofs() const { return dofs_; }
  const ElementData& element(int t) const { return elements_[static_cast<std::size_t>(t)]; }
  const EdgeData& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }

 private:
  const Mesh* mesh_;
  SpaceConfig config_;
  DofMap dofs_;
  std::vector<ElementData> elements_;
  std::vector<EdgeData> edges_;
};

DofMap build_dof_map(const Mesh& mesh, const SpaceConfig& config);

/// L2 projection onto P_m(T) in the element's scaled monomial basis.
Eigen::VectorXd project_element(const ScalarField& g, const Mesh& mesh, int element, int degree,
                                int quad_order);
/// L2 projection onto P_m(e) in the edge's Legendre basis.
Eigen::VectorXd project_edge(const ScalarField& g, const Mesh& mesh, int edge, int degree,
                             int quad_order);

/// Q_h u = {Q_0 u, Q_b u, Q_g grad u}; boundary vb entries are filled too.
WeakFunction interpolate_Qh(const ScalarField& u, const VectorField& grad, const WeakSpace& space);

}  // namespace lswg
