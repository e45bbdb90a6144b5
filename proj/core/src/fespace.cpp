#include "lswg/fespace.hpp"

#include <Eigen/Cholesky>

#include "lswg/parallel.hpp"

namespace lswg {

SpaceConfig SpaceConfig::make(int k, std::optional<int> r, std::optional<int> quad_order) {
  SpaceConfig c;
  c.k = k;
  c.r = r.value_or(k);
  c.quad_order = quad_order.value_or(2 * k + 2);
  c.check();
  return c;
}

void SpaceConfig::check() const {
  if (k < 2) throw ConfigurationError("degree k must be >= 2, got " + std::to_string(k));
  if (r < k - 2 || r > k) {
    throw ConfigurationError("weak Hessian degree r must lie in [k-2, k], got r=" +
                             std::to_string(r) + " for k=" + std::to_string(k));
  }
  if (quad_order < 0) throw ConfigurationError("quadrature order must be non-negative");
}

DofMap::DofMap(const Mesh& mesh, const SpaceConfig& config)
    : interior_size_(ScaledMonomialBasis::dimension(config.k)),
      trace_size_(LegendreEdgeBasis::dimension(config.k)),
      gradient_component_size_(LegendreEdgeBasis::dimension(config.k - 1)) {
  trace_base_ = mesh.num_elements() * interior_size_;
  gradient_base_ = trace_base_ + mesh.num_edges() * trace_size_;
  total_ = gradient_base_ + mesh.num_edges() * gradient_size();

  global_to_free_.assign(static_cast<std::size_t>(total_), 0);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!mesh.edge(e).is_boundary) continue;
    for (int i = 0; i < trace_size_; ++i) global_to_free_[static_cast<std::size_t>(trace_offset(e) + i)] = -1;
  }
  free_to_global_.reserve(static_cast<std::size_t>(total_));
  for (int g = 0; g < total_; ++g) {
    if (global_to_free_[static_cast<std::size_t>(g)] < 0) continue;
    global_to_free_[static_cast<std::size_t>(g)] = static_cast<int>(free_to_global_.size());
    free_to_global_.push_back(g);
  }
}

std::vector<int> DofMap::local_to_global(const Mesh& mesh, int element) const {
  const Element& el = mesh.element(element);
  const int ne = static_cast<int>(el.edges.size());
  std::vector<int> map(static_cast<std::size_t>(local_size(ne)));
  auto out = map.begin();
  for (int i = 0; i < interior_size_; ++i) *out++ = interior_offset(element) + i;
  for (int e : el.edges) {
    for (int i = 0; i < trace_size_; ++i) *out++ = trace_offset(e) + i;
  }
  for (int e : el.edges) {
    for (int i = 0; i < gradient_size(); ++i) *out++ = gradient_offset(e, 0) + i;
  }
  return map;
}

DofMap build_dof_map(const Mesh& mesh, const SpaceConfig& config) {
  config.check();
  return DofMap(mesh, config);
}

WeakFunction::WeakFunction(const DofMap& dofs)
    : dofs_(&dofs), coefficients_(Eigen::VectorXd::Zero(dofs.total())) {}

WeakFunction::WeakFunction(const DofMap& dofs, Eigen::VectorXd coefficients)
    : dofs_(&dofs), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != dofs.total()) {
    throw ConfigurationError("weak function length does not match the DOF map");
  }
}

WeakFunction WeakFunction::from_free(const DofMap& dofs, const Eigen::VectorXd& free) {
  if (free.size() != dofs.num_free()) throw ConfigurationError("free vector length mismatch");
  WeakFunction w(dofs);
  const auto& f2g = dofs.free_to_global();
  for (std::size_t i = 0; i < f2g.size(); ++i) w.coefficients_(f2g[i]) = free(static_cast<Eigen::Index>(i));
  return w;
}

Eigen::VectorXd WeakFunction::free_part() const {
  const auto& f2g = dofs_->free_to_global();
  Eigen::VectorXd v(static_cast<Eigen::Index>(f2g.size()));
  for (std::size_t i = 0; i < f2g.size(); ++i) v(static_cast<Eigen::Index>(i)) = coefficients_(f2g[i]);
  return v;
}

Eigen::VectorXd WeakFunction::gather(const Mesh& mesh, int element) const {
  const auto map = dofs_->local_to_global(mesh, element);
  Eigen::VectorXd local(static_cast<Eigen::Index>(map.size()));
  for (std::size_t i = 0; i < map.size(); ++i) local(static_cast<Eigen::Index>(i)) = coefficients_(map[i]);
  return local;
}

void WeakFunction::scatter(const Mesh& mesh, int element, const Eigen::VectorXd& local) {
  const auto map = dofs_->local_to_global(mesh, element);
  if (local.size() != static_cast<Eigen::Index>(map.size())) {
    throw ConfigurationError("local vector length mismatch in scatter");
  }
  for (std::size_t i = 0; i < map.size(); ++i) coefficients_(map[i]) = local(static_cast<Eigen::Index>(i));
}

WeakSpace::WeakSpace(const Mesh& mesh, SpaceConfig config)
    : mesh_(&mesh), config_(config), dofs_(build_dof_map(mesh, config)) {
  elements_.resize(static_cast<std::size_t>(mesh.num_elements()));
  edges_.resize(static_cast<std::size_t>(mesh.num_edges()));
  parallel_for(mesh.num_elements(), [&](int begin, int end) {
    for (int t = begin; t < end; ++t) {
      auto& d = elements_[static_cast<std::size_t>(t)];
      d.interior_basis = element_basis(mesh, t, config_.k);
      d.hessian_basis = element_basis(mesh, t, config_.r);
      d.quadrature = quad_polygon(mesh, t, config_.quad_order);
    }
  });
  for (int e = 0; e < mesh.num_edges(); ++e) {
    auto& d = edges_[static_cast<std::size_t>(e)];
    d.trace_basis = edge_basis(mesh, e, config_.k);
    d.gradient_basis = edge_basis(mesh, e, config_.k - 1);
    d.quadrature = quad_edge(mesh, e, config_.quad_order);
  }
}

namespace {

template <typename Basis>
Eigen::VectorXd l2_project(const ScalarField& g, const Basis& basis, const QuadratureRule& rule) {
  const int n = basis.size();
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd phi = basis.values(rule.points[q]);
    mass.noalias() += rule.weights[q] * phi * phi.transpose();
    rhs += rule.weights[q] * g(rule.points[q]) * phi;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(mass);
  if (llt.info() != Eigen::Success) throw GeometryError("singular local mass matrix");
  return llt.solve(rhs);
}

}  // namespace

Eigen::VectorXd project_element(const ScalarField& g, const Mesh& mesh, int element, int degree,
                                int quad_order) {
  return l2_project(g, element_basis(mesh, element, degree), quad_polygon(mesh, element, quad_order));
}

Eigen::VectorXd project_edge(const ScalarField& g, const Mesh& mesh, int edge, int degree,
                             int quad_order) {
  return l2_project(g, edge_basis(mesh, edge, degree), quad_edge(mesh, edge, quad_order));
}

WeakFunction interpolate_Qh(const ScalarField& u, const VectorField& grad, const WeakSpace& space) {
  const Mesh& mesh = space.mesh();
  WeakFunction w(space.dofs());
  parallel_for(mesh.num_elements(), [&](int begin, int end) {
    for (int t = begin; t < end; ++t) {
      const auto& d = space.element(t);
      w.interior(t) = l2_project(u, d.interior_basis, d.quadrature);
    }
  });
  parallel_for(mesh.num_edges(), [&](int begin, int end) {
    for (int e = begin; e < end; ++e) {
      const auto& d = space.edge(e);
      w.trace(e) = l2_project(u, d.trace_basis, d.quadrature);
      for (int c = 0; c < 2; ++c) {
        w.gradient(e, c) = l2_project([&](Point2 p) { return grad(p)(c); }, d.gradient_basis, d.quadrature);
      }
    }
  });
  return w;
}

}  // namespace lswg
