#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "lswg/mesh.hpp"

namespace lswg {

/// Monomials ((x - xc)/h)^a ((y - yc)/h)^b with a + b <= degree, ordered by
/// total degree and then by decreasing power of x.
class ScaledMonomialBasis {
 public:
  ScaledMonomialBasis() = default;
  ScaledMonomialBasis(Point2 center, double scale, int degree);

  static int dimension(int degree) { return degree < 0 ? 0 : (degree + 1) * (degree + 2) / 2; }

  int degree() const { return degree_; }
  int size() const { return dimension(degree_); }
  Point2 center() const { return center_; }
  double scale() const { return scale_; }
  const std::array<int, 2>& exponents(int i) const { return exponents_[static_cast<std::size_t>(i)]; }
  /// Index of the monomial with the given exponents, or -1 if outside the space.
  int index_of(int a, int b) const;

  Eigen::VectorXd values(Point2 p) const;
  /// Row 0: d/dx, row 1: d/dy.
  Eigen::Matrix<double, 2, Eigen::Dynamic> gradients(Point2 p) const;
  /// Rows: d2/dx2, d2/dxdy, d2/dy2.
  Eigen::Matrix<double, 3, Eigen::Dynamic> hessians(Point2 p) const;

  double evaluate(const Eigen::VectorXd& coefficients, Point2 p) const;

 private:
  Point2 center_;
  double scale_ = 1.0;
  int degree_ = 0;
  std::vector<std::array<int, 2>> exponents_;
};

/// Legendre polynomials in the arclength parameter s in [-1, 1] running from
/// the first stored edge vertex to the second.
class LegendreEdgeBasis {
 public:
  LegendreEdgeBasis() = default;
  LegendreEdgeBasis(Point2 a, Point2 b, int degree);

  static int dimension(int degree) { return degree < 0 ? 0 : degree + 1; }
  int degree() const { return degree_; }
  int size() const { return dimension(degree_); }

  double parameter(Point2 p) const;
  Eigen::VectorXd values(Point2 p) const;
  Eigen::VectorXd values_at(double s) const;
  double evaluate(const Eigen::VectorXd& coefficients, Point2 p) const;

 private:
  Point2 a_, b_;
  double length_sq_ = 1.0;
  int degree_ = 0;
};

ScaledMonomialBasis element_basis(const Mesh& mesh, int element, int degree);
LegendreEdgeBasis edge_basis(const Mesh& mesh, int edge, int degree);

}  // namespace lswg
