#pragma once

#include <array>
#include <span>
#include <vector>

#include "lswg/mesh.hpp"

namespace lswg {

/// Raised for polygons that cannot be triangulated or integrated over.
class GeometryError : public MeshError {
 public:
  using MeshError::MeshError;
};

/// Points in physical coordinates; weights carry the area or length measure.
struct QuadratureRule {
  std::vector<Point2> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
  double weight_sum() const;
};

/// n-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int npoints);

/// Ear-clipping triangulation of a simple counterclockwise polygon.
/// Collinear vertices are dropped without emitting a sliver triangle.
std::vector<std::array<int, 3>> ear_clip(std::span<const Point2> polygon);

/// Collapsed-coordinate Gauss rule exact for polynomials of total degree `order`.
QuadratureRule quad_triangle(Point2 a, Point2 b, Point2 c, int order);
QuadratureRule quad_polygon(std::span<const Point2> polygon, int order);
QuadratureRule quad_polygon(const Mesh& mesh, int element, int order);
/// Gauss-Legendre on the segment [a, b], exact to degree `order`.
QuadratureRule quad_edge(Point2 a, Point2 b, int order);
QuadratureRule quad_edge(const Mesh& mesh, int edge, int order);

}  // namespace lswg
