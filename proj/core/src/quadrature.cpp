#include "lswg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace lswg {

double QuadratureRule::weight_sum() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

GaussLegendre gauss_legendre(int npoints) {
  if (npoints < 1) throw GeometryError("Gauss-Legendre rule needs at least one point");
  const auto n = static_cast<unsigned>(npoints);
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (unsigned i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-like initial guess, refined by Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(n, x);
      const double pm1 = std::legendre(n - 1, x);
      dp = n * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      const double p = std::legendre(n, x);
      const double pm1 = std::legendre(n - 1, x);
      dp = n * (x * p - pm1) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

bool in_triangle_closed(Point2 p, Point2 a, Point2 b, Point2 c) {
  return cross(b - a, p - a) >= 0.0 && cross(c - b, p - b) >= 0.0 && cross(a - c, p - c) >= 0.0;
}

}  // namespace

std::vector<std::array<int, 3>> ear_clip(std::span<const Point2> polygon) {
  std::vector<int> remaining(polygon.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<std::array<int, 3>> triangles;
  if (polygon.size() < 3) throw GeometryError("polygon has fewer than 3 vertices");

  double scale = 0.0;
  for (const auto& p : polygon) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  const double area_tol = 1e-14 * std::max(scale * scale, 1e-300);

  while (remaining.size() > 3) {
    const std::size_t m = remaining.size();
    bool clipped = false;
    for (std::size_t i = 0; i < m && !clipped; ++i) {
      const int ip = remaining[(i + m - 1) % m];
      const int ic = remaining[i];
      const int in = remaining[(i + 1) % m];
      const Point2 a = polygon[static_cast<std::size_t>(ip)];
      const Point2 b = polygon[static_cast<std::size_t>(ic)];
      const Point2 c = polygon[static_cast<std::size_t>(in)];
      const double turn = cross(b - a, c - b);
      if (std::abs(turn) <= area_tol) {
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(i));
        clipped = true;
        break;
      }
      if (turn < 0.0) continue;  // reflex
      bool ear = true;
      for (int v : remaining) {
        if (v == ip || v == ic || v == in) continue;
        const Point2 p = polygon[static_cast<std::size_t>(v)];
        if (p == a || p == b || p == c) continue;
        if (in_triangle_closed(p, a, b, c)) {
          ear = false;
          break;
        }
      }
      if (!ear) continue;
      triangles.push_back({ip, ic, in});
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
    }
    if (!clipped) throw GeometryError("ear clipping failed: polygon is not simple or not counterclockwise");
  }
  const Point2 a = polygon[static_cast<std::size_t>(remaining[0])];
  const Point2 b = polygon[static_cast<std::size_t>(remaining[1])];
  const Point2 c = polygon[static_cast<std::size_t>(remaining[2])];
  const double last = cross(b - a, c - a);
  if (last > area_tol) {
    triangles.push_back({remaining[0], remaining[1], remaining[2]});
  } else if (last < -area_tol) {
    throw GeometryError("ear clipping failed: polygon is not counterclockwise");
  }
  if (triangles.empty()) throw GeometryError("degenerate polygon");
  return triangles;
}

QuadratureRule quad_triangle(Point2 a, Point2 b, Point2 c, int order) {
  const double jac = cross(b - a, c - a);  // twice the signed area
  if (jac <= 0.0) throw GeometryError("degenerate or clockwise triangle");
  order = std::max(order, 0);
  // After the collapse (u, v) = (xi (1 - eta), xi eta) the integrand has degree
  // order + 1 in xi (Jacobian factor xi) and degree order in eta.
  const auto gx = gauss_legendre((order + 3) / 2);
  const auto ge = gauss_legendre((order + 2) / 2);
  QuadratureRule rule;
  rule.points.reserve(gx.nodes.size() * ge.nodes.size());
  rule.weights.reserve(gx.nodes.size() * ge.nodes.size());
  for (std::size_t i = 0; i < gx.nodes.size(); ++i) {
    const double xi = 0.5 * (gx.nodes[i] + 1.0);
    for (std::size_t j = 0; j < ge.nodes.size(); ++j) {
      const double eta = 0.5 * (ge.nodes[j] + 1.0);
      const double u = xi * (1.0 - eta);
      const double v = xi * eta;
      rule.points.push_back(a + u * (b - a) + v * (c - a));
      rule.weights.push_back(0.25 * gx.weights[i] * ge.weights[j] * xi * jac);
    }
  }
  return rule;
}

QuadratureRule quad_polygon(std::span<const Point2> polygon, int order) {
  QuadratureRule rule;
  if (polygon.size() == 3) return quad_triangle(polygon[0], polygon[1], polygon[2], order);
  for (const auto& tri : ear_clip(polygon)) {
    auto part = quad_triangle(polygon[static_cast<std::size_t>(tri[0])],
                              polygon[static_cast<std::size_t>(tri[1])],
                              polygon[static_cast<std::size_t>(tri[2])], order);
    rule.points.insert(rule.points.end(), part.points.begin(), part.points.end());
    rule.weights.insert(rule.weights.end(), part.weights.begin(), part.weights.end());
  }
  return rule;
}

QuadratureRule quad_polygon(const Mesh& mesh, int element, int order) {
  const auto pts = mesh.element_points(element);
  return quad_polygon(pts, order);
}

QuadratureRule quad_edge(Point2 a, Point2 b, int order) {
  const double length = norm(b - a);
  if (length == 0.0) throw GeometryError("zero-length edge");
  const auto g = gauss_legendre(std::max(order, 0) / 2 + 1);
  QuadratureRule rule;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double t = 0.5 * (g.nodes[i] + 1.0);
    rule.points.push_back(a + t * (b - a));
    rule.weights.push_back(0.5 * length * g.weights[i]);
  }
  return rule;
}

QuadratureRule quad_edge(const Mesh& mesh, int edge, int order) {
  const Edge& e = mesh.edge(edge);
  return quad_edge(mesh.vertex(e.vertices[0]), mesh.vertex(e.vertices[1]), order);
}

}  // namespace lswg
