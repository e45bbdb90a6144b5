#include "lswg/basis.hpp"

#include <algorithm>
#include <cmath>

namespace lswg {

namespace {

// pow for small non-negative integer exponents, exact for 0 and 1.
double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

ScaledMonomialBasis::ScaledMonomialBasis(Point2 center, double scale, int degree)
    : center_(center), scale_(scale), degree_(degree) {
  for (int d = 0; d <= degree; ++d) {
    for (int a = d; a >= 0; --a) exponents_.push_back({a, d - a});
  }
}

int ScaledMonomialBasis::index_of(int a, int b) const {
  const int d = a + b;
  if (a < 0 || b < 0 || d > degree_) return -1;
  return dimension(d - 1) + (d - a);
}

Eigen::VectorXd ScaledMonomialBasis::values(Point2 p) const {
  const double x = (p.x - center_.x) / scale_;
  const double y = (p.y - center_.y) / scale_;
  Eigen::VectorXd v(size());
  for (int i = 0; i < size(); ++i) {
    const auto [a, b] = exponents(i);
    v(i) = ipow(x, a) * ipow(y, b);
  }
  return v;
}

Eigen::Matrix<double, 2, Eigen::Dynamic> ScaledMonomialBasis::gradients(Point2 p) const {
  const double x = (p.x - center_.x) / scale_;
  const double y = (p.y - center_.y) / scale_;
  Eigen::Matrix<double, 2, Eigen::Dynamic> g(2, size());
  for (int i = 0; i < size(); ++i) {
    const auto [a, b] = exponents(i);
    g(0, i) = a == 0 ? 0.0 : a * ipow(x, a - 1) * ipow(y, b) / scale_;
    g(1, i) = b == 0 ? 0.0 : b * ipow(x, a) * ipow(y, b - 1) / scale_;
  }
  return g;
}

Eigen::Matrix<double, 3, Eigen::Dynamic> ScaledMonomialBasis::hessians(Point2 p) const {
  const double x = (p.x - center_.x) / scale_;
  const double y = (p.y - center_.y) / scale_;
  const double s2 = scale_ * scale_;
  Eigen::Matrix<double, 3, Eigen::Dynamic> h(3, size());
  for (int i = 0; i < size(); ++i) {
    const auto [a, b] = exponents(i);
    h(0, i) = a < 2 ? 0.0 : a * (a - 1) * ipow(x, a - 2) * ipow(y, b) / s2;
    h(1, i) = (a < 1 || b < 1) ? 0.0 : a * b * ipow(x, a - 1) * ipow(y, b - 1) / s2;
    h(2, i) = b < 2 ? 0.0 : b * (b - 1) * ipow(x, a) * ipow(y, b - 2) / s2;
  }
  return h;
}

double ScaledMonomialBasis::evaluate(const Eigen::VectorXd& coefficients, Point2 p) const {
  return coefficients.dot(values(p));
}

LegendreEdgeBasis::LegendreEdgeBasis(Point2 a, Point2 b, int degree)
    : a_(a), b_(b), length_sq_(dot(b - a, b - a)), degree_(degree) {}

double LegendreEdgeBasis::parameter(Point2 p) const {
  return 2.0 * dot(p - a_, b_ - a_) / length_sq_ - 1.0;
}

Eigen::VectorXd LegendreEdgeBasis::values_at(double s) const {
  Eigen::VectorXd v(size());
  for (int n = 0; n < size(); ++n) v(n) = std::legendre(static_cast<unsigned>(n), s);
  return v;
}

Eigen::VectorXd LegendreEdgeBasis::values(Point2 p) const {
  // Points on the edge may land a rounding error outside [-1, 1].
  return values_at(std::clamp(parameter(p), -1.0, 1.0));
}

double LegendreEdgeBasis::evaluate(const Eigen::VectorXd& coefficients, Point2 p) const {
  return coefficients.dot(values(p));
}

ScaledMonomialBasis element_basis(const Mesh& mesh, int element, int degree) {
  const Element& el = mesh.element(element);
  return ScaledMonomialBasis(el.centroid, el.diameter, degree);
}

LegendreEdgeBasis edge_basis(const Mesh& mesh, int edge, int degree) {
  const Edge& e = mesh.edge(edge);
  return LegendreEdgeBasis(mesh.vertex(e.vertices[0]), mesh.vertex(e.vertices[1]), degree);
}

}  // namespace lswg
