#include "lswg/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace lswg {

Polynomial2 Polynomial2::constant(double c) { return monomial(0, 0, c); }

Polynomial2 Polynomial2::monomial(int a, int b, double c) {
  Polynomial2 p;
  if (c != 0.0) p.terms_[{a, b}] = c;
  return p;
}

Polynomial2 Polynomial2::random(int degree, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Polynomial2 p;
  for (int d = 0; d <= degree; ++d) {
    for (int a = d; a >= 0; --a) p.terms_[{a, d - a}] = dist(rng);
  }
  return p;
}

int Polynomial2::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

double Polynomial2::coefficient(int a, int b) const {
  const auto it = terms_.find({a, b});
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial2::operator()(Point2 p) const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += c * std::pow(p.x, e.first) * std::pow(p.y, e.second);
  return s;
}

Polynomial2 Polynomial2::dx() const {
  Polynomial2 r;
  for (const auto& [e, c] : terms_) {
    if (e.first > 0) r.terms_[{e.first - 1, e.second}] += c * e.first;
  }
  return r;
}

Polynomial2 Polynomial2::dy() const {
  Polynomial2 r;
  for (const auto& [e, c] : terms_) {
    if (e.second > 0) r.terms_[{e.first, e.second - 1}] += c * e.second;
  }
  return r;
}

Eigen::Vector2d Polynomial2::gradient(Point2 p) const { return {dx()(p), dy()(p)}; }

Eigen::Matrix2d Polynomial2::hessian(Point2 p) const {
  const Polynomial2 px = dx(), py = dy();
  const double xy = px.dy()(p);
  Eigen::Matrix2d h;
  h << px.dx()(p), xy, xy, py.dy()(p);
  return h;
}

Polynomial2& Polynomial2::operator+=(const Polynomial2& o) {
  for (const auto& [e, c] : o.terms_) terms_[e] += c;
  return *this;
}

Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b) {
  Polynomial2 r;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) r.terms_[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  }
  return r;
}

Polynomial2 operator*(double s, Polynomial2 a) {
  for (auto& [e, c] : a.terms_) c *= s;
  return a;
}

}  // namespace lswg
