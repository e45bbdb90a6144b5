#pragma once

#include <map>
#include <random>
#include <utility>

#include <Eigen/Core>

#include "lswg/mesh.hpp"

namespace lswg {

/// Bivariate polynomial sum c_ab x^a y^b in global coordinates.
class Polynomial2 {
 public:
  using Exponents = std::pair<int, int>;

  Polynomial2() = default;
  static Polynomial2 constant(double c);
  static Polynomial2 monomial(int a, int b, double c = 1.0);
  /// Coefficients uniform in [-1, 1] for every monomial of degree <= `degree`.
  static Polynomial2 random(int degree, std::mt19937_64& rng);

  int degree() const;
  double coefficient(int a, int b) const;
  const std::map<Exponents, double>& terms() const { return terms_; }

  double operator()(Point2 p) const;
  Polynomial2 dx() const;
  Polynomial2 dy() const;
  Eigen::Vector2d gradient(Point2 p) const;
  Eigen::Matrix2d hessian(Point2 p) const;

  Polynomial2& operator+=(const Polynomial2& o);
  friend Polynomial2 operator+(Polynomial2 a, const Polynomial2& b) { return a += b; }
  friend Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b);
  friend Polynomial2 operator*(double s, Polynomial2 a);

 private:
  std::map<Exponents, double> terms_;
};

}  // namespace lswg
