#include "lswg/problems.hpp"

#include <cmath>
#include <stdexcept>

#include "lswg/polynomial.hpp"

namespace lswg {

Problem problem_smooth() {
  Problem p;
  p.name = "smooth";
  p.domain = DomainKind::unit_square;
  Eigen::Matrix2d a;
  a << 2.0, 1.0, 1.0, 2.0;
  p.coefficient = CoefficientField::constant(a);

  p.exact.u = [](Point2 q) { return (q.x - q.x * q.x * q.x) * (q.y * q.y - q.y * q.y * q.y); };
  p.exact.grad = [](Point2 q) {
    const double x = q.x, y = q.y;
    return Eigen::Vector2d((1.0 - 3.0 * x * x) * (y * y - y * y * y), (x - x * x * x) * (2.0 * y - 3.0 * y * y));
  };
  p.exact.hess = [](Point2 q) {
    const double x = q.x, y = q.y;
    const double uxx = -6.0 * x * (y * y - y * y * y);
    const double uyy = (x - x * x * x) * (2.0 - 6.0 * y);
    const double uxy = (1.0 - 3.0 * x * x) * (2.0 * y - 3.0 * y * y);
    Eigen::Matrix2d h;
    h << uxx, uxy, uxy, uyy;
    return h;
  };
  const auto hess = p.exact.hess;
  p.source = [hess](Point2 q) {
    const Eigen::Matrix2d h = hess(q);
    return 2.0 * h(0, 0) + 2.0 * h(0, 1) + 2.0 * h(1, 1);
  };
  return p;
}

namespace {

double sign_checked(double v) {
  if (v == 0.0) throw std::domain_error("discontinuous problem evaluated on a coordinate axis");
  return v > 0.0 ? 1.0 : -1.0;
}

// One-dimensional factor X(t) = t (1 - e^(1-|t|)) and its derivatives.
double factor(double t) { return t * (1.0 - std::exp(1.0 - std::abs(t))); }
double factor_d1(double t) {
  const double e = std::exp(1.0 - std::abs(t));
  return 1.0 - e + std::abs(t) * e;
}
double factor_d2(double t) { return sign_checked(t) * std::exp(1.0 - std::abs(t)) * (2.0 - std::abs(t)); }

}  // namespace

Problem problem_discontinuous() {
  Problem p;
  p.name = "discontinuous";
  p.domain = DomainKind::biunit_square;
  p.coefficient.eval = [](Point2 q) {
    const double s = sign_checked(q.x) * sign_checked(q.y);
    Eigen::Matrix2d a;
    a << 2.0, s, s, 2.0;
    return Eigen::Matrix2d((16.0 / 9.0) * a);
  };
  p.coefficient.alpha = 16.0 / 9.0;
  p.coefficient.beta = 16.0 / 3.0;
  p.coefficient.discontinuities = {{0, 0.0}, {1, 0.0}};

  p.exact.u = [](Point2 q) { return factor(q.x) * factor(q.y); };
  p.exact.grad = [](Point2 q) {
    return Eigen::Vector2d(factor_d1(q.x) * factor(q.y), factor(q.x) * factor_d1(q.y));
  };
  p.exact.hess = [](Point2 q) {
    const double uxy = factor_d1(q.x) * factor_d1(q.y);
    Eigen::Matrix2d h;
    h << factor_d2(q.x) * factor(q.y), uxy, uxy, factor(q.x) * factor_d2(q.y);
    return h;
  };
  const auto coeff = p.coefficient.eval;
  const auto hess = p.exact.hess;
  p.source = [coeff, hess](Point2 q) { return coeff(q).cwiseProduct(hess(q)).sum(); };
  return p;
}

Problem problem_polynomial(int m, const Eigen::Matrix2d& coefficient) {
  if (m < 2) throw std::invalid_argument("polynomial problem degree must be >= 2");
  if ((coefficient - coefficient.transpose()).cwiseAbs().maxCoeff() > 0.0) {
    throw std::invalid_argument("polynomial problem coefficient must be symmetric");
  }
  Problem p;
  p.name = "polynomial:" + std::to_string(m);
  p.domain = DomainKind::unit_square;
  p.coefficient = CoefficientField::constant(coefficient);
  if (!(p.coefficient.alpha > 0.0)) throw std::invalid_argument("polynomial problem coefficient must be SPD");

  const Polynomial2 x = Polynomial2::monomial(1, 0), y = Polynomial2::monomial(0, 1);
  const Polynomial2 one = Polynomial2::constant(1.0);
  Polynomial2 q;
  for (int d = 0; d <= m - 2; ++d) {
    for (int a = d; a >= 0; --a) q += Polynomial2::monomial(a, d - a, 1.0 / (1.0 + a + 2.0 * (d - a)));
  }
  const Polynomial2 u = x * (one + (-1.0) * x) * y * (one + (-1.0) * y) * q;
  p.polynomial_degree = u.degree();

  const Polynomial2 ux = u.dx(), uy = u.dy();
  const Polynomial2 uxx = ux.dx(), uxy = ux.dy(), uyy = uy.dy();
  const Polynomial2 f = coefficient(0, 0) * uxx + (coefficient(0, 1) + coefficient(1, 0)) * uxy + coefficient(1, 1) * uyy;
  p.exact.u = [u](Point2 pt) { return u(pt); };
  p.exact.grad = [ux, uy](Point2 pt) { return Eigen::Vector2d(ux(pt), uy(pt)); };
  p.exact.hess = [uxx, uxy, uyy](Point2 pt) {
    Eigen::Matrix2d h;
    h << uxx(pt), uxy(pt), uxy(pt), uyy(pt);
    return h;
  };
  p.source = [f](Point2 pt) { return f(pt); };
  return p;
}

Problem problem_by_name(const std::string& name) {
  if (name == "smooth") return problem_smooth();
  if (name == "discontinuous") return problem_discontinuous();
  Eigen::Matrix2d a;
  a << 2.0, 1.0, 1.0, 2.0;
  if (name == "polynomial") return problem_polynomial(2, a);
  const std::string prefix = "polynomial:";
  if (name.rfind(prefix, 0) == 0) {
    try {
      std::size_t used = 0;
      const int m = std::stoi(name.substr(prefix.size()), &used);
      if (used == name.size() - prefix.size()) return problem_polynomial(m, a);
    } catch (const std::logic_error&) {
    }
  }
  throw std::invalid_argument("unknown problem '" + name + "'");
}

std::vector<std::string> problem_names() { return {"smooth", "discontinuous", "polynomial", "polynomial:<m>"}; }

}  // namespace lswg
