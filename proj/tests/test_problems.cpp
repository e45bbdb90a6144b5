#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "lswg/fespace.hpp"
#include "lswg/problems.hpp"

using namespace lswg;

namespace {

// Central differences of u with step s; truncation error O(s^2), rounding O(eps / s^2).
Eigen::Matrix2d fd_hessian(const ScalarField& u, Point2 p, double s) {
  const auto f = [&](double dx, double dy) { return u({p.x + dx, p.y + dy}); };
  Eigen::Matrix2d h;
  h(0, 0) = (f(s, 0) - 2 * f(0, 0) + f(-s, 0)) / (s * s);
  h(1, 1) = (f(0, s) - 2 * f(0, 0) + f(0, -s)) / (s * s);
  h(0, 1) = h(1, 0) = (f(s, s) - f(s, -s) - f(-s, s) + f(-s, -s)) / (4 * s * s);
  return h;
}

void check_consistency(const Problem& p, double lo, double hi, bool avoid_axes) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(lo, hi);
  for (int n = 0; n < 1000; ++n) {
    Point2 x{u(rng), u(rng)};
    if (avoid_axes && (std::abs(x.x) < 1e-3 || std::abs(x.y) < 1e-3)) continue;
    const Eigen::Matrix2d a = p.coefficient.eval(x);
    const Eigen::Matrix2d hess = p.exact.hess(x);
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff() * hess.cwiseAbs().maxCoeff());
    EXPECT_LE(std::abs(p.source(x) - (a.array() * hess.array()).sum()), 1e-10 * scale);
    EXPECT_LE((fd_hessian(p.exact.u, x, 1e-4) - hess).cwiseAbs().maxCoeff(), 1e-5) << x.x << "," << x.y;
    const double s = 1e-6;
    const Eigen::Vector2d fd((p.exact.u({x.x + s, x.y}) - p.exact.u({x.x - s, x.y})) / (2 * s),
                             (p.exact.u({x.x, x.y + s}) - p.exact.u({x.x, x.y - s})) / (2 * s));
    EXPECT_LE((fd - p.exact.grad(x)).cwiseAbs().maxCoeff(), 1e-8);
  }
}

}  // namespace

TEST(Problems, SmoothBoundaryAndHessian) {
  const Problem p = problem_smooth();
  EXPECT_EQ(p.domain, DomainKind::unit_square);
  for (double t = 0.0; t <= 1.0; t += 0.125) {
    EXPECT_EQ(p.exact.u({0, t}), 0.0);
    EXPECT_EQ(p.exact.u({1, t}), 0.0);
    EXPECT_EQ(p.exact.u({t, 0}), 0.0);
    EXPECT_EQ(p.exact.u({t, 1}), 0.0);
  }
  EXPECT_NEAR(p.exact.hess({0.5, 0.5})(0, 0), -3.0 / 8.0, 1e-15);
  EXPECT_EQ(p.coefficient.eval({0.3, 0.7}), (Eigen::Matrix2d{{2, 1}, {1, 2}}));
}

TEST(Problems, SmoothSelfConsistency) { check_consistency(problem_smooth(), 0.0, 1.0, false); }

TEST(Problems, DiscontinuousSelfConsistency) { check_consistency(problem_discontinuous(), -1.0, 1.0, true); }

TEST(Problems, DiscontinuousCoefficient) {
  const Problem p = problem_discontinuous();
  EXPECT_EQ(p.domain, DomainKind::biunit_square);
  EXPECT_NEAR(p.coefficient.alpha, 16.0 / 9.0, 1e-15);
  EXPECT_NEAR(p.coefficient.beta, 16.0 / 3.0, 1e-15);
  for (const Point2 x : {Point2{0.5, 0.5}, Point2{-0.5, 0.5}, Point2{-0.2, -0.9}, Point2{0.7, -0.1}}) {
    const Eigen::Matrix2d a = p.coefficient.eval(x);
    EXPECT_EQ(a, a.transpose());
    const double s = (x.x * x.y > 0) ? 1.0 : -1.0;
    EXPECT_NEAR(a(0, 1), 16.0 / 9.0 * s, 1e-15);
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(a);
    EXPECT_NEAR(es.eigenvalues()(0), 16.0 / 9.0, 1e-14);
    EXPECT_NEAR(es.eigenvalues()(1), 16.0 / 3.0, 1e-14);
  }
  for (double t = -1.0; t <= 1.0; t += 0.25) {
    if (t == 0.0) continue;
    EXPECT_EQ(p.exact.u({1, t}), 0.0);
    EXPECT_EQ(p.exact.u({-1, t}), 0.0);
    EXPECT_EQ(p.exact.u({t, 1}), 0.0);
    EXPECT_EQ(p.exact.u({t, -1}), 0.0);
  }
  EXPECT_THROW(p.coefficient.eval({0.0, 0.3}), std::domain_error);
  EXPECT_THROW(p.exact.hess({0.3, 0.0}), std::domain_error);
  ASSERT_EQ(p.coefficient.discontinuities.size(), 2u);
}

TEST(Problems, DiscontinuousCoefficientConstantPerElement) {
  const Problem p = problem_discontinuous();
  for (const GridFamily f : {GridFamily::triangular, GridFamily::polygonal}) {
    for (int level = 1; level <= 3; ++level) {
      const Mesh m = generate_grid(f, level, DomainKind::biunit_square);
      for (int t = 0; t < m.num_elements(); ++t) {
        const QuadratureRule q = quad_polygon(m, t, 8);
        const Eigen::Matrix2d first = p.coefficient.eval(q.points[0]);
        for (const Point2& x : q.points) EXPECT_EQ(p.coefficient.eval(x), first);
      }
    }
  }
}

TEST(Problems, PolynomialFamily) {
  const Problem p = problem_polynomial(2, Eigen::Matrix2d::Identity());
  EXPECT_EQ(p.polynomial_degree, 4);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 50; ++n) {
    const double x = u(rng), y = u(rng);
    EXPECT_NEAR(p.source({x, y}), -2 * y * (1 - y) - 2 * x * (1 - x), 1e-14);
    EXPECT_EQ(p.exact.u({0, y}), 0.0);
    EXPECT_EQ(p.exact.u({x, 1}), 0.0);
  }
  EXPECT_EQ(problem_polynomial(3, Eigen::Matrix2d::Identity()).polynomial_degree, 5);
  check_consistency(problem_polynomial(4, Eigen::Matrix2d{{2, 1}, {1, 2}}), 0.0, 1.0, false);
  EXPECT_THROW(problem_polynomial(1, Eigen::Matrix2d::Identity()), std::invalid_argument);
  EXPECT_THROW(problem_polynomial(2, Eigen::Matrix2d{{1, 2}, {0, 1}}), std::invalid_argument);
}

TEST(Problems, Registry) {
  for (const std::string& name : problem_names()) {
    if (name.find('<') == std::string::npos) EXPECT_NO_THROW(problem_by_name(name));
  }
  EXPECT_EQ(problem_by_name("polynomial:3").polynomial_degree, 5);
  EXPECT_THROW(problem_by_name("laplace"), std::invalid_argument);
}
