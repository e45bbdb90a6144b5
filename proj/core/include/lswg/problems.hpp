#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "lswg/assembly.hpp"
#include "lswg/mesh.hpp"
#include "lswg/postproc.hpp"

namespace lswg {

/// Benchmark problem sum_ij a_ij d2_ij u = f in the domain, u = 0 on its boundary.
struct Problem {
  std::string name;
  DomainKind domain = DomainKind::unit_square;
  CoefficientField coefficient;
  ExactSolution exact;
  ScalarField source;
  /// Total degree of u when it is a polynomial, -1 otherwise.
  int polynomial_degree = -1;
};

/// (0,1)^2, a_ij = 1 + delta_ij, u = (x - x^3)(y^2 - y^3).
Problem problem_smooth();

/// (-1,1)^2, a = 16/9 [[2, s], [s, 2]] with s = sign(xy),
/// u = x y (1 - e^(1-|x|)) (1 - e^(1-|y|)). Coefficient, Hessian and source
/// throw std::domain_error on the axes, which are always mesh lines.
Problem problem_discontinuous();

/// (0,1)^2, constant SPD coefficient, u = x(1-x) y(1-y) q(x, y) where q has
/// degree m - 2 (q = 1 for m = 2), so u has total degree m + 2.
Problem problem_polynomial(int m, const Eigen::Matrix2d& coefficient);

/// "smooth", "discontinuous", "polynomial" (m = 2, a = [[2,1],[1,2]]) or "polynomial:<m>".
Problem problem_by_name(const std::string& name);
std::vector<std::string> problem_names();

}  // namespace lswg
