#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lswg/assembly.hpp"
#include "lswg/fespace.hpp"
#include "lswg/fields.hpp"
#include "lswg/weak_hessian.hpp"

namespace lswg {

/// Exact solution with first and second derivatives. Piecewise-analytic
/// fields are allowed as long as their kinks lie on mesh lines.
struct ExactSolution {
  ScalarField u;
  VectorField grad;
  MatrixField hess;
};

/// sqrt(sum_T int_T (u - u0)^2), element quadrature of order quad_order + 2.
double l2_error(const ExactSolution& exact, const WeakFunction& uh, const WeakSpace& space);

/// sqrt(sum_T sum_ij int_T (d2_ij u - d2_{ij,w} uh)^2).
double h2w_error(const ExactSolution& exact, const WeakFunction& uh, const WeakSpace& space,
                 const std::vector<WeakHessianOperator>& ops);

/// |||v||| = (a(v, v) + s(v, v))^(1/2), summed element by element.
double triple_norm(const WeakFunction& v, const WeakSpace& space, const std::vector<WeakHessianOperator>& ops,
                   const CoefficientField& coeff);

/// r_i = log(e_{i-1} / e_i) / log(h_{i-1} / h_i). Entry 0 and any pair with a
/// non-positive error are absent.
std::vector<std::optional<double>> rates(std::span<const double> errors, std::span<const double> hs);

struct ConvergenceRow {
  int level = 0;
  double h = 0.0;
  long ndof = 0;
  double l2_error = 0.0;
  std::optional<double> l2_rate;
  double h2w_error = 0.0;
  std::optional<double> h2w_rate;
  int iterations = 0;
  double seconds = 0.0;
};

struct ConvergenceReport {
  /// Configuration echo written as "# key = value" lines.
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<ConvergenceRow> rows;

  /// Fills l2_rate and h2w_rate from consecutive rows.
  void compute_rates();
  std::string config_value(const std::string& key) const;
};

enum class ReportFormat { csv, paper_table };
ReportFormat parse_report_format(const std::string& name);

inline constexpr const char* kCsvHeader = "level,h,ndof,l2_error,l2_rate,h2w_error,h2w_rate,iters,seconds";

std::string emit_report(const ConvergenceReport& report, ReportFormat format);
/// Inverse of emit_report(csv). Throws std::runtime_error on schema mismatch.
ConvergenceReport parse_csv(std::istream& in);

/// Mantissa-exponent form 0.dddE+dd, e.g. 0.00092712 -> "0.927E-03".
std::string format_sci(double value);
/// One decimal, or "---" when absent.
std::string format_rate(const std::optional<double>& rate);

}  // namespace lswg
