#include "lswg/postproc.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace lswg {

double l2_error(const ExactSolution& exact, const WeakFunction& uh, const WeakSpace& space) {
  const Mesh& mesh = space.mesh();
  double sum = 0.0;
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const auto rule = quad_polygon(mesh, t, space.config().quad_order + 2);
    const auto& basis = space.element(t).interior_basis;
    const Eigen::VectorXd coeffs = uh.interior(t);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double diff = exact.u(rule.points[q]) - basis.evaluate(coeffs, rule.points[q]);
      sum += rule.weights[q] * diff * diff;
    }
  }
  return std::sqrt(sum);
}

double h2w_error(const ExactSolution& exact, const WeakFunction& uh, const WeakSpace& space,
                 const std::vector<WeakHessianOperator>& ops) {
  const Mesh& mesh = space.mesh();
  double sum = 0.0;
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const auto rule = quad_polygon(mesh, t, space.config().quad_order + 2);
    const auto weak = eval_weak_hessian_at(ops[static_cast<std::size_t>(t)], uh.gather(mesh, t), rule.points);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      sum += rule.weights[q] * (exact.hess(rule.points[q]) - weak[q]).squaredNorm();
    }
  }
  return std::sqrt(sum);
}

double triple_norm(const WeakFunction& v, const WeakSpace& space, const std::vector<WeakHessianOperator>& ops,
                   const CoefficientField& coeff) {
  const Mesh& mesh = space.mesh();
  double sum = 0.0;
  for (int t = 0; t < mesh.num_elements(); ++t) {
    const Eigen::VectorXd local = v.gather(mesh, t);
    const Eigen::MatrixXd block =
        local_ls_block(space, ops[static_cast<std::size_t>(t)], coeff) + local_stabilizer(space, t);
    sum += local.dot(block * local);
  }
  return std::sqrt(std::max(sum, 0.0));
}

std::vector<std::optional<double>> rates(std::span<const double> errors, std::span<const double> hs) {
  if (errors.size() != hs.size()) throw std::invalid_argument("errors and mesh sizes differ in length");
  std::vector<std::optional<double>> out(errors.size());
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (!(errors[i - 1] > 0.0) || !(errors[i] > 0.0) || !(hs[i - 1] > 0.0) || !(hs[i] > 0.0) || hs[i - 1] == hs[i]) {
      continue;
    }
    out[i] = std::log(errors[i - 1] / errors[i]) / std::log(hs[i - 1] / hs[i]);
  }
  return out;
}

void ConvergenceReport::compute_rates() {
  std::vector<double> hs, l2, h2;
  for (const auto& r : rows) {
    hs.push_back(r.h);
    l2.push_back(r.l2_error);
    h2.push_back(r.h2w_error);
  }
  const auto l2r = rates(l2, hs);
  const auto h2r = rates(h2, hs);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].l2_rate = l2r[i];
    rows[i].h2w_rate = h2r[i];
  }
}

std::string ConvergenceReport::config_value(const std::string& key) const {
  for (const auto& [k, v] : config) {
    if (k == key) return v;
  }
  return {};
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "table" || name == "paper_table") return ReportFormat::paper_table;
  throw std::invalid_argument("unknown output format '" + name + "'");
}

std::string format_sci(double value) {
  if (value == 0.0) return "0.000E+00";
  if (!std::isfinite(value)) return std::isnan(value) ? "NaN" : (value > 0 ? "Inf" : "-Inf");
  // printf rounds d.ddE+xx correctly; shift the point one place left.
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2E", std::abs(value));
  const std::string s(buf);
  const int exponent = std::atoi(s.c_str() + s.find('E') + 1) + 1;
  char out[40];
  std::snprintf(out, sizeof out, "%s0.%c%c%cE%c%02d", value < 0 ? "-" : "", s[0], s[2], s[3],
                exponent < 0 ? '-' : '+', std::abs(exponent));
  return out;
}

std::string format_rate(const std::optional<double>& rate) {
  if (!rate) return "---";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", *rate);
  return buf;
}

namespace {

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string full(const std::optional<double>& v) { return v ? full(*v) : std::string(); }

}  // namespace

std::string emit_report(const ConvergenceReport& report, ReportFormat format) {
  std::ostringstream os;
  if (format == ReportFormat::csv) {
    for (const auto& [k, v] : report.config) os << "# " << k << " = " << v << '\n';
    os << kCsvHeader << '\n';
    for (const auto& r : report.rows) {
      os << r.level << ',' << full(r.h) << ',' << r.ndof << ',' << full(r.l2_error) << ',' << full(r.l2_rate)
         << ',' << full(r.h2w_error) << ',' << full(r.h2w_rate) << ',' << r.iterations << ',' << full(r.seconds)
         << '\n';
    }
    return os.str();
  }

  if (!report.config.empty()) {
    os << '#';
    for (const auto& [k, v] : report.config) os << ' ' << k << '=' << v;
    os << '\n';
  }
  char line[160];
  std::snprintf(line, sizeof line, "%-9s| %-12s %-7s| %-20s %-7s\n", "Grid G_i", "||u-u_h||_0", "O(h^r)",
                "||D^2_w(u-u_h)||_0", "O(h^r)");
  os << line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof line, "%-9d| %-12s %-7s| %-20s %-7s\n", r.level, format_sci(r.l2_error).c_str(),
                  format_rate(r.l2_rate).c_str(), format_sci(r.h2w_error).c_str(), format_rate(r.h2w_rate).c_str());
    os << line;
  }
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(s);
  while (std::getline(is, field, sep)) out.push_back(field);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, int lineno) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::runtime_error("csv line " + std::to_string(lineno) + ": bad number '" + s + "'");
  }
  return v;
}

long parse_long(const std::string& s, int lineno) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw std::runtime_error("csv line " + std::to_string(lineno) + ": bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

ConvergenceReport parse_csv(std::istream& in) {
  ConvergenceReport report;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        report.config.emplace_back(trim(line.substr(1, eq - 1)), trim(line.substr(eq + 1)));
      }
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader) {
        throw std::runtime_error("csv line " + std::to_string(lineno) + ": expected header '" + kCsvHeader + "'");
      }
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 9) {
      throw std::runtime_error("csv line " + std::to_string(lineno) + ": expected 9 fields, got " +
                               std::to_string(f.size()));
    }
    ConvergenceRow r;
    r.level = static_cast<int>(parse_long(f[0], lineno));
    r.h = parse_double(f[1], lineno);
    r.ndof = parse_long(f[2], lineno);
    r.l2_error = parse_double(f[3], lineno);
    if (!f[4].empty()) r.l2_rate = parse_double(f[4], lineno);
    r.h2w_error = parse_double(f[5], lineno);
    if (!f[6].empty()) r.h2w_rate = parse_double(f[6], lineno);
    r.iterations = static_cast<int>(parse_long(f[7], lineno));
    r.seconds = parse_double(f[8], lineno);
    report.rows.push_back(r);
  }
  if (!header_seen) throw std::runtime_error("csv input has no header line");
  return report;
}

}  // namespace lswg
