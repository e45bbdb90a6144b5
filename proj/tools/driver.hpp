#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lswg/mesh.hpp"
#include "lswg/postproc.hpp"
#include "lswg/solver.hpp"

namespace lswg::cli {

enum ExitCode { kOk = 0, kConfigError = 2, kSolverError = 3, kIoError = 4 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string problem = "smooth";
  int k = 2;
  std::optional<int> r;
  std::optional<int> quad_order;
  GridFamily grid = GridFamily::triangular;
  int level_min = 2;
  int level_max = 5;
  SolverOptions solver;
  /// Empty writes to stdout.
  std::string out;
  ReportFormat format = ReportFormat::csv;
  /// When false the seconds column is written as 0 so repeated runs are byte-identical.
  bool timing = true;
  /// Writes "<prefix>_L<level>.txt" with the assembled matrix as triplets.
  std::string matrix_prefix;

  void check() const;
};

/// "a:b" or "a".
std::pair<int, int> parse_levels(const std::string& text);

/// Applies "key = value" lines to cfg. Blank lines and lines starting with '#' are ignored.
/// Keys: problem, degree, hessian_degree, quad_order, grid, levels, solver,
/// preconditioner, tol, max_iter, out, format, timing, export_matrix.
void apply_config_text(RunConfig& cfg, std::istream& in);
void apply_config_file(RunConfig& cfg, const std::string& path);
/// Single key/value; throws ConfigError on an unknown key or bad value.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Runs every level and returns the report with rates and the configuration echo.
/// Progress and solver warnings go to `log` when it is non-null.
ConvergenceReport run_study(const RunConfig& cfg, std::ostream* log = nullptr);

/// run_study, then writes the report to cfg.out (or `out` when cfg.out is empty).
void cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream* log = nullptr);

void cmd_mesh(GridFamily family, int level, DomainKind domain, const std::string& path);

/// Reads csv reports and renders them as consecutive paper-style tables.
std::string cmd_table(const std::vector<std::string>& csv_paths);

/// Maps the exception currently being handled to an exit code and writes a diagnostic.
int report_exception(std::ostream& err);

}  // namespace lswg::cli
