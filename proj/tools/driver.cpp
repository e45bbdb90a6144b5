#include "driver.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lswg/assembly.hpp"
#include "lswg/fespace.hpp"
#include "lswg/problems.hpp"
#include "lswg/study.hpp"

namespace lswg::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw ConfigError(key + ": expected an integer, got '" + value + "'");
  return v;
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw ConfigError(key + ": expected a number, got '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "on" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "off" || value == "no" || value == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

// Rethrows parse failures from the core library as ConfigError.
template <typename F>
auto as_config(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

}  // namespace

void RunConfig::check() const {
  if (k < 2 || k > 5) throw ConfigError("degree must lie in [2, 5], got " + std::to_string(k));
  if (level_min < 1 || level_max < level_min) {
    throw ConfigError("levels must be a nonempty ascending range starting at 1 or above");
  }
  as_config("space", [&] { return SpaceConfig::make(k, r, quad_order); });
  as_config("solver", [&] {
    solver.check();
    return 0;
  });
  as_config("problem", [&] { return problem_by_name(problem).name; });
}

std::pair<int, int> parse_levels(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const int l = parse_int("levels", trim(text));
    return {l, l};
  }
  const int a = parse_int("levels", trim(text.substr(0, colon)));
  const int b = parse_int("levels", trim(text.substr(colon + 1)));
  if (b < a) throw ConfigError("levels: range '" + text + "' is descending");
  return {a, b};
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "problem") {
    cfg.problem = value;
  } else if (key == "degree") {
    cfg.k = parse_int(key, value);
  } else if (key == "hessian_degree") {
    cfg.r = parse_int(key, value);
  } else if (key == "quad_order") {
    cfg.quad_order = parse_int(key, value);
  } else if (key == "grid") {
    cfg.grid = as_config(key, [&] { return parse_grid_family(value); });
  } else if (key == "levels") {
    std::tie(cfg.level_min, cfg.level_max) = parse_levels(value);
  } else if (key == "solver") {
    cfg.solver.method = as_config(key, [&] { return parse_solver_method(value); });
  } else if (key == "preconditioner") {
    cfg.solver.preconditioner = as_config(key, [&] { return parse_preconditioner(value); });
  } else if (key == "tol") {
    cfg.solver.rel_tolerance = parse_real(key, value);
  } else if (key == "max_iter") {
    cfg.solver.max_iterations = parse_int(key, value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "format") {
    cfg.format = as_config(key, [&] { return parse_report_format(value); });
  } else if (key == "timing") {
    cfg.timing = parse_bool(key, value);
  } else if (key == "export_matrix") {
    cfg.matrix_prefix = value;
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

void apply_config_text(RunConfig& cfg, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    try {
      apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  apply_config_text(cfg, in);
}

ConvergenceReport run_study(const RunConfig& cfg, std::ostream* log) {
  cfg.check();
  const Problem problem = problem_by_name(cfg.problem);
  const SpaceConfig space = SpaceConfig::make(cfg.k, cfg.r, cfg.quad_order);
  if (log && problem.polynomial_degree > cfg.k) {
    *log << "warning: exact solution has degree " << problem.polynomial_degree << " > k = " << cfg.k
         << "; exactness is not expected\n";
  }

  ConvergenceReport report;
  report.config = {
      {"problem", problem.name},
      {"k", std::to_string(space.k)},
      {"r", std::to_string(space.r)},
      {"quad_order", std::to_string(space.quad_order)},
      {"grid", to_string(cfg.grid)},
      {"domain", to_string(problem.domain)},
      {"levels", std::to_string(cfg.level_min) + ":" + std::to_string(cfg.level_max)},
      {"solver", to_string(cfg.solver.method)},
      {"preconditioner", to_string(cfg.solver.preconditioner)},
      {"tol", [&] {
         char buf[32];
         std::snprintf(buf, sizeof buf, "%g", cfg.solver.rel_tolerance);
         return std::string(buf);
       }()},
  };

  LevelOptions options;
  options.solver = cfg.solver;
  options.compute_energy_error = false;
  for (int level = cfg.level_min; level <= cfg.level_max; ++level) {
    LevelRun run = run_level(problem, cfg.grid, level, space, options);
    if (!cfg.matrix_prefix.empty()) {
      const std::string path = cfg.matrix_prefix + "_L" + std::to_string(level) + ".txt";
      std::ofstream m(path);
      if (!m) throw IoError("cannot open '" + path + "' for writing");
      write_triplets(run.system.A, m);
      if (!m) throw IoError("write to '" + path + "' failed");
    }
    ConvergenceRow row;
    row.level = level;
    row.h = run.disc.mesh->h();
    row.ndof = static_cast<long>(run.system.A.rows());
    row.l2_error = run.l2_error;
    row.h2w_error = run.h2w_error;
    row.iterations = run.solve.iterations;
    row.seconds = cfg.timing ? run.seconds : 0.0;
    report.rows.push_back(row);
    if (log) {
      *log << "level " << level << ": ndof " << row.ndof << ", " << to_string(run.solve.method) << " "
           << run.solve.iterations << " it, residual " << run.solve.relative_residual << "\n";
      if (!run.solve.warning.empty()) *log << "warning: level " << level << ": " << run.solve.warning << "\n";
    }
  }
  report.compute_rates();
  return report;
}

void cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream* log) {
  const std::string text = emit_report(run_study(cfg, log), cfg.format);
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw IoError("cannot open '" + cfg.out + "' for writing");
  f << text;
  if (!f) throw IoError("write to '" + cfg.out + "' failed");
}

void cmd_mesh(GridFamily family, int level, DomainKind domain, const std::string& path) {
  const Mesh mesh = generate_grid(family, level, domain);
  try {
    write_mesh_file(mesh, path);
  } catch (const std::ios_base::failure& e) {
    throw IoError(e.what());
  }
}

std::string cmd_table(const std::vector<std::string>& csv_paths) {
  if (csv_paths.empty()) throw ConfigError("table: no input files");
  std::string text;
  for (std::size_t i = 0; i < csv_paths.size(); ++i) {
    std::ifstream in(csv_paths[i]);
    if (!in) throw IoError("cannot open '" + csv_paths[i] + "'");
    ConvergenceReport report;
    try {
      report = parse_csv(in);
    } catch (const std::runtime_error& e) {
      throw IoError(csv_paths[i] + ": " + e.what());
    }
    if (i > 0) text += '\n';
    text += emit_report(report, ReportFormat::paper_table);
  }
  return text;
}

int report_exception(std::ostream& err) {
  try {
    throw;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ConfigurationError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const CapacityError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << " (iterations " << e.report().iterations << ", residual "
        << e.report().relative_residual << ")\n";
    return kSolverError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::ios_base::failure& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const MeshError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace lswg::cli
