#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "driver.hpp"

using namespace lswg;
using namespace lswg::cli;

int main(int argc, char** argv) {
  CLI::App app{"Least-squares weak Galerkin solver for non-divergence form elliptic problems"};
  app.require_subcommand(1);

  // Flags are collected as text and applied after the config file so they take precedence.
  std::string config_path;
  std::map<std::string, std::string> flags;
  bool no_timing = false;
  auto* run = app.add_subcommand("run", "Run a convergence study over a range of grid levels");
  run->add_option("--config", config_path, "File of 'key = value' settings; flags override it");
  const std::vector<std::pair<std::string, std::string>> run_flags = {
      {"--problem", "problem"},
      {"--degree", "degree"},
      {"--hessian-degree", "hessian_degree"},
      {"--quad-order", "quad_order"},
      {"--grid", "grid"},
      {"--levels", "levels"},
      {"--solver", "solver"},
      {"--preconditioner", "preconditioner"},
      {"--tol", "tol"},
      {"--max-iter", "max_iter"},
      {"--out", "out"},
      {"--format", "format"},
      {"--export-matrix", "export_matrix"},
  };
  for (const auto& [flag, key] : run_flags) {
    run->add_option_function<std::string>(flag, [&flags, key = key](const std::string& v) { flags[key] = v; });
  }
  run->add_flag("--no-timing", no_timing, "Write 0 in the seconds column for byte-identical output");
  bool quiet = false;
  run->add_flag("-q,--quiet", quiet, "Suppress progress on stderr");

  std::string mesh_family = "triangular", mesh_domain = "unit_square", mesh_out;
  int mesh_level = 1;
  auto* mesh = app.add_subcommand("mesh", "Write a generated grid in the wgmesh text format");
  mesh->add_option("--grid", mesh_family, "triangular or polygonal");
  mesh->add_option("--level", mesh_level, "Grid level")->check(CLI::PositiveNumber);
  mesh->add_option("--domain", mesh_domain, "unit_square or biunit_square");
  mesh->add_option("--out", mesh_out, "Output path")->required();

  std::vector<std::string> table_inputs;
  auto* table = app.add_subcommand("table", "Render csv reports as fixed-format tables");
  table->add_option("inputs", table_inputs, "csv files written by 'run'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) {
      RunConfig cfg;
      if (!config_path.empty()) apply_config_file(cfg, config_path);
      for (const auto& [key, value] : flags) apply_setting(cfg, key, value);
      if (no_timing) cfg.timing = false;
      cmd_run(cfg, std::cout, quiet ? nullptr : &std::cerr);
    } else if (*mesh) {
      GridFamily family;
      DomainKind domain;
      try {
        family = parse_grid_family(mesh_family);
        domain = parse_domain_kind(mesh_domain);
      } catch (const MeshError& e) {
        throw ConfigError(e.what());
      }
      cmd_mesh(family, mesh_level, domain, mesh_out);
    } else if (*table) {
      std::cout << cmd_table(table_inputs);
    }
  } catch (...) {
    return report_exception(std::cerr);
  }
  return kOk;
}
