#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ecokit/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ecokit - ecosystem transaction economics toolkit"};
  app.get_formatter()->column_width(28);

  std::string command;
  std::string scenario;
  app.add_option("command", command, "check | solve-fees | hub | viability | compare | classify")
      ->required()
      ->check(CLI::IsMember({"check", "solve-fees", "hub", "viability",
                             "compare", "classify"}));
  app.add_option("scenario", scenario, "scenario file (JSON)")->required();

  std::string out_csv;
  std::string grid_text;
  std::string n_range_text;
  std::string curve_range_text;
  app.add_option("--out", out_csv, "write CSV output to this file");
  app.add_option("--grid", grid_text,
                 "oracle grid low:high:step for parametric hub cross-checks");
  app.add_option("--n-range", n_range_text, "provider range a..b");
  auto* curve_opt =
      app.add_option("--curve", curve_range_text,
                     "emit the hub feasibility curve (optionally n=a..b)")
          ->expected(0, 1);

  CLI11_PARSE(app, argc, argv);

  ecokit::RunOptions options;
  options.command = command;
  options.scenario_path = scenario;
  if (!out_csv.empty()) options.out_csv = out_csv;
  options.curve = curve_opt->count() > 0;

  try {
    if (!grid_text.empty()) options.grid = ecokit::parse_grid(grid_text);
    if (!curve_range_text.empty()) {
      options.n_range = ecokit::parse_n_range(curve_range_text);
    }
    if (!n_range_text.empty()) {
      options.n_range = ecokit::parse_n_range(n_range_text);
    }
    if (const char* eps_env = std::getenv("ECOKIT_EPS")) {
      std::size_t used = 0;
      const double eps = std::stod(eps_env, &used);
      if (used != std::string(eps_env).size() || !(eps > 0.0)) {
        throw std::invalid_argument("ECOKIT_EPS must be a positive number");
      }
      options.eps = eps;
    }
  } catch (const std::exception& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return ecokit::kExitInputError;
  }

  return ecokit::run_command(options, std::cout, std::cerr);
}
