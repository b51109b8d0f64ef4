#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "ecokit/oracle.hpp"
#include "ecokit/scenario.hpp"

namespace ecokit {

/// Parsed command line for one ecokit invocation.
struct RunOptions {
  std::string command;  ///< check | solve-fees | hub | viability | compare | classify
  std::filesystem::path scenario_path;
  std::optional<std::filesystem::path> out_csv;  ///< --out (hub curve / region)
  std::optional<GridSpec> grid;  ///< --grid low:high:step (oracle cross-checks)
  std::optional<std::pair<long long, long long>> n_range;  ///< --n-range a..b
  bool curve = false;  ///< --curve: emit the hub feasibility curve
  double eps = kFeasibilityEps;  ///< ECOKIT_EPS override
};

/// Exit codes: 0 feasible/solved, 1 infeasible result, 2 input error,
/// 3 numerical failure.
inline constexpr int kExitFeasible = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericalFailure = 3;

/// Dispatches one command against a scenario file, writing the report to
/// `out` and diagnostics to `err`. Never throws: every failure is mapped
/// onto an exit code.
int run_command(const RunOptions& options, std::ostream& out,
                std::ostream& err);

/// Parses "a..b" into an inclusive integer range.
std::pair<long long, long long> parse_n_range(const std::string& text);

/// Parses "low:high:step" into a grid spec.
GridSpec parse_grid(const std::string& text);

}  // namespace ecokit
