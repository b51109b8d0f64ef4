#include "ecokit/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ecokit/bargaining.hpp"
#include "ecokit/extensions.hpp"

namespace ecokit {

namespace {

std::string fmt9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string verdict(bool feasible) {
  return feasible ? "feasible" : "INFEASIBLE";
}

void print_fee(std::ostream& out, const FeeSolution& sol) {
  out << "fee x* = " << fmt9(sol.x_star) << "  range (" << fmt9(sol.range_low)
      << ", " << fmt9(sol.range_high) << ")"
      << (sol.is_subsidy ? "  [subsidy: provider pays consumer]" : "") << "\n";
  out << "surplus w_p = " << fmt9(sol.w_p) << "  w_c = " << fmt9(sol.w_c)
      << "\n";
}

int check_ecosystem(const EcosystemBody& body, const RunOptions& opt,
                    std::ostream& out, std::ostream& err) {
  const ValidationReport validation = validate_ecosystem(body.eco);
  if (!validation.valid()) {
    for (const Violation& v : validation.violations) {
      err << "invalid ecosystem: " << v.message << "\n";
    }
    return kExitInputError;
  }
  const FeasibilityReport report =
      internal_feasibility(body.eco, /*include_investments=*/true, opt.eps);
  out << "edges: " << body.eco.edges().size()
      << "  participants: " << body.eco.participants().size() << "\n";
  for (const EdgeFeasibility& ef : report.per_edge) {
    out << "edge (" << ef.edge.provider << "," << ef.edge.consumer
        << "): w_p = " << fmt9(ef.surplus.w_p)
        << "  w_c = " << fmt9(ef.surplus.w_c)
        << "  margin = " << fmt9(ef.surplus.margin) << "  "
        << (ef.feasible ? "ok" : "participation violated") << "\n";
  }
  if (!report.per_edge.empty()) {
    out << "participation conditions: "
        << (report.all_participation_met ? "all met" : "NOT all met") << "\n";
  }
  out << "consumer investments = " << fmt9(report.total_investment) << "\n";
  out << "total margin = " << fmt9(report.total_margin) << "  "
      << verdict(report.internally_feasible) << "\n";
  return report.internally_feasible ? kExitFeasible : kExitInfeasible;
}

int check_viability(const ViabilityBody& body, const RunOptions& opt,
                    std::ostream& out, std::ostream& err) {
  if (!body.n || !body.m) {
    err << "viability check needs n and m in the scenario body\n";
    return kExitInputError;
  }
  AverageProfile profile{*body.n, *body.m, body.averages.v_c_bar,
                         body.averages.t_c_bar, body.averages.i_c_bar,
                         body.averages.t_p_bar};
  const FeasibilityMargin fm = general_feasibility(profile, opt.eps);
  out << "n = " << profile.n << "  m = " << profile.m << "\n";
  out << "margin = " << fmt9(fm.margin) << "  " << verdict(fm.feasible) << "\n";
  return fm.feasible ? kExitFeasible : kExitInfeasible;
}

int check_hub(const HubBody& body, const RunOptions& opt, std::ostream& out) {
  const HubParams& p = body.params;
  const HubAverages avg{p.v_c, p.t_c, p.t_p, p.i_c};
  const ThresholdResult threshold = provider_threshold(avg, opt.eps);
  if (threshold.n_tilde) {
    out << "threshold n~ = " << fmt9(*threshold.n_tilde)
        << "  n_min = " << *threshold.n_min << "\n";
  } else {
    out << "threshold: none (per-provider margin " << fmt9(threshold.denom)
        << " not positive)\n";
  }
  const FeeSolution sol = uniform_hub_fee(p, opt.eps);  // throws Infeasible
  print_fee(out, sol);
  out << "hub aggregate surplus = " << fmt9(sol.w_c * static_cast<double>(p.n))
      << "  (n = " << p.n << ")\n";
  return kExitFeasible;
}

int check_federator(const FederatorBody& body, const RunOptions& opt,
                    std::ostream& out) {
  const FederatorAdjustment adj =
      federator_adjust(body.terms, body.fees, opt.eps);
  out << "adjusted costs: t_p' = " << fmt9(adj.adjusted.t_p)
      << "  t_c' = " << fmt9(adj.adjusted.t_c) << "\n";
  out << "federator surplus w_f = " << fmt9(adj.federator_surplus) << "  "
      << verdict(adj.federator_feasible) << "\n";
  const FeeSolution sol = two_actor_fee(adj.adjusted, opt.eps);
  print_fee(out, sol);
  return adj.federator_feasible ? kExitFeasible : kExitInfeasible;
}

int cmd_check(const Scenario& scenario, const RunOptions& opt,
              std::ostream& out, std::ostream& err) {
  switch (scenario.kind) {
    case ScenarioKind::ecosystem:
      return check_ecosystem(std::get<EcosystemBody>(scenario.body), opt, out,
                             err);
    case ScenarioKind::viability:
      return check_viability(std::get<ViabilityBody>(scenario.body), opt, out,
                             err);
    case ScenarioKind::hub:
      return check_hub(std::get<HubBody>(scenario.body), opt, out);
    case ScenarioKind::federator:
      return check_federator(std::get<FederatorBody>(scenario.body), opt, out);
    default:
      err << "check does not support scenario kind "
          << to_string(scenario.kind) << "\n";
      return kExitInputError;
  }
}

int cmd_solve_fees(const Scenario& scenario, const RunOptions& opt,
                   std::ostream& out, std::ostream& err) {
  if (scenario.kind != ScenarioKind::ecosystem) {
    err << "solve-fees needs an ecosystem scenario\n";
    return kExitInputError;
  }
  const EcosystemBody& body = std::get<EcosystemBody>(scenario.body);
  const ValidationReport validation = validate_ecosystem(body.eco);
  if (!validation.valid()) {
    for (const Violation& v : validation.violations) {
      err << "invalid ecosystem: " << v.message << "\n";
    }
    return kExitInputError;
  }
  const Ecosystem solved = solve_all_fees(body.eco, opt.eps);
  for (const Edge& e : solved.edges()) {
    const FeeSolution sol = two_actor_fee(e.terms, opt.eps);
    out << "edge (" << e.provider << "," << e.consumer
        << "): x* = " << fmt9(*e.terms.x) << "  w_p = w_c = " << fmt9(sol.w_p)
        << "  sum_w = " << fmt9(sol.w_p + sol.w_c) << "  range ("
        << fmt9(sol.range_low) << ", " << fmt9(sol.range_high) << ")"
        << (sol.is_subsidy ? "  [subsidy]" : "") << "\n";
  }
  const FeasibilityReport report =
      internal_feasibility(solved, /*include_investments=*/true, opt.eps);
  out << "total margin = " << fmt9(report.total_margin) << "  "
      << verdict(report.internally_feasible) << "\n";
  out << "participation conditions: "
      << (report.all_participation_met ? "all met" : "NOT all met") << "\n";
  return report.internally_feasible ? kExitFeasible : kExitInfeasible;
}

void write_curve_csv(std::ostream& out, const std::vector<CurveSample>& curve) {
  out << "n,margin,feasible\n";
  for (const CurveSample& s : curve) {
    out << s.n << ',' << fmt9(s.margin) << ','
        << (s.feasible ? "true" : "false") << '\n';
  }
}

int hub_uniform(const HubBody& body, const RunOptions& opt, std::ostream& out,
                std::ostream& err) {
  const HubParams& p = body.params;
  const HubAverages avg{p.v_c, p.t_c, p.t_p, p.i_c};

  const FeeSolution sol = uniform_hub_fee(p, opt.eps);
  print_fee(out, sol);
  out << "hub aggregate surplus = " << fmt9(sol.w_c * static_cast<double>(p.n))
      << "  (n = " << p.n << ")\n";
  out << "amortized investment i_c/n = "
      << fmt9(p.i_c / static_cast<double>(p.n)) << "\n";

  const ThresholdResult threshold = provider_threshold(avg, opt.eps);
  if (threshold.n_tilde) {
    out << "threshold n~ = " << fmt9(*threshold.n_tilde)
        << "  n_min = " << *threshold.n_min << "\n";
  } else {
    out << "threshold: none (per-provider margin not positive)\n";
  }

  if (opt.curve || opt.n_range) {
    if (!opt.n_range) {
      err << "--curve needs a provider range (--curve n=a..b or --n-range a..b)\n";
      return kExitInputError;
    }
    const auto curve = hub_feasibility_curve(avg, opt.n_range->first,
                                             opt.n_range->second, opt.eps);
    if (opt.out_csv) {
      std::ofstream file(*opt.out_csv);
      if (!file) {
        err << "cannot write " << opt.out_csv->string() << "\n";
        return kExitInputError;
      }
      write_curve_csv(file, curve);
      out << "curve written to " << opt.out_csv->string() << " ("
          << curve.size() << " rows)\n";
    } else {
      write_curve_csv(out, curve);
    }
  }
  return kExitFeasible;
}

int hub_parametric(const ParametricHubBody& body, const RunOptions& opt,
                   std::ostream& out) {
  const ParametricHubModel model = build_parametric_model(body);
  const Bracket bracket{body.bracket_low, body.bracket_high};

  const WelfareAnalysis analysis =
      merge(welfare_max_fee(model, bracket, opt.eps),
            utility_max_fee(model, bracket, opt.eps));

  out << "welfare-maximizing fee x*_w = " << fmt9(*analysis.x_star_w)
      << "  n = " << fmt9(*analysis.n_at_w) << "\n";
  out << "total welfare at x*_w = " << fmt9(*analysis.total_welfare) << "\n";
  out << "utility-maximizing fee x*_c = " << fmt9(*analysis.x_star_c)
      << "  n = " << fmt9(*analysis.n_at_c) << "\n";
  out << "supply elasticity eta_p = " << fmt9(*analysis.eta_p) << "\n";
  out << "Lerner residual = " << fmt9(*analysis.lerner_residual) << "\n";
  if (*analysis.provider_surplus_at_w <= opt.eps) {
    out << "warning: provider participation fails at x*_w (w_p = "
        << fmt9(*analysis.provider_surplus_at_w) << ")\n";
  }
  if (*analysis.provider_surplus_at_c <= opt.eps) {
    out << "warning: provider participation fails at x*_c (w_p = "
        << fmt9(*analysis.provider_surplus_at_c) << ")\n";
  }

  if (opt.grid) {
    const GridMax welfare = grid_max_welfare(model, *opt.grid);
    const GridMax consumer = grid_max_consumer(model, *opt.grid);
    out << "oracle grid max welfare at x = " << fmt9(welfare.x_hat)
        << "  (|diff| = " << fmt9(std::abs(welfare.x_hat - *analysis.x_star_w))
        << ")\n";
    out << "oracle grid max consumer utility at x = " << fmt9(consumer.x_hat)
        << "  (|diff| = " << fmt9(std::abs(consumer.x_hat - *analysis.x_star_c))
        << ")\n";
  }
  return kExitFeasible;
}

int cmd_hub(const Scenario& scenario, const RunOptions& opt, std::ostream& out,
            std::ostream& err) {
  if (scenario.kind == ScenarioKind::hub) {
    return hub_uniform(std::get<HubBody>(scenario.body), opt, out, err);
  }
  if (scenario.kind == ScenarioKind::parametric_hub) {
    return hub_parametric(std::get<ParametricHubBody>(scenario.body), opt, out);
  }
  err << "hub needs a hub or parametric_hub scenario\n";
  return kExitInputError;
}

int cmd_viability(const Scenario& scenario, const RunOptions& opt,
                  std::ostream& out, std::ostream& err) {
  if (scenario.kind != ScenarioKind::viability) {
    err << "viability needs a viability scenario\n";
    return kExitInputError;
  }
  const ViabilityBody& body = std::get<ViabilityBody>(scenario.body);

  int exit_code = kExitFeasible;
  if (body.n && body.m) {
    AverageProfile profile{*body.n, *body.m, body.averages.v_c_bar,
                           body.averages.t_c_bar, body.averages.i_c_bar,
                           body.averages.t_p_bar};
    const FeasibilityMargin fm = general_feasibility(profile, opt.eps);
    out << "point (n = " << profile.n << ", m = " << profile.m
        << "): margin = " << fmt9(fm.margin) << "  " << verdict(fm.feasible)
        << "\n";
    exit_code = fm.feasible ? kExitFeasible : kExitInfeasible;
  }

  long long n_max = body.n_max.value_or(0);
  long long m_max = body.m_max.value_or(0);
  if (opt.n_range) n_max = opt.n_range->second;
  if (n_max >= 1 && m_max >= 1) {
    const ViabilityRegion region =
        viability_region(body.averages, n_max, m_max, opt.eps);
    if (region.slope_finite) {
      out << "boundary: m = " << fmt9(region.boundary_slope) << " * n + "
          << fmt9(region.boundary_intercept) << "\n";
    } else {
      out << "boundary: none (t_p = 0; feasibility independent of m)\n";
    }
    std::size_t feasible_cells = 0;
    for (const RegionCell& c : region.cells) feasible_cells += c.feasible;
    out << "region " << (n_max + 1) << "x" << (m_max + 1) << ": "
        << feasible_cells << " of " << region.cells.size()
        << " cells feasible\n";
    if (opt.out_csv) {
      std::ofstream file(*opt.out_csv);
      if (!file) {
        err << "cannot write " << opt.out_csv->string() << "\n";
        return kExitInputError;
      }
      write_region_csv(file, region);
      out << "region written to " << opt.out_csv->string() << "\n";
    } else {
      write_region_csv(out, region);
    }
  } else if (!body.n || !body.m) {
    err << "viability scenario needs (n, m) or (n_max, m_max)\n";
    return kExitInputError;
  }
  return exit_code;
}

int cmd_compare(const Scenario& scenario, const RunOptions& /*opt*/,
                std::ostream& out, std::ostream& err) {
  if (scenario.kind != ScenarioKind::compare) {
    err << "compare needs a compare scenario\n";
    return kExitInputError;
  }
  const ComparisonParams& params = std::get<CompareBody>(scenario.body).params;
  const ComparisonResult result = compare_gaiax_dataspace(params);
  out << "Gaia-X fee x*_g = " << fmt9(result.x_g) << "\n";
  out << "data-space fee x*_d = " << fmt9(result.x_d) << "\n";
  out << "premium x*_g - x*_d = " << fmt9(result.premium) << "\n";
  if (result.t_d) {
    out << "data-space symmetric cost t_d = " << fmt9(*result.t_d) << "\n";
  }
  out << "note: " << result.note << "\n";
  return kExitFeasible;
}

int cmd_classify(const Scenario& scenario, const RunOptions& opt,
                 std::ostream& out, std::ostream& err) {
  if (scenario.kind != ScenarioKind::ecosystem) {
    err << "classify needs an ecosystem scenario\n";
    return kExitInputError;
  }
  const EcosystemBody& body = std::get<EcosystemBody>(scenario.body);
  const StructureClass result =
      classify_structure(body.eco, body.value_visible, opt.eps);
  switch (result) {
    case StructureClass::indeterminate:
      out << "classification: indeterminate (value function hidden; structure "
             "alone cannot decide)\n";
      break;
    case StructureClass::ecosystem_proper:
      out << "classification: ecosystem-proper\n";
      break;
    case StructureClass::market_arrangement:
      out << "classification: market-arrangement\n";
      break;
  }
  out << "note: " << classify_proxy_note() << "\n";
  return kExitFeasible;
}

}  // namespace

int run_command(const RunOptions& options, std::ostream& out,
                std::ostream& err) {
  try {
    if (options.out_csv && options.command != "hub" &&
        options.command != "viability") {
      err << "--out is only supported for hub and viability\n";
      return kExitInputError;
    }
    const Scenario scenario = load_scenario(options.scenario_path);
    out << "scenario: " << to_string(scenario.kind) << " ("
        << options.scenario_path.filename().string() << ")\n";

    if (options.command == "check") {
      return cmd_check(scenario, options, out, err);
    }
    if (options.command == "solve-fees") {
      return cmd_solve_fees(scenario, options, out, err);
    }
    if (options.command == "hub") {
      return cmd_hub(scenario, options, out, err);
    }
    if (options.command == "viability") {
      return cmd_viability(scenario, options, out, err);
    }
    if (options.command == "compare") {
      return cmd_compare(scenario, options, out, err);
    }
    if (options.command == "classify") {
      return cmd_classify(scenario, options, out, err);
    }
    err << "unknown command \"" << options.command << "\"\n";
    return kExitInputError;
  } catch (const InfeasibleEdge& ex) {
    err << "infeasible: " << ex.what() << "\n";
    return kExitInfeasible;
  } catch (const Infeasible& ex) {
    err << "infeasible: " << ex.what() << "\n";
    return kExitInfeasible;
  } catch (const NoBracket& ex) {
    err << "numerical failure: " << ex.what() << "\n";
    return kExitNumericalFailure;
  } catch (const NonConvergence& ex) {
    err << "numerical failure: " << ex.what() << "\n";
    return kExitNumericalFailure;
  } catch (const InelasticSupply& ex) {
    err << "numerical failure: " << ex.what() << "\n";
    return kExitNumericalFailure;
  } catch (const EvaluationFailure& ex) {
    err << "numerical failure: " << ex.what() << "\n";
    return kExitNumericalFailure;
  } catch (const Error& ex) {
    err << "input error: " << ex.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& ex) {
    err << "input error: " << ex.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitNumericalFailure;
  }
}

std::pair<long long, long long> parse_n_range(const std::string& text) {
  std::string range = text;
  if (range.rfind("n=", 0) == 0) range = range.substr(2);
  const auto dots = range.find("..");
  if (dots == std::string::npos) {
    throw std::invalid_argument("range must look like a..b, got \"" + text +
                                "\"");
  }
  try {
    std::size_t used = 0;
    const long long lo = std::stoll(range.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument("");
    const std::string hi_text = range.substr(dots + 2);
    const long long hi = std::stoll(hi_text, &used);
    if (used != hi_text.size()) throw std::invalid_argument("");
    if (lo > hi) throw std::invalid_argument("");
    return {lo, hi};
  } catch (const std::exception&) {
    throw std::invalid_argument("range must look like a..b, got \"" + text +
                                "\"");
  }
}

GridSpec parse_grid(const std::string& text) {
  GridSpec grid;
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw std::invalid_argument("grid must look like low:high:step, got \"" +
                                text + "\"");
  }
  try {
    std::size_t used = 0;
    grid.low = std::stod(text.substr(0, first), &used);
    if (used != first) throw std::invalid_argument("");
    const std::string mid = text.substr(first + 1, second - first - 1);
    grid.high = std::stod(mid, &used);
    if (used != mid.size()) throw std::invalid_argument("");
    const std::string last = text.substr(second + 1);
    grid.step = std::stod(last, &used);
    if (used != last.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must look like low:high:step, got \"" +
                                text + "\"");
  }
  if (!(grid.low < grid.high) || !(grid.step > 0.0)) {
    throw std::invalid_argument("grid needs low < high and step > 0");
  }
  return grid;
}

}  // namespace ecokit
