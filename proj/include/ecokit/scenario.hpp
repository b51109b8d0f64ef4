#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ecokit/core_model.hpp"
#include "ecokit/extensions.hpp"
#include "ecokit/hub_analysis.hpp"
#include "ecokit/viability.hpp"

namespace ecokit {

/// Named parametric function family for scenario files. No arbitrary code:
/// each family is a fixed shape with a coefficient list.
///   linear      [a, b] : a + b*u
///   quadratic   [v, q] : v*u - q*u^2
///   saturating  [c]    : c * (1 - 1/(u + 1))
struct FunctionSpec {
  enum class Family { linear, quadratic, saturating };
  Family family = Family::linear;
  std::vector<double> coeffs;

  double value(double u) const;
  double derivative(double u) const;

  friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;
};

enum class ScenarioKind {
  ecosystem,
  hub,
  parametric_hub,
  viability,
  compare,
  federator,
};

const char* to_string(ScenarioKind kind);

struct EcosystemBody {
  Ecosystem eco;
  bool value_visible = true;

  friend bool operator==(const EcosystemBody&, const EcosystemBody&) = default;
};

struct HubBody {
  HubParams params;

  friend bool operator==(const HubBody& a, const HubBody& b) {
    return a.params.v_p == b.params.v_p && a.params.t_p == b.params.t_p &&
           a.params.v_c == b.params.v_c && a.params.t_c == b.params.t_c &&
           a.params.i_c == b.params.i_c && a.params.n == b.params.n;
  }
};

struct ParametricHubBody {
  FunctionSpec n_of_x;
  FunctionSpec v_c_of_n;
  FunctionSpec t_c_of_n;
  double v_p = 0.0;
  double t_p = 0.0;
  double bracket_low = 0.0;
  double bracket_high = 0.0;
  bool central_difference = false;  ///< force finite-difference derivatives

  friend bool operator==(const ParametricHubBody&,
                         const ParametricHubBody&) = default;
};

struct ViabilityBody {
  RegionAverages averages;
  std::optional<long long> n, m;          ///< point check
  std::optional<long long> n_max, m_max;  ///< region sweep

  friend bool operator==(const ViabilityBody& a, const ViabilityBody& b) {
    return a.averages.v_c_bar == b.averages.v_c_bar &&
           a.averages.t_c_bar == b.averages.t_c_bar &&
           a.averages.i_c_bar == b.averages.i_c_bar &&
           a.averages.t_p_bar == b.averages.t_p_bar && a.n == b.n &&
           a.m == b.m && a.n_max == b.n_max && a.m_max == b.m_max;
  }
};

struct CompareBody {
  ComparisonParams params;

  friend bool operator==(const CompareBody& a, const CompareBody& b) {
    return a.params.delta_v == b.params.delta_v &&
           a.params.t_p_g == b.params.t_p_g &&
           a.params.alpha == b.params.alpha && a.params.beta == b.params.beta &&
           a.params.t_d == b.params.t_d;
  }
};

struct FederatorBody {
  TransactionTerms terms;
  FederatorTerms fees;

  friend bool operator==(const FederatorBody& a, const FederatorBody& b) {
    return a.terms == b.terms && a.fees.f_p == b.fees.f_p &&
           a.fees.f_c == b.fees.f_c && a.fees.t_f == b.fees.t_f;
  }
};

/// A fully validated scenario file: schema version, kind tag, and the
/// kind-specific parameter block.
struct Scenario {
  std::string schema_version = "1";
  ScenarioKind kind = ScenarioKind::ecosystem;
  std::variant<EcosystemBody, HubBody, ParametricHubBody, ViabilityBody,
               CompareBody, FederatorBody>
      body;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Loads and validates a scenario file. Parsing is strict: unknown fields,
/// wrong types, and schema mismatches are errors, never warnings.
/// Throws ParseError, SchemaMismatch, UnknownField.
Scenario load_scenario(const std::filesystem::path& path);

/// Same, from an in-memory document (origin names the source in errors).
Scenario parse_scenario(const std::string& text, const std::string& origin);

/// Serializes back to the on-disk format. parse(serialize(s)) == s.
std::string serialize_scenario(const Scenario& s);

/// Instantiates the callable model from a parametric-hub block, wiring up
/// analytic derivatives unless the block forces central differences.
ParametricHubModel build_parametric_model(const ParametricHubBody& body);

}  // namespace ecokit
