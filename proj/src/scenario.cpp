#include "ecokit/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ecokit {

using nlohmann::json;

double FunctionSpec::value(double u) const {
  switch (family) {
    case Family::linear:
      return coeffs[0] + coeffs[1] * u;
    case Family::quadratic:
      return coeffs[0] * u - coeffs[1] * u * u;
    case Family::saturating:
      return coeffs[0] * (1.0 - 1.0 / (u + 1.0));
  }
  throw std::logic_error("unreachable function family");
}

double FunctionSpec::derivative(double u) const {
  switch (family) {
    case Family::linear:
      return coeffs[1];
    case Family::quadratic:
      return coeffs[0] - 2.0 * coeffs[1] * u;
    case Family::saturating:
      return coeffs[0] / ((u + 1.0) * (u + 1.0));
  }
  throw std::logic_error("unreachable function family");
}

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::ecosystem: return "ecosystem";
    case ScenarioKind::hub: return "hub";
    case ScenarioKind::parametric_hub: return "parametric_hub";
    case ScenarioKind::viability: return "viability";
    case ScenarioKind::compare: return "compare";
    case ScenarioKind::federator: return "federator";
  }
  return "?";
}

namespace {

// -- strict accessors ---------------------------------------------------------

void require_object(const json& node, const std::string& context) {
  if (!node.is_object()) {
    throw ParseError(context + " must be an object");
  }
}

/// Every key must appear in `known`; anything else is a typo we refuse.
void reject_unknown(const json& node, const std::string& context,
                    std::initializer_list<const char*> known) {
  for (const auto& item : node.items()) {
    bool found = false;
    for (const char* k : known) {
      if (item.key() == k) {
        found = true;
        break;
      }
    }
    if (!found) throw UnknownField(context, item.key());
  }
}

const json& require_field(const json& node, const std::string& context,
                          const char* key) {
  auto it = node.find(key);
  if (it == node.end()) {
    throw ParseError("missing field \"" + std::string(key) + "\" in " + context);
  }
  return *it;
}

double as_number(const json& node, const std::string& context, const char* key) {
  const json& value = require_field(node, context, key);
  if (!value.is_number()) {
    throw ParseError("field \"" + std::string(key) + "\" in " + context +
                     " must be a number");
  }
  return value.get<double>();
}

long long as_integer(const json& node, const std::string& context,
                     const char* key) {
  const json& value = require_field(node, context, key);
  if (!value.is_number_integer()) {
    throw ParseError("field \"" + std::string(key) + "\" in " + context +
                     " must be an integer");
  }
  return value.get<long long>();
}

std::string as_string(const json& node, const std::string& context,
                      const char* key) {
  const json& value = require_field(node, context, key);
  if (!value.is_string()) {
    throw ParseError("field \"" + std::string(key) + "\" in " + context +
                     " must be a string");
  }
  return value.get<std::string>();
}

std::optional<double> optional_number(const json& node,
                                      const std::string& context,
                                      const char* key) {
  if (!node.contains(key)) return std::nullopt;
  return as_number(node, context, key);
}

std::optional<long long> optional_integer(const json& node,
                                          const std::string& context,
                                          const char* key) {
  if (!node.contains(key)) return std::nullopt;
  return as_integer(node, context, key);
}

// -- per-kind parsing ---------------------------------------------------------

TransactionTerms parse_terms(const json& node, const std::string& context) {
  require_object(node, context);
  reject_unknown(node, context, {"v_p", "v_c", "t_p", "t_c", "x"});
  TransactionTerms terms;
  terms.v_p = as_number(node, context, "v_p");
  terms.v_c = as_number(node, context, "v_c");
  terms.t_p = as_number(node, context, "t_p");
  terms.t_c = as_number(node, context, "t_c");
  terms.x = optional_number(node, context, "x");
  return terms;
}

EcosystemBody parse_ecosystem(const json& body, const std::string& context) {
  reject_unknown(body, context,
                 {"participants", "edges", "time_window", "value_visible"});
  const json& parts = require_field(body, context, "participants");
  if (!parts.is_array()) throw ParseError(context + ".participants must be an array");
  std::vector<Participant> participants;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string pc = context + ".participants[" + std::to_string(i) + "]";
    require_object(parts[i], pc);
    reject_unknown(parts[i], pc, {"id", "investment"});
    Participant p;
    p.id = as_string(parts[i], pc, "id");
    p.investment = optional_number(parts[i], pc, "investment").value_or(0.0);
    participants.push_back(std::move(p));
  }

  const json& edges_node = require_field(body, context, "edges");
  if (!edges_node.is_array()) throw ParseError(context + ".edges must be an array");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < edges_node.size(); ++i) {
    const std::string ec = context + ".edges[" + std::to_string(i) + "]";
    require_object(edges_node[i], ec);
    reject_unknown(edges_node[i], ec,
                   {"provider", "consumer", "v_p", "v_c", "t_p", "t_c", "x"});
    Edge e;
    e.provider = as_string(edges_node[i], ec, "provider");
    e.consumer = as_string(edges_node[i], ec, "consumer");
    e.terms.v_p = as_number(edges_node[i], ec, "v_p");
    e.terms.v_c = as_number(edges_node[i], ec, "v_c");
    e.terms.t_p = as_number(edges_node[i], ec, "t_p");
    e.terms.t_c = as_number(edges_node[i], ec, "t_c");
    e.terms.x = optional_number(edges_node[i], ec, "x");
    edges.push_back(std::move(e));
  }

  std::string window;
  if (body.contains("time_window")) {
    window = as_string(body, context, "time_window");
  }
  EcosystemBody result;
  result.eco = Ecosystem(std::move(participants), std::move(edges), window);
  if (body.contains("value_visible")) {
    const json& vv = body["value_visible"];
    if (!vv.is_boolean()) throw ParseError(context + ".value_visible must be a boolean");
    result.value_visible = vv.get<bool>();
  }
  return result;
}

HubBody parse_hub(const json& body, const std::string& context) {
  reject_unknown(body, context, {"v_p", "t_p", "v_c", "t_c", "i_c", "n"});
  HubBody result;
  result.params.v_p = as_number(body, context, "v_p");
  result.params.t_p = as_number(body, context, "t_p");
  result.params.v_c = as_number(body, context, "v_c");
  result.params.t_c = as_number(body, context, "t_c");
  result.params.i_c = as_number(body, context, "i_c");
  result.params.n = as_integer(body, context, "n");
  if (result.params.n < 1) throw ParseError(context + ".n must be >= 1");
  return result;
}

FunctionSpec parse_function(const json& node, const std::string& context) {
  require_object(node, context);
  reject_unknown(node, context, {"family", "coeffs"});
  FunctionSpec spec;
  const std::string family = as_string(node, context, "family");
  std::size_t arity = 0;
  if (family == "linear") {
    spec.family = FunctionSpec::Family::linear;
    arity = 2;
  } else if (family == "quadratic") {
    spec.family = FunctionSpec::Family::quadratic;
    arity = 2;
  } else if (family == "saturating") {
    spec.family = FunctionSpec::Family::saturating;
    arity = 1;
  } else {
    throw ParseError("unknown function family \"" + family + "\" in " + context);
  }
  const json& coeffs = require_field(node, context, "coeffs");
  if (!coeffs.is_array() || coeffs.size() != arity) {
    throw ParseError(context + ".coeffs must be an array of " +
                     std::to_string(arity) + " numbers for family " + family);
  }
  for (const json& c : coeffs) {
    if (!c.is_number()) throw ParseError(context + ".coeffs must be numbers");
    spec.coeffs.push_back(c.get<double>());
  }
  return spec;
}

ParametricHubBody parse_parametric_hub(const json& body,
                                       const std::string& context) {
  reject_unknown(body, context,
                 {"n_of_x", "v_c_of_n", "t_c_of_n", "v_p", "t_p", "bracket",
                  "derivative_mode"});
  ParametricHubBody result;
  result.n_of_x = parse_function(require_field(body, context, "n_of_x"),
                                 context + ".n_of_x");
  result.v_c_of_n = parse_function(require_field(body, context, "v_c_of_n"),
                                   context + ".v_c_of_n");
  result.t_c_of_n = parse_function(require_field(body, context, "t_c_of_n"),
                                   context + ".t_c_of_n");
  result.v_p = as_number(body, context, "v_p");
  result.t_p = as_number(body, context, "t_p");
  const json& bracket = require_field(body, context, "bracket");
  if (!bracket.is_array() || bracket.size() != 2 || !bracket[0].is_number() ||
      !bracket[1].is_number()) {
    throw ParseError(context + ".bracket must be [low, high]");
  }
  result.bracket_low = bracket[0].get<double>();
  result.bracket_high = bracket[1].get<double>();
  if (body.contains("derivative_mode")) {
    const std::string mode = as_string(body, context, "derivative_mode");
    if (mode == "central-difference") {
      result.central_difference = true;
    } else if (mode != "analytic") {
      throw ParseError(context + ".derivative_mode must be \"analytic\" or "
                       "\"central-difference\"");
    }
  }
  return result;
}

ViabilityBody parse_viability(const json& body, const std::string& context) {
  reject_unknown(body, context,
                 {"v_c", "t_c", "i_c", "t_p", "n", "m", "n_max", "m_max"});
  ViabilityBody result;
  result.averages.v_c_bar = as_number(body, context, "v_c");
  result.averages.t_c_bar = as_number(body, context, "t_c");
  result.averages.i_c_bar = as_number(body, context, "i_c");
  result.averages.t_p_bar = as_number(body, context, "t_p");
  result.n = optional_integer(body, context, "n");
  result.m = optional_integer(body, context, "m");
  result.n_max = optional_integer(body, context, "n_max");
  result.m_max = optional_integer(body, context, "m_max");
  return result;
}

CompareBody parse_compare(const json& body, const std::string& context) {
  reject_unknown(body, context, {"delta_v", "t_p_g", "alpha", "beta", "t_d"});
  CompareBody result;
  result.params.delta_v = as_number(body, context, "delta_v");
  result.params.t_p_g = as_number(body, context, "t_p_g");
  result.params.alpha = as_number(body, context, "alpha");
  result.params.beta = optional_number(body, context, "beta");
  result.params.t_d = optional_number(body, context, "t_d");
  return result;
}

FederatorBody parse_federator(const json& body, const std::string& context) {
  reject_unknown(body, context, {"terms", "fees"});
  FederatorBody result;
  result.terms = parse_terms(require_field(body, context, "terms"),
                             context + ".terms");
  const json& fees = require_field(body, context, "fees");
  const std::string fc = context + ".fees";
  require_object(fees, fc);
  reject_unknown(fees, fc, {"f_p", "f_c", "t_f"});
  result.fees.f_p = as_number(fees, fc, "f_p");
  result.fees.f_c = as_number(fees, fc, "f_c");
  result.fees.t_f = as_number(fees, fc, "t_f");
  return result;
}

// -- serialization ------------------------------------------------------------

json terms_to_json(const TransactionTerms& terms) {
  json node{{"v_p", terms.v_p},
            {"v_c", terms.v_c},
            {"t_p", terms.t_p},
            {"t_c", terms.t_c}};
  if (terms.x) node["x"] = *terms.x;
  return node;
}

json function_to_json(const FunctionSpec& spec) {
  const char* family = "linear";
  if (spec.family == FunctionSpec::Family::quadratic) family = "quadratic";
  if (spec.family == FunctionSpec::Family::saturating) family = "saturating";
  return json{{"family", family}, {"coeffs", spec.coeffs}};
}

json body_to_json(const Scenario& s) {
  json body = json::object();
  switch (s.kind) {
    case ScenarioKind::ecosystem: {
      const auto& b = std::get<EcosystemBody>(s.body);
      json parts = json::array();
      for (const Participant& p : b.eco.participants()) {
        parts.push_back({{"id", p.id}, {"investment", p.investment}});
      }
      json edges = json::array();
      for (const Edge& e : b.eco.edges()) {
        json node = terms_to_json(e.terms);
        node["provider"] = e.provider;
        node["consumer"] = e.consumer;
        edges.push_back(std::move(node));
      }
      body["participants"] = std::move(parts);
      body["edges"] = std::move(edges);
      if (!b.eco.time_window().empty()) body["time_window"] = b.eco.time_window();
      body["value_visible"] = b.value_visible;
      break;
    }
    case ScenarioKind::hub: {
      const auto& p = std::get<HubBody>(s.body).params;
      body = {{"v_p", p.v_p}, {"t_p", p.t_p}, {"v_c", p.v_c},
              {"t_c", p.t_c}, {"i_c", p.i_c}, {"n", p.n}};
      break;
    }
    case ScenarioKind::parametric_hub: {
      const auto& b = std::get<ParametricHubBody>(s.body);
      body["n_of_x"] = function_to_json(b.n_of_x);
      body["v_c_of_n"] = function_to_json(b.v_c_of_n);
      body["t_c_of_n"] = function_to_json(b.t_c_of_n);
      body["v_p"] = b.v_p;
      body["t_p"] = b.t_p;
      body["bracket"] = {b.bracket_low, b.bracket_high};
      if (b.central_difference) body["derivative_mode"] = "central-difference";
      break;
    }
    case ScenarioKind::viability: {
      const auto& b = std::get<ViabilityBody>(s.body);
      body = {{"v_c", b.averages.v_c_bar},
              {"t_c", b.averages.t_c_bar},
              {"i_c", b.averages.i_c_bar},
              {"t_p", b.averages.t_p_bar}};
      if (b.n) body["n"] = *b.n;
      if (b.m) body["m"] = *b.m;
      if (b.n_max) body["n_max"] = *b.n_max;
      if (b.m_max) body["m_max"] = *b.m_max;
      break;
    }
    case ScenarioKind::compare: {
      const auto& p = std::get<CompareBody>(s.body).params;
      body = {{"delta_v", p.delta_v}, {"t_p_g", p.t_p_g}, {"alpha", p.alpha}};
      if (p.beta) body["beta"] = *p.beta;
      if (p.t_d) body["t_d"] = *p.t_d;
      break;
    }
    case ScenarioKind::federator: {
      const auto& b = std::get<FederatorBody>(s.body);
      body["terms"] = terms_to_json(b.terms);
      body["fees"] = {{"f_p", b.fees.f_p}, {"f_c", b.fees.f_c}, {"t_f", b.fees.t_f}};
      break;
    }
  }
  return body;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ParseError(origin + ": " + ex.what());
  }
  require_object(doc, origin);
  reject_unknown(doc, origin, {"schema_version", "kind", "body"});

  Scenario scenario;
  scenario.schema_version = as_string(doc, origin, "schema_version");
  if (scenario.schema_version != "1") {
    throw SchemaMismatch(scenario.schema_version);
  }
  const std::string kind = as_string(doc, origin, "kind");
  const json& body = require_field(doc, origin, "body");
  require_object(body, origin + ".body");
  const std::string context = origin + ".body";

  if (kind == "ecosystem") {
    scenario.kind = ScenarioKind::ecosystem;
    scenario.body = parse_ecosystem(body, context);
  } else if (kind == "hub") {
    scenario.kind = ScenarioKind::hub;
    scenario.body = parse_hub(body, context);
  } else if (kind == "parametric_hub") {
    scenario.kind = ScenarioKind::parametric_hub;
    scenario.body = parse_parametric_hub(body, context);
  } else if (kind == "viability") {
    scenario.kind = ScenarioKind::viability;
    scenario.body = parse_viability(body, context);
  } else if (kind == "compare") {
    scenario.kind = ScenarioKind::compare;
    scenario.body = parse_compare(body, context);
  } else if (kind == "federator") {
    scenario.kind = ScenarioKind::federator;
    scenario.body = parse_federator(body, context);
  } else {
    throw ParseError(origin + ": unknown scenario kind \"" + kind + "\"");
  }
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open scenario file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.filename().string());
}

std::string serialize_scenario(const Scenario& s) {
  json doc{{"schema_version", s.schema_version},
           {"kind", to_string(s.kind)},
           {"body", body_to_json(s)}};
  return doc.dump(2) + "\n";
}

ParametricHubModel build_parametric_model(const ParametricHubBody& body) {
  ParametricHubModel model;
  model.n_of_x = [spec = body.n_of_x](double x) { return spec.value(x); };
  model.v_c_of_n = [spec = body.v_c_of_n](double n) { return spec.value(n); };
  model.t_c_of_n = [spec = body.t_c_of_n](double n) { return spec.value(n); };
  model.v_p = body.v_p;
  model.t_p = body.t_p;
  if (!body.central_difference) {
    model.n_prime = [spec = body.n_of_x](double x) { return spec.derivative(x); };
    model.marginal_net_value = [v = body.v_c_of_n, t = body.t_c_of_n](double n) {
      return v.derivative(n) - t.derivative(n);
    };
  }
  return model;
}

}  // namespace ecokit
