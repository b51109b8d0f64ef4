#include "ecokit/extensions.hpp"

#include <algorithm>
#include <stdexcept>

namespace ecokit {

FederatorAdjustment federator_adjust(const TransactionTerms& terms,
                                     const FederatorTerms& fed, double eps) {
  FederatorAdjustment result;
  result.adjusted = terms;
  result.adjusted.t_p = terms.t_p + fed.f_p;
  result.adjusted.t_c = terms.t_c + fed.f_c;
  result.federator_surplus = fed.f_p + fed.f_c - fed.t_f;
  result.federator_feasible = result.federator_surplus > eps;
  return result;
}

ComparisonResult compare_gaiax_dataspace(const ComparisonParams& p) {
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  if (p.beta && !(*p.beta > 0.0)) {
    throw std::invalid_argument("beta must be positive when given");
  }
  ComparisonResult result;
  result.x_g = 0.5 * (p.delta_v + (1.0 - p.alpha) * p.t_p_g);
  result.x_d = 0.5 * p.delta_v;
  result.premium = result.x_g - result.x_d;
  if (p.t_d) {
    result.t_d = p.t_d;
  } else if (p.beta) {
    result.t_d = *p.beta * p.t_p_g;
  }
  result.note =
      "assumes equal bargaining power for provider and consumer; "
      "hub-and-spoke platforms may not satisfy this";
  return result;
}

StructureClass classify_structure(const Ecosystem& eco, bool value_visible,
                                  double eps) {
  if (!value_visible) return StructureClass::indeterminate;
  const bool shared_value =
      std::any_of(eco.edges().begin(), eco.edges().end(),
                  [eps](const Edge& e) { return e.terms.v_p > eps; });
  return shared_value ? StructureClass::ecosystem_proper
                      : StructureClass::market_arrangement;
}

const char* classify_proxy_note() {
  return "proxy rule: a network counts as an ecosystem proper when at least "
         "one provider derives value beyond the transaction fee (v_p > 0)";
}

}  // namespace ecokit
