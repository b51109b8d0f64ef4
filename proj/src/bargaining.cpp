#include "ecokit/bargaining.hpp"

#include <stdexcept>

namespace ecokit {

FeeSolution two_actor_fee(const TransactionTerms& terms, double eps) {
  const double total_value = terms.v_c + terms.v_p;
  const double total_cost = terms.t_c + terms.t_p;
  if (!(total_value > total_cost + eps)) {
    throw Infeasible(total_cost - total_value);
  }
  FeeSolution sol;
  sol.x_star = 0.5 * ((terms.v_c - terms.v_p) - (terms.t_c - terms.t_p));
  sol.range_low = terms.t_p - terms.v_p;
  sol.range_high = terms.v_c - terms.t_c;

  TransactionTerms at_fee = terms;
  at_fee.x = sol.x_star;
  const EdgeSurplus s = edge_surplus(at_fee);
  sol.w_p = s.w_p;
  sol.w_c = s.w_c;
  sol.is_subsidy = sol.x_star < 0.0;
  return sol;
}

Ecosystem solve_all_fees(const Ecosystem& eco, double eps) {
  std::vector<InfeasibleEdge::EdgeId> failing;
  std::vector<Edge> solved = eco.edges();
  for (Edge& e : solved) {
    try {
      e.terms.x = two_actor_fee(e.terms, eps).x_star;
    } catch (const Infeasible&) {
      failing.emplace_back(e.provider, e.consumer);
    }
  }
  if (!failing.empty()) throw InfeasibleEdge(std::move(failing));
  return Ecosystem(eco.participants(), std::move(solved), eco.time_window());
}

SubsidizationReport subsidization_check(const TransactionTerms& terms,
                                        std::optional<double> fee, double eps) {
  if (terms.v_p != 0.0) {
    throw std::invalid_argument(
        "subsidization_check requires terms with v_p = 0");
  }
  SubsidizationReport report;
  report.x = fee ? *fee : two_actor_fee(terms, eps).x_star;
  report.consumer_value_covers_provider_cost = terms.v_c > terms.t_p;
  report.consumer_value_covers_fee = terms.v_c > report.x;
  report.fee_covers_provider_cost = report.x > terms.t_p;
  report.chain_holds = report.consumer_value_covers_provider_cost &&
                       report.consumer_value_covers_fee &&
                       report.fee_covers_provider_cost;
  if (!report.consumer_value_covers_provider_cost) {
    report.first_violation = ChainLink::consumer_value_covers_provider_cost;
  } else if (!report.consumer_value_covers_fee) {
    report.first_violation = ChainLink::consumer_value_covers_fee;
  } else if (!report.fee_covers_provider_cost) {
    report.first_violation = ChainLink::fee_covers_provider_cost;
  }
  return report;
}

}  // namespace ecokit
