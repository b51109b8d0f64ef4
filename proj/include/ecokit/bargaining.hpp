#pragma once

#include <optional>

#include "ecokit/core_model.hpp"

namespace ecokit {

/// A solved first-best transaction fee with the surpluses it induces and
/// the open bargaining interval it was picked from. Feasible solutions sit
/// strictly inside (range_low, range_high) and split the surplus equally.
struct FeeSolution {
  double x_star = 0.0;
  double w_p = 0.0;
  double w_c = 0.0;
  bool is_subsidy = false;  ///< x_star < 0: provider pays the consumer
  double range_low = 0.0;   ///< T^P - V^P (provider walk-away point)
  double range_high = 0.0;  ///< V^C - T^C, less amortized investment for hubs
};

/// Closed-form 2-actor solution: both rational actors meet in the middle of
/// the bargaining interval, which is the midpoint formula
/// x* = [(v_c - v_p) - (t_c - t_p)] / 2.
/// Throws Infeasible when total value does not strictly cover total cost.
FeeSolution two_actor_fee(const TransactionTerms& terms,
                          double eps = kFeasibilityEps);

/// Solves every edge of an ecosystem independently with the 2-actor formula
/// and returns a copy with all fees assigned. If any edge is infeasible the
/// whole call aborts with InfeasibleEdge naming every failing edge; no
/// partial assignment happens.
Ecosystem solve_all_fees(const Ecosystem& eco, double eps = kFeasibilityEps);

enum class ChainLink {
  consumer_value_covers_provider_cost,  // V^C > T^P
  consumer_value_covers_fee,            // V^C > X
  fee_covers_provider_cost,             // X > T^P
};

/// Diagnostic report for the subsidization chain V^C > X > T^P that must
/// hold whenever the provider derives no value beyond the fee.
struct SubsidizationReport {
  double x = 0.0;  ///< fee checked (given, or solved when absent)
  bool consumer_value_covers_provider_cost = false;
  bool consumer_value_covers_fee = false;
  bool fee_covers_provider_cost = false;
  bool chain_holds = false;
  std::optional<ChainLink> first_violation;
};

/// Checks the chain at the given fee, or at the solved 2-actor fee when no
/// fee is supplied. Requires terms.v_p == 0 (the chain is derived under
/// that assumption); the comparisons themselves are plain strict.
SubsidizationReport subsidization_check(const TransactionTerms& terms,
                                        std::optional<double> fee = {},
                                        double eps = kFeasibilityEps);

}  // namespace ecokit
