#pragma once

#include <optional>
#include <string>

#include "ecokit/core_model.hpp"

namespace ecokit {

/// Federator fee schedule: fixed per-transaction charges on both roles
/// against the federator's own transaction cost.
struct FederatorTerms {
  double f_p = 0.0;
  double f_c = 0.0;
  double t_f = 0.0;
};

struct FederatorAdjustment {
  TransactionTerms adjusted;  ///< t_p + f_p, t_c + f_c; values and fee untouched
  double federator_surplus = 0.0;  ///< f_p + f_c - t_f
  bool federator_feasible = false;
};

/// Folds federator fees into the transaction costs (T' = T + F). All
/// downstream operations consume the adjusted terms unchanged; the
/// federator's own participation condition is reported alongside.
FederatorAdjustment federator_adjust(const TransactionTerms& terms,
                                     const FederatorTerms& fed,
                                     double eps = kFeasibilityEps);

/// Inputs for the Gaia-X vs data-space fee comparison. Consumer-side
/// Gaia-X cost is the fraction alpha of the provider cost; data-space
/// costs are symmetric and drop out of the solved fee.
struct ComparisonParams {
  double delta_v = 0.0;  ///< V^C - V^P, common across both mechanisms
  double t_p_g = 0.0;    ///< Gaia-X provider transaction cost
  double alpha = 0.0;    ///< consumer/provider cost ratio, 0 < alpha < 1
  std::optional<double> beta;  ///< data-space/Gaia-X provider cost ratio
  std::optional<double> t_d;   ///< data-space symmetric cost (else beta*t_p_g)
};

struct ComparisonResult {
  double x_g = 0.0;      ///< Gaia-X solved fee: [delta_v + (1-alpha)*t_p_g]/2
  double x_d = 0.0;      ///< data-space solved fee: delta_v/2
  double premium = 0.0;  ///< x_g - x_d = (1-alpha)*t_p_g/2
  std::optional<double> t_d;  ///< echoed or derived from beta, informational
  std::string note;      ///< bargaining-power assumption, surfaced verbatim
};

ComparisonResult compare_gaiax_dataspace(const ComparisonParams& p);

enum class StructureClass {
  indeterminate,       ///< value function hidden: topology alone decides nothing
  ecosystem_proper,    ///< some provider derives value beyond the fee
  market_arrangement,  ///< providers transact for the fee only
};

/// Classifies a transaction network. With the value function hidden the
/// answer is always indeterminate; with it visible, the operational proxy
/// for non-generic complementarity is v_p > 0 on at least one edge.
StructureClass classify_structure(const Ecosystem& eco, bool value_visible,
                                  double eps = kFeasibilityEps);

/// The proxy rule above, spelled out for reports.
const char* classify_proxy_note();

}  // namespace ecokit
