#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ecokit/common.hpp"
#include "ecokit/errors.hpp"

namespace ecokit {

/// Per-edge values and costs on the common utility scale. The unit cell of
/// every formula in the library: provider/consumer gross values, both
/// transaction costs, and the (optional) transaction fee. A negative fee is
/// a subsidy paid by the nominal provider.
struct TransactionTerms {
  double v_p = 0.0;  ///< provider gross value, >= 0
  double v_c = 0.0;  ///< consumer gross value, >= 0
  double t_p = 0.0;  ///< provider transaction cost, >= 0
  double t_c = 0.0;  ///< consumer transaction cost, >= 0
  std::optional<double> x;  ///< transaction fee, any finite real

  /// Consumer-minus-provider gross value difference.
  double delta_v() const { return v_c - v_p; }

  friend bool operator==(const TransactionTerms&,
                         const TransactionTerms&) = default;
};

struct Participant {
  std::string id;
  double investment = 0.0;  ///< ex-ante investment, >= 0

  friend bool operator==(const Participant&, const Participant&) = default;
};

/// Directed provider -> consumer relation carrying its transaction terms.
struct Edge {
  std::string provider;
  std::string consumer;
  TransactionTerms terms;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// An ecosystem over one time window: participants, directed relations and
/// their per-edge terms. Values are period aggregates; there is no
/// intra-window time structure. Immutable after construction; edges are
/// held in canonical (provider, consumer) order so that every sum over
/// them is reproducible bit for bit.
class Ecosystem {
 public:
  Ecosystem() = default;
  Ecosystem(std::vector<Participant> participants, std::vector<Edge> edges,
            std::string time_window = {});

  const std::vector<Participant>& participants() const { return participants_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& time_window() const { return time_window_; }

  bool has_participant(const std::string& id) const;
  /// Ids appearing as provider endpoint of at least one edge.
  std::vector<std::string> provider_ids() const;
  /// Ids appearing as consumer endpoint of at least one edge.
  std::vector<std::string> consumer_ids() const;
  /// Sum of investments over the derived consumer set.
  double consumer_investment_total() const;

  friend bool operator==(const Ecosystem&, const Ecosystem&) = default;

 private:
  std::vector<Participant> participants_;
  std::vector<Edge> edges_;
  std::string time_window_;
};

/// Net values of one transaction at its fee. margin is always the single
/// addition w_p + w_c.
struct EdgeSurplus {
  double w_p = 0.0;   ///< provider net value V^P + X - T^P
  double w_c = 0.0;   ///< consumer net value V^C - X - T^C
  double margin = 0.0;
};

struct EdgeFeasibility {
  Edge edge;
  EdgeSurplus surplus;
  bool feasible = false;  ///< both participation conditions hold
};

/// Result of the ecosystem-wide internal-feasibility master equation.
struct FeasibilityReport {
  double total_margin = 0.0;
  double total_investment = 0.0;  ///< subtracted when investments included
  bool investments_included = false;
  /// Per-edge surpluses and participation flags. Populated only when every
  /// edge carries a fee; the total margin never needs fees (they cancel).
  std::vector<EdgeFeasibility> per_edge;
  bool all_participation_met = false;
  bool internally_feasible = false;
};

enum class ViolationKind {
  duplicate_participant,
  unknown_participant,
  duplicate_edge,
  self_loop,
  negative_value,
  negative_investment,
  non_finite,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

/// Checks every structural invariant (unique ids, resolvable endpoints, no
/// duplicate or self-looping edges, finite non-negative values) and returns
/// the full list of violations. Never throws.
ValidationReport validate_ecosystem(const Ecosystem& eco);

enum class Role { provider, consumer };

/// Natural projection onto one side of the terms: provider -> (v_p, t_p),
/// consumer -> (v_c, t_c).
std::pair<double, double> project(const TransactionTerms& terms, Role role);

/// Sum of a valuation over a set of edges. The summation always runs in
/// canonical (provider, consumer) order regardless of the order of the
/// input, so results are deterministic across runs and input permutations.
template <typename F>
double sigma(const std::vector<Edge>& edges, F&& valuation) {
  std::vector<const Edge*> order;
  order.reserve(edges.size());
  for (const Edge& e : edges) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](const Edge* a, const Edge* b) {
    return std::tie(a->provider, a->consumer) <
           std::tie(b->provider, b->consumer);
  });
  double sum = 0.0;
  for (const Edge* e : order) sum += valuation(*e);
  return sum;
}

/// Evaluates both master equations at the terms' fee.
/// Throws MissingFee if no fee is set.
EdgeSurplus edge_surplus(const TransactionTerms& terms);

/// Ecosystem-wide master equation: total margin is the sum of provider and
/// consumer net benefits over all relations, optionally less the consumer
/// investments. Fees cancel and are not required; per-edge participation
/// detail is filled in only when every edge carries one.
FeasibilityReport internal_feasibility(const Ecosystem& eco,
                                       bool include_investments,
                                       double eps = kFeasibilityEps);

}  // namespace ecokit
