#pragma once

#include "ecokit/core_model.hpp"
#include "ecokit/hub_analysis.hpp"

namespace ecokit {

/// Evaluation grid for the brute-force verifiers. Grid points are
/// low + k*step up to high; at most 10^7 points as a resource guard.
struct GridSpec {
  double low = 0.0;
  double high = 0.0;
  double step = 0.0;
};

struct GridMax {
  double x_hat = 0.0;
  double value = 0.0;
};

/// Grid argmax of total welfare W(X) = W^C(X) + v(X), with the aggregate
/// provider surplus v accumulated by trapezoid from the grid's low end.
/// Ties break toward the smaller fee. Throws EvaluationFailure when a
/// model function throws or yields a non-finite value.
GridMax grid_max_welfare(const ParametricHubModel& model, const GridSpec& g);

/// Grid argmax of the consumer utility W^C(X) alone.
GridMax grid_max_consumer(const ParametricHubModel& model, const GridSpec& g);

/// Grid argmax of min(W^P(x), W^C(x)) — the brute-force equal-split fee.
/// Agrees with the closed form within one grid step on feasible terms.
/// Throws Infeasible when total value does not cover total cost.
double grid_equal_split(const TransactionTerms& terms, const GridSpec& g,
                        double eps = kFeasibilityEps);

}  // namespace ecokit
