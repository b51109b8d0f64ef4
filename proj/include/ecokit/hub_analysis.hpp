#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ecokit/bargaining.hpp"
#include "ecokit/common.hpp"

namespace ecokit {

/// Uniform hub-and-spoke configuration: one consumer (the hub) facing n
/// identical providers, with the hub's ex-ante investment i_c amortized
/// over the n relations.
struct HubParams {
  double v_p = 0.0;  ///< uniform provider value per transaction
  double t_p = 0.0;  ///< uniform provider cost
  double v_c = 0.0;  ///< uniform per-provider consumer value
  double t_c = 0.0;  ///< uniform per-provider consumer cost
  double i_c = 0.0;  ///< hub investment, recovered across all n spokes
  long long n = 1;   ///< provider count, >= 1
};

/// Closed-form first-best hub fee
///   x* = [(v_c - v_p) - (t_c - t_p + i_c/n)] / 2,
/// i.e. the 2-actor solution on terms whose consumer cost is raised by the
/// amortized investment i_c/n. w_c in the result is the per-provider
/// consumer surplus net of that amortized share, so the hub's aggregate
/// surplus is n * w_c. Throws Infeasible when the amortized participation
/// condition v_c + v_p > t_c + t_p + i_c/n fails.
FeeSolution uniform_hub_fee(const HubParams& p, double eps = kFeasibilityEps);

/// Averaged per-spoke quantities driving the hub feasibility line
/// margin(n) = n * (v_c_bar - t_c_bar - t_p_bar) - i_c.
struct HubAverages {
  double v_c_bar = 0.0;
  double t_c_bar = 0.0;
  double t_p_bar = 0.0;
  double i_c = 0.0;
};

struct ThresholdResult {
  double denom = 0.0;  ///< per-provider net margin v_c_bar - t_c_bar - t_p_bar
  /// Break-even provider count i_c / denom; absent when denom <= eps
  /// (infeasible at every n).
  std::optional<double> n_tilde;
  /// Smallest integer n with n * denom - i_c > eps; absent when denom <= eps.
  std::optional<long long> n_min;
};

/// Break-even provider count for a hub that must recover its investment.
ThresholdResult provider_threshold(const HubAverages& avg,
                                   double eps = kFeasibilityEps);

struct CurveSample {
  long long n = 0;
  double margin = 0.0;
  bool feasible = false;
};

/// Samples the hub feasibility line at every integer n in [n_lo, n_hi].
std::vector<CurveSample> hub_feasibility_curve(const HubAverages& avg,
                                               long long n_lo, long long n_hi,
                                               double eps = kFeasibilityEps);

/// Hub model where the provider count responds to the fee, n = n(X), and
/// the hub's value and cost are arbitrary smooth functions of that count.
/// Derivatives are taken from the analytic fields when set, otherwise by
/// central differences with relative step max(1e-6, 1e-6*|u|).
struct ParametricHubModel {
  std::function<double(double)> n_of_x;    ///< supply response, >= 0, non-decreasing
  std::function<double(double)> v_c_of_n;  ///< consumer gross value of n providers
  std::function<double(double)> t_c_of_n;  ///< consumer transaction cost of n providers
  double v_p = 0.0;  ///< uniform provider value (participation check only)
  double t_p = 0.0;  ///< uniform provider cost (participation check only)

  /// Optional analytic n'(X); central difference when absent.
  std::function<double(double)> n_prime;
  /// Optional analytic d/dn [v_c(n) - t_c(n)]; central difference when absent.
  std::function<double(double)> marginal_net_value;

  double n_at(double x) const { return n_of_x(x); }
  double n_prime_at(double x) const;
  /// Marginal net hub value of one more provider, evaluated at count n.
  double marginal_at(double n) const;
  /// Consumer utility W^C(X) = v_c(n(X)) - n(X)*X - t_c(n(X)).
  double consumer_utility(double x) const;
};

struct Bracket {
  double low = 0.0;
  double high = 0.0;
};

/// Joint result of the parametric-hub optimizations. Each solver fills its
/// own fields and leaves the rest unset.
struct WelfareAnalysis {
  std::optional<double> x_star_w;  ///< welfare-maximizing fee
  std::optional<double> n_at_w;
  std::optional<double> total_welfare;  ///< W at x_star_w (reporting only)
  std::optional<double> provider_surplus_at_w;  ///< v_p + x - t_p, warn if <= 0

  std::optional<double> x_star_c;  ///< consumer-utility-maximizing fee
  std::optional<double> n_at_c;
  std::optional<double> eta_p;     ///< supply elasticity X n'(X)/n(X) at x_star_c
  std::optional<double> lerner_residual;  ///< (X - marginal)/X + 1/eta_p
  std::optional<double> provider_surplus_at_c;
};

/// Merge the fields set by the two solvers into one analysis.
WelfareAnalysis merge(const WelfareAnalysis& a, const WelfareAnalysis& b);

/// Welfare-maximizing fee: bisects g(X) = marginal(n(X)) - X on the
/// bracket. The optimum equates the fee with the hub's marginal net value
/// of one more provider. Throws NoBracket / NonConvergence.
WelfareAnalysis welfare_max_fee(const ParametricHubModel& model,
                                const Bracket& bracket,
                                double eps = kFeasibilityEps);

/// Consumer-utility-maximizing fee: bisects
///   h(X) = marginal(n(X)) - n(X)/n'(X) - X,
/// the marginal value adjusted downward by the inverse supply elasticity.
/// Also reports eta_p and the Lerner identity residual at the solution.
/// Throws InelasticSupply when n'(X) <= eps at any evaluated point.
WelfareAnalysis utility_max_fee(const ParametricHubModel& model,
                                const Bracket& bracket,
                                double eps = kFeasibilityEps);

/// Aggregate provider surplus v(X) = integral of n over [from, to],
/// composite trapezoid with 10^4 panels. Reporting only; the optimizers
/// use first-order conditions directly.
double aggregate_provider_surplus(const ParametricHubModel& model, double from,
                                  double to);

struct LinearizedRecovery {
  double x_star = 0.0;
  double sigma_w = 0.0;  ///< net total transaction value (V bars minus T bars)
};

/// Recovers the closed-form fee from the linearized parametric model:
/// x* = v_c_bar - t_c_bar - sigma_w/2, which coincides with the 2-actor
/// midpoint formula. Throws Infeasible when sigma_w is not positive.
LinearizedRecovery linearized_recovery(double v_c_bar, double v_p_bar,
                                       double t_c_bar, double t_p_bar,
                                       double eps = kFeasibilityEps);

struct RecoverableBound {
  /// Smallest n in [0, n_max] whose cumulative net value exceeds i_c;
  /// absent when the investment is never recovered on the scanned range.
  std::optional<long long> n;
  /// Largest cumulative net value alpha(n) - beta(n) seen while scanning —
  /// the recoverable ceiling when n is absent.
  double ceiling = 0.0;
};

/// Scans cumulative consumer net value alpha(n) against cumulative provider
/// cost beta(n) for the smallest n recovering the investment. Captures the
/// caveat that bounded cumulative value can make recovery impossible at
/// every scale.
RecoverableBound recoverable_value_bound(
    const std::function<double(double)>& alpha_fn,
    const std::function<double(double)>& beta_fn, double i_c, long long n_max,
    double eps = kFeasibilityEps);

}  // namespace ecokit
