#include "ecokit/hub_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ecokit {

namespace {

constexpr int kMaxBisectIter = 200;
constexpr double kRootFTol = 1e-10;
constexpr double kRootXTol = 1e-12;
constexpr int kSurplusPanels = 10000;

double central_difference(const std::function<double(double)>& f, double u) {
  const double h = std::max(1e-6, 1e-6 * std::abs(u));
  return (f(u + h) - f(u - h)) / (2.0 * h);
}

/// Bracketed bisection: |f| <= kRootFTol or width <= kRootXTol.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              const char* what) {
  double f_lo = f(lo);
  if (std::abs(f_lo) <= kRootFTol) return lo;
  double f_hi = f(hi);
  if (std::abs(f_hi) <= kRootFTol) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw NoBracket(std::string(what) + ": no sign change on [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  for (int i = 0; i < kMaxBisectIter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (std::abs(f_mid) <= kRootFTol || hi - lo <= kRootXTol) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  throw NonConvergence(std::string(what) + ": no root after " +
                       std::to_string(kMaxBisectIter) + " iterations");
}

}  // namespace

FeeSolution uniform_hub_fee(const HubParams& p, double eps) {
  if (p.n < 1) throw std::invalid_argument("hub provider count must be >= 1");
  const double amortized = p.i_c / static_cast<double>(p.n);

  // 2-actor bargaining on terms whose consumer cost carries the amortized
  // investment share.
  TransactionTerms amortized_terms{p.v_p, p.v_c, p.t_p, p.t_c + amortized, {}};
  return two_actor_fee(amortized_terms, eps);
}

ThresholdResult provider_threshold(const HubAverages& avg, double eps) {
  ThresholdResult result;
  result.denom = avg.v_c_bar - avg.t_c_bar - avg.t_p_bar;
  if (result.denom <= eps) return result;

  result.n_tilde = avg.i_c / result.denom;
  long long n = static_cast<long long>(std::floor(*result.n_tilde)) + 1;
  if (n < 1) n = 1;
  // Strict inequality with tolerance; nudge across rounding at the boundary.
  while (static_cast<double>(n) * result.denom - avg.i_c <= eps) ++n;
  while (n > 1 &&
         static_cast<double>(n - 1) * result.denom - avg.i_c > eps) --n;
  result.n_min = n;
  return result;
}

std::vector<CurveSample> hub_feasibility_curve(const HubAverages& avg,
                                               long long n_lo, long long n_hi,
                                               double eps) {
  if (n_lo > n_hi) throw std::invalid_argument("empty hub curve range");
  std::vector<CurveSample> samples;
  samples.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
  for (long long n = n_lo; n <= n_hi; ++n) {
    const double nd = static_cast<double>(n);
    const double margin = nd * (avg.v_c_bar - avg.t_c_bar) - nd * avg.t_p_bar -
                          avg.i_c;
    samples.push_back({n, margin, margin > eps});
  }
  return samples;
}

double ParametricHubModel::n_prime_at(double x) const {
  if (n_prime) return n_prime(x);
  return central_difference(n_of_x, x);
}

double ParametricHubModel::marginal_at(double n) const {
  if (marginal_net_value) return marginal_net_value(n);
  const auto net = [this](double u) { return v_c_of_n(u) - t_c_of_n(u); };
  return central_difference(net, n);
}

double ParametricHubModel::consumer_utility(double x) const {
  const double n = n_of_x(x);
  return v_c_of_n(n) - n * x - t_c_of_n(n);
}

WelfareAnalysis merge(const WelfareAnalysis& a, const WelfareAnalysis& b) {
  WelfareAnalysis out = a;
  auto take = [](std::optional<double>& dst, const std::optional<double>& src) {
    if (!dst) dst = src;
  };
  take(out.x_star_w, b.x_star_w);
  take(out.n_at_w, b.n_at_w);
  take(out.total_welfare, b.total_welfare);
  take(out.provider_surplus_at_w, b.provider_surplus_at_w);
  take(out.x_star_c, b.x_star_c);
  take(out.n_at_c, b.n_at_c);
  take(out.eta_p, b.eta_p);
  take(out.lerner_residual, b.lerner_residual);
  take(out.provider_surplus_at_c, b.provider_surplus_at_c);
  return out;
}

WelfareAnalysis welfare_max_fee(const ParametricHubModel& model,
                                const Bracket& bracket, double /*eps*/) {
  const auto g = [&model](double x) {
    return model.marginal_at(model.n_at(x)) - x;
  };
  const double x_star = bisect(g, bracket.low, bracket.high, "welfare_max_fee");

  WelfareAnalysis analysis;
  analysis.x_star_w = x_star;
  analysis.n_at_w = model.n_at(x_star);
  analysis.total_welfare =
      model.consumer_utility(x_star) +
      aggregate_provider_surplus(model, bracket.low, x_star);
  analysis.provider_surplus_at_w = model.v_p + x_star - model.t_p;
  return analysis;
}

WelfareAnalysis utility_max_fee(const ParametricHubModel& model,
                                const Bracket& bracket, double eps) {
  const auto slope = [&model, eps](double x) {
    const double np = model.n_prime_at(x);
    if (np <= eps) throw InelasticSupply(x);
    return np;
  };
  const auto h = [&model, &slope](double x) {
    return model.marginal_at(model.n_at(x)) - model.n_at(x) / slope(x) - x;
  };
  const double x_star = bisect(h, bracket.low, bracket.high, "utility_max_fee");

  WelfareAnalysis analysis;
  analysis.x_star_c = x_star;
  const double n = model.n_at(x_star);
  analysis.n_at_c = n;
  analysis.eta_p = x_star * slope(x_star) / n;
  analysis.lerner_residual =
      (x_star - model.marginal_at(n)) / x_star + 1.0 / *analysis.eta_p;
  analysis.provider_surplus_at_c = model.v_p + x_star - model.t_p;
  return analysis;
}

double aggregate_provider_surplus(const ParametricHubModel& model, double from,
                                  double to) {
  if (from == to) return 0.0;
  const double width = (to - from) / kSurplusPanels;
  double prev = model.n_at(from);
  double sum = 0.0;
  for (int k = 1; k <= kSurplusPanels; ++k) {
    const double u = from + k * width;
    const double cur = model.n_at(u);
    sum += 0.5 * (prev + cur) * width;
    prev = cur;
  }
  return sum;
}

LinearizedRecovery linearized_recovery(double v_c_bar, double v_p_bar,
                                       double t_c_bar, double t_p_bar,
                                       double eps) {
  LinearizedRecovery result;
  result.sigma_w = (v_c_bar + v_p_bar) - (t_c_bar + t_p_bar);
  if (!(result.sigma_w > eps)) {
    throw Infeasible(-result.sigma_w);
  }
  result.x_star = v_c_bar - t_c_bar - 0.5 * result.sigma_w;
  return result;
}

RecoverableBound recoverable_value_bound(
    const std::function<double(double)>& alpha_fn,
    const std::function<double(double)>& beta_fn, double i_c, long long n_max,
    double eps) {
  RecoverableBound result;
  result.ceiling = -std::numeric_limits<double>::infinity();
  for (long long n = 0; n <= n_max; ++n) {
    const double nd = static_cast<double>(n);
    const double net = alpha_fn(nd) - beta_fn(nd);
    result.ceiling = std::max(result.ceiling, net);
    if (net - i_c > eps) {
      result.n = n;
      return result;
    }
  }
  return result;
}

}  // namespace ecokit
