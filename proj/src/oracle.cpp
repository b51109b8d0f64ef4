#include "ecokit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecokit {

namespace {

constexpr double kMaxGridPoints = 1e7;

std::vector<double> grid_points(const GridSpec& g) {
  if (!(g.low < g.high)) {
    throw std::invalid_argument("grid requires low < high");
  }
  if (!(g.step > 0.0)) {
    throw std::invalid_argument("grid requires step > 0");
  }
  if ((g.high - g.low) / g.step > kMaxGridPoints) {
    throw std::invalid_argument("grid exceeds the 1e7-point resource guard");
  }
  const auto count =
      static_cast<std::size_t>(std::floor((g.high - g.low) / g.step + 1e-9));
  std::vector<double> points;
  points.reserve(count + 1);
  for (std::size_t k = 0; k <= count; ++k) {
    points.push_back(g.low + static_cast<double>(k) * g.step);
  }
  return points;
}

double checked(double value, const char* what, double x) {
  if (!std::isfinite(value)) {
    throw EvaluationFailure(std::string(what) + " is not finite at X = " +
                            std::to_string(x));
  }
  return value;
}

double consumer_utility_checked(const ParametricHubModel& model, double x) {
  try {
    return checked(model.consumer_utility(x), "consumer utility", x);
  } catch (const EvaluationFailure&) {
    throw;
  } catch (const std::exception& ex) {
    throw EvaluationFailure("model evaluation failed at X = " +
                            std::to_string(x) + ": " + ex.what());
  }
}

}  // namespace

GridMax grid_max_welfare(const ParametricHubModel& model, const GridSpec& g) {
  const std::vector<double> xs = grid_points(g);
  GridMax best{xs.front(), -std::numeric_limits<double>::infinity()};
  double integral = 0.0;  // v(X) accumulated from the grid's low end
  double prev_n = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double x = xs[k];
    double n = 0.0;
    try {
      n = checked(model.n_at(x), "n(X)", x);
    } catch (const EvaluationFailure&) {
      throw;
    } catch (const std::exception& ex) {
      throw EvaluationFailure("model evaluation failed at X = " +
                              std::to_string(x) + ": " + ex.what());
    }
    if (k > 0) integral += 0.5 * (prev_n + n) * (x - xs[k - 1]);
    prev_n = n;

    const double welfare = consumer_utility_checked(model, x) + integral;
    if (welfare > best.value) best = {x, welfare};
  }
  return best;
}

GridMax grid_max_consumer(const ParametricHubModel& model, const GridSpec& g) {
  const std::vector<double> xs = grid_points(g);
  GridMax best{xs.front(), -std::numeric_limits<double>::infinity()};
  for (const double x : xs) {
    const double utility = consumer_utility_checked(model, x);
    if (utility > best.value) best = {x, utility};
  }
  return best;
}

double grid_equal_split(const TransactionTerms& terms, const GridSpec& g,
                        double eps) {
  const double total_value = terms.v_c + terms.v_p;
  const double total_cost = terms.t_c + terms.t_p;
  if (!(total_value > total_cost + eps)) {
    throw Infeasible(total_cost - total_value);
  }
  const std::vector<double> xs = grid_points(g);
  double best_x = xs.front();
  double best = -std::numeric_limits<double>::infinity();
  for (const double x : xs) {
    const double w_p = terms.v_p + x - terms.t_p;
    const double w_c = terms.v_c - x - terms.t_c;
    const double worst_side = std::min(w_p, w_c);
    if (worst_side > best) {
      best = worst_side;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace ecokit
