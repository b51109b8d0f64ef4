#pragma once

#include <random>
#include <string>
#include <vector>

#include "ecokit/core_model.hpp"

namespace ecokit::test {

/// Deterministic uniform sampler for property tests.
class Rng {
 public:
  explicit Rng(unsigned long long seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  long long integer(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Feasible random terms: values in [lo, hi], costs low enough that the
/// total value strictly covers the total cost.
inline TransactionTerms feasible_terms(Rng& rng, double lo = 0.0,
                                       double hi = 100.0) {
  for (;;) {
    TransactionTerms terms;
    terms.v_p = rng.uniform(lo, hi);
    terms.v_c = rng.uniform(lo, hi);
    terms.t_p = rng.uniform(lo, hi);
    terms.t_c = rng.uniform(lo, hi);
    if (terms.v_c + terms.v_p > terms.t_c + terms.t_p + 1e-6) return terms;
  }
}

/// A random well-formed ecosystem with `edge_count` edges between distinct
/// provider/consumer participants; fees unset.
inline Ecosystem random_ecosystem(Rng& rng, int edge_count,
                                  double investment_hi = 0.0) {
  std::vector<Participant> participants;
  std::vector<Edge> edges;
  for (int i = 0; i < edge_count; ++i) {
    const std::string p = "p" + std::to_string(i);
    const std::string c = "c" + std::to_string(i);
    participants.push_back({p, 0.0});
    participants.push_back(
        {c, investment_hi > 0.0 ? rng.uniform(0.0, investment_hi) : 0.0});
    Edge e{p, c, feasible_terms(rng)};
    edges.push_back(e);
  }
  return Ecosystem(std::move(participants), std::move(edges), "t0");
}

}  // namespace ecokit::test
