#include <doctest.h>

#include <cmath>

#include "ecokit/hub_analysis.hpp"
#include "ecokit/oracle.hpp"
#include "test_util.hpp"

using namespace ecokit;

namespace {

/// Worked model: V^C(n) = 20n - 0.5n^2, T^C(n) = 2n, n(X) = 2X.
ParametricHubModel worked_model(bool analytic) {
  ParametricHubModel model;
  model.n_of_x = [](double x) { return 2.0 * x; };
  model.v_c_of_n = [](double n) { return 20.0 * n - 0.5 * n * n; };
  model.t_c_of_n = [](double n) { return 2.0 * n; };
  model.v_p = 0.0;
  model.t_p = 1.0;
  if (analytic) {
    model.n_prime = [](double) { return 2.0; };
    model.marginal_net_value = [](double n) { return 18.0 - n; };
  }
  return model;
}

/// Random linear-supply, quadratic-value model with its analytically known
/// first-order-condition roots (used as the independent cross-check).
struct RandomModel {
  ParametricHubModel model;
  double root_w = 0.0;
  double root_c = 0.0;
};

RandomModel random_smooth_model(test::Rng& rng) {
  const double a = rng.uniform(0.0, 1.0);    // n(X) = a + bX
  const double b = rng.uniform(1.0, 3.0);
  const double v = rng.uniform(10.0, 30.0);  // V^C(n) = vn - qn^2
  const double q = rng.uniform(0.05, 0.5);
  const double c = rng.uniform(0.0, 3.0);    // T^C(n) = cn

  RandomModel rm;
  rm.model.n_of_x = [a, b](double x) { return a + b * x; };
  rm.model.v_c_of_n = [v, q](double n) { return v * n - q * n * n; };
  rm.model.t_c_of_n = [c](double n) { return c * n; };
  rm.model.n_prime = [b](double) { return b; };
  rm.model.marginal_net_value = [v, q, c](double n) { return v - c - 2.0 * q * n; };
  // marginal(n(X)) = X         =>  root_w = (v - c - 2qa) / (2qb + 1)
  // marginal - n/n' = X        =>  root_c = (v - c - 2qa - a/b) / (2qb + 2)
  rm.root_w = (v - c - 2.0 * q * a) / (2.0 * q * b + 1.0);
  rm.root_c = (v - c - 2.0 * q * a - a / b) / (2.0 * q * b + 2.0);
  return rm;
}

}  // namespace

TEST_CASE("uniform_hub_fee amortizes the investment over the spokes") {
  const FeeSolution sol =
      uniform_hub_fee({.v_p = 0, .t_p = 3, .v_c = 10, .t_c = 1, .i_c = 20, .n = 10});
  CHECK(sol.x_star == 5.0);
  CHECK(sol.w_p == 2.0);                   // per-provider surplus
  CHECK(sol.w_c * 10 == doctest::Approx(20.0));  // hub aggregate net of i_c
  CHECK(sol.range_high == doctest::Approx(10.0 - 1.0 - 2.0));
}

TEST_CASE("uniform_hub_fee with no investment is the 2-actor solution") {
  const HubParams p{.v_p = 2, .t_p = 3, .v_c = 10, .t_c = 1, .i_c = 0, .n = 7};
  const FeeSolution hub = uniform_hub_fee(p);
  const FeeSolution flat =
      two_actor_fee({.v_p = p.v_p, .v_c = p.v_c, .t_p = p.t_p, .t_c = p.t_c});
  CHECK(hub.x_star == flat.x_star);
  CHECK(hub.range_high == flat.range_high);
}

TEST_CASE("uniform_hub_fee rejects an unrecoverable investment") {
  CHECK_THROWS_AS(uniform_hub_fee({.v_p = 0, .t_p = 3, .v_c = 10, .t_c = 1,
                                   .i_c = 100, .n = 10}),
                  Infeasible);
}

TEST_CASE("amortization gap is exactly -i_c/(2n)") {
  test::Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    HubParams p;
    p.v_p = rng.uniform(50.0, 100.0);
    p.v_c = rng.uniform(50.0, 100.0);
    p.t_p = rng.uniform(0.0, 20.0);
    p.t_c = rng.uniform(0.0, 20.0);
    p.i_c = rng.uniform(0.0, 9.0);
    const double flat =
        two_actor_fee({.v_p = p.v_p, .v_c = p.v_c, .t_p = p.t_p, .t_c = p.t_c})
            .x_star;
    for (long long n : {1LL, 10LL, 1000LL}) {
      p.n = n;
      const double gap = uniform_hub_fee(p).x_star - flat;
      CHECK(std::abs(gap + p.i_c / (2.0 * static_cast<double>(n))) <= 1e-12);
    }
  }
}

TEST_CASE("hub fee approaches the 2-actor fee as n grows") {
  const HubParams p{.v_p = 0, .t_p = 3, .v_c = 10, .t_c = 1, .i_c = 4.0,
                    .n = 1000000};
  const double flat =
      two_actor_fee({.v_p = p.v_p, .v_c = p.v_c, .t_p = p.t_p, .t_c = p.t_c})
          .x_star;
  CHECK(std::abs(uniform_hub_fee(p).x_star - flat) <= 1e-5 * p.i_c);
}

TEST_CASE("provider_threshold computes the break-even count") {
  const ThresholdResult r = provider_threshold({10.0, 1.0, 3.0, 120.0});
  CHECK(r.denom == 6.0);
  REQUIRE(r.n_tilde.has_value());
  CHECK(*r.n_tilde == 20.0);
  REQUIRE(r.n_min.has_value());
  CHECK(*r.n_min == 21);  // equality at 20 is excluded by strictness
}

TEST_CASE("provider_threshold without investment starts at one provider") {
  const ThresholdResult r = provider_threshold({10.0, 1.0, 3.0, 0.0});
  CHECK(*r.n_tilde == 0.0);
  CHECK(*r.n_min == 1);
}

TEST_CASE("provider_threshold reports none for negative per-provider margin") {
  const ThresholdResult r = provider_threshold({3.0, 1.0, 3.0, 10.0});
  CHECK(r.denom == -1.0);
  CHECK_FALSE(r.n_tilde.has_value());
  CHECK_FALSE(r.n_min.has_value());
}

TEST_CASE("hub_feasibility_curve crosses zero at the threshold") {
  const auto curve = hub_feasibility_curve({10.0, 1.0, 3.0, 120.0}, 18, 22);
  REQUIRE(curve.size() == 5);
  const double expected_margin[] = {-12.0, -6.0, 0.0, 6.0, 12.0};
  const bool expected_flag[] = {false, false, false, true, true};
  for (int i = 0; i < 5; ++i) {
    CHECK(curve[i].n == 18 + i);
    CHECK(curve[i].margin == expected_margin[i]);
    CHECK(curve[i].feasible == expected_flag[i]);
  }
  int sign_changes = 0;
  for (int i = 1; i < 5; ++i) {
    sign_changes += curve[i].feasible != curve[i - 1].feasible;
  }
  CHECK(sign_changes == 1);
}

TEST_CASE("hub_feasibility_curve without investment is feasible throughout") {
  const auto curve = hub_feasibility_curve({10.0, 1.0, 3.0, 0.0}, 1, 5);
  for (const CurveSample& s : curve) {
    CHECK(s.margin == 6.0 * static_cast<double>(s.n));
    CHECK(s.feasible);
  }
}

TEST_CASE("welfare_max_fee solves the worked model") {
  const WelfareAnalysis a =
      welfare_max_fee(worked_model(true), {0.0, 10.0});
  REQUIRE(a.x_star_w.has_value());
  CHECK(*a.x_star_w == doctest::Approx(6.0).epsilon(1e-10));
  CHECK(*a.n_at_w == doctest::Approx(12.0).epsilon(1e-10));
  // W(X) = 36X - 3X^2 (with v integrated from 0), so W(6) = 108.
  CHECK(*a.total_welfare == doctest::Approx(108.0).epsilon(1e-6));
}

TEST_CASE("welfare_max_fee under central differences matches analytic") {
  const WelfareAnalysis a =
      welfare_max_fee(worked_model(false), {0.0, 10.0});
  CHECK(*a.x_star_w == doctest::Approx(6.0).epsilon(1e-6));
}

TEST_CASE("welfare fee equals the constant marginal under linear value") {
  ParametricHubModel model;
  model.n_of_x = [](double x) { return 1.0 + 3.0 * x; };
  model.v_c_of_n = [](double n) { return 7.5 * n; };
  model.t_c_of_n = [](double n) { return 2.5 * n; };
  const WelfareAnalysis a = welfare_max_fee(model, {0.0, 20.0});
  CHECK(*a.x_star_w == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("welfare_max_fee reports a missing bracket") {
  CHECK_THROWS_AS(welfare_max_fee(worked_model(true), {7.0, 10.0}), NoBracket);
}

TEST_CASE("utility_max_fee solves the worked model with Lerner identity") {
  const WelfareAnalysis a =
      utility_max_fee(worked_model(true), {0.1, 10.0});
  REQUIRE(a.x_star_c.has_value());
  CHECK(*a.x_star_c == doctest::Approx(4.5).epsilon(1e-10));
  CHECK(*a.n_at_c == doctest::Approx(9.0).epsilon(1e-10));
  CHECK(*a.eta_p == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(*a.lerner_residual) <= 1e-6);
}

TEST_CASE("utility_max_fee rejects inelastic supply") {
  ParametricHubModel model = worked_model(true);
  model.n_of_x = [](double) { return 5.0; };
  model.n_prime = [](double) { return 0.0; };
  CHECK_THROWS_AS(utility_max_fee(model, {0.1, 10.0}), InelasticSupply);
}

TEST_CASE("utility fee sits below the welfare fee") {
  const WelfareAnalysis w = welfare_max_fee(worked_model(true), {0.0, 10.0});
  const WelfareAnalysis c = utility_max_fee(worked_model(true), {0.1, 10.0});
  CHECK(*c.x_star_c < *w.x_star_w);
  CHECK(*c.x_star_c == doctest::Approx(4.5).epsilon(1e-9));
}

TEST_CASE("randomized smooth models: roots, ordering, Lerner residual") {
  test::Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const RandomModel rm = random_smooth_model(rng);
    const Bracket bracket{0.0, 30.0};
    const WelfareAnalysis w = welfare_max_fee(rm.model, bracket);
    const WelfareAnalysis c = utility_max_fee(rm.model, bracket);
    CHECK(*w.x_star_w == doctest::Approx(rm.root_w).epsilon(1e-8));
    CHECK(*c.x_star_c == doctest::Approx(rm.root_c).epsilon(1e-8));
    CHECK(*c.x_star_c <= *w.x_star_w + 1e-12);
    CHECK(std::abs(*c.lerner_residual) <= 1e-6);
  }
}

TEST_CASE("roots agree with the grid oracles within one step") {
  test::Rng rng(23);
  const GridSpec grid{0.0, 30.0, 1e-3};
  for (int i = 0; i < 100; ++i) {
    const RandomModel rm = random_smooth_model(rng);
    const GridMax welfare = grid_max_welfare(rm.model, grid);
    const GridMax consumer = grid_max_consumer(rm.model, grid);
    CHECK(std::abs(welfare.x_hat - rm.root_w) <= grid.step);
    CHECK(std::abs(consumer.x_hat - rm.root_c) <= grid.step);
  }
}

TEST_CASE("linearized_recovery matches the midpoint formula") {
  const LinearizedRecovery r = linearized_recovery(10.0, 2.0, 1.0, 3.0);
  CHECK(r.sigma_w == 8.0);
  CHECK(r.x_star == 5.0);
  CHECK(r.x_star ==
        two_actor_fee({.v_p = 2, .v_c = 10, .t_p = 3, .t_c = 1}).x_star);
}

TEST_CASE("linearized_recovery identity holds on random feasible averages") {
  test::Rng rng(24);
  for (int i = 0; i < 100; ++i) {
    const TransactionTerms terms = test::feasible_terms(rng);
    const LinearizedRecovery r =
        linearized_recovery(terms.v_c, terms.v_p, terms.t_c, terms.t_p);
    const double midpoint =
        0.5 * ((terms.v_c - terms.v_p) - (terms.t_c - terms.t_p));
    CHECK(std::abs(r.x_star - midpoint) <= 1e-12);
  }
}

TEST_CASE("linearized_recovery on egalitarian averages gives a zero fee") {
  CHECK(linearized_recovery(5.0, 5.0, 1.0, 1.0).x_star == 0.0);
}

TEST_CASE("linearized_recovery rejects non-positive net total value") {
  CHECK_THROWS_AS(linearized_recovery(1.0, 1.0, 2.0, 2.0), Infeasible);
}

TEST_CASE("recoverable_value_bound matches the linear threshold") {
  const RecoverableBound r = recoverable_value_bound(
      [](double n) { return 6.0 * n; }, [](double) { return 0.0; }, 120.0,
      1000);
  REQUIRE(r.n.has_value());
  CHECK(*r.n == 21);
}

TEST_CASE("recoverable_value_bound detects a bounded value ceiling") {
  const RecoverableBound r = recoverable_value_bound(
      [](double n) { return 10.0 * (1.0 - 1.0 / (n + 1.0)); },
      [](double) { return 0.0; }, 20.0, 100000);
  CHECK_FALSE(r.n.has_value());
  CHECK(r.ceiling < 10.0);
  CHECK(r.ceiling == doctest::Approx(10.0).epsilon(1e-3));
  CHECK(r.ceiling < 20.0);  // the investment is never recovered
}

TEST_CASE("recoverable_value_bound with no investment fires immediately") {
  const RecoverableBound r = recoverable_value_bound(
      [](double n) { return 2.0 * n; }, [](double n) { return 0.5 * n; }, 0.0,
      10);
  REQUIRE(r.n.has_value());
  CHECK(*r.n == 1);
}
