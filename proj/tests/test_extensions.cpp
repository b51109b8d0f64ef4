#include <doctest.h>

#include <cmath>

#include "ecokit/bargaining.hpp"
#include "ecokit/extensions.hpp"
#include "test_util.hpp"

using namespace ecokit;

TEST_CASE("federator_adjust folds fees into transaction costs") {
  const FederatorAdjustment adj = federator_adjust(
      {.v_p = 0, .v_c = 10, .t_p = 3, .t_c = 1}, {.f_p = 1, .f_c = 1, .t_f = 1.5});
  CHECK(adj.adjusted.t_p == 4.0);
  CHECK(adj.adjusted.t_c == 2.0);
  CHECK(adj.federator_surplus == 0.5);
  CHECK(adj.federator_feasible);
}

TEST_CASE("zero federator fees leave terms unchanged and are infeasible") {
  const TransactionTerms terms{.v_p = 2, .v_c = 10, .t_p = 3, .t_c = 1};
  const FederatorAdjustment adj = federator_adjust(terms, {0.0, 0.0, 0.0});
  CHECK(adj.adjusted == terms);
  CHECK(adj.federator_surplus == 0.0);
  CHECK_FALSE(adj.federator_feasible);  // strict inequality
}

TEST_CASE("symmetric federator fees do not move the bargained fee") {
  test::Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const TransactionTerms terms = test::feasible_terms(rng, 10.0, 100.0);
    FederatorTerms fed;
    fed.f_p = rng.uniform(0.0, 2.0);
    fed.f_c = fed.f_p;
    fed.t_f = rng.uniform(0.0, 2.0 * fed.f_p);

    const TransactionTerms adjusted = federator_adjust(terms, fed).adjusted;
    if (adjusted.v_c + adjusted.v_p <= adjusted.t_c + adjusted.t_p + 1e-6) {
      continue;  // fees may eat the whole margin; skip those draws
    }
    const double base = two_actor_fee(terms).x_star;
    const double with_federator = two_actor_fee(adjusted).x_star;
    CHECK(std::abs(with_federator - base) <= 1e-12);
  }
}

TEST_CASE("federator fees reduce the edge margin by exactly their sum") {
  test::Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    TransactionTerms terms = test::feasible_terms(rng);
    terms.x = rng.uniform(-10.0, 10.0);
    FederatorTerms fed;
    fed.f_p = rng.uniform(0.0, 5.0);
    fed.f_c = rng.uniform(0.0, 5.0);
    fed.t_f = rng.uniform(0.0, 5.0);

    const double before = edge_surplus(terms).margin;
    const double after = edge_surplus(federator_adjust(terms, fed).adjusted).margin;
    CHECK(std::abs(after - (before - fed.f_p - fed.f_c)) <= 1e-12);
  }
}

TEST_CASE("compare_gaiax_dataspace computes fees and premium") {
  const ComparisonResult r =
      compare_gaiax_dataspace({.delta_v = 4.0, .t_p_g = 2.0, .alpha = 0.1});
  CHECK(r.x_g == doctest::Approx(2.9).epsilon(1e-12));
  CHECK(r.x_d == 2.0);
  CHECK(r.premium == doctest::Approx(0.9).epsilon(1e-12));
  CHECK_FALSE(r.t_d.has_value());
  CHECK(r.note.find("equal bargaining power") != std::string::npos);
}

TEST_CASE("gaiax fee is the 2-actor solution on asymmetric costs") {
  const ComparisonResult r =
      compare_gaiax_dataspace({.delta_v = 4.0, .t_p_g = 2.0, .alpha = 0.1});
  const FeeSolution sol = two_actor_fee(
      {.v_p = 0.0, .v_c = 4.0, .t_p = 2.0, .t_c = 0.1 * 2.0});
  CHECK(r.x_g == doctest::Approx(sol.x_star).epsilon(1e-12));
}

TEST_CASE("premium vanishes without provider cost or with symmetric costs") {
  CHECK(compare_gaiax_dataspace({.delta_v = 4.0, .t_p_g = 0.0, .alpha = 0.1})
            .premium == 0.0);
  const double tiny = compare_gaiax_dataspace(
                          {.delta_v = 4.0, .t_p_g = 2.0, .alpha = 0.999999})
                          .premium;
  CHECK(tiny == doctest::Approx(0.0).epsilon(1e-5));
}

TEST_CASE("premium identity holds across alphas") {
  test::Rng rng(43);
  for (double alpha : {0.01, 0.05, 0.1, 0.5, 0.9}) {
    for (int i = 0; i < 20; ++i) {
      ComparisonParams p;
      p.delta_v = rng.uniform(-10.0, 10.0);
      p.t_p_g = rng.uniform(0.0, 10.0);
      p.alpha = alpha;
      const ComparisonResult r = compare_gaiax_dataspace(p);
      CHECK(std::abs(r.premium - 0.5 * (1.0 - alpha) * p.t_p_g) <= 1e-12);
      CHECK(r.premium >= 0.0);
    }
  }
}

TEST_CASE("compare derives t_d from beta only when t_d is absent") {
  ComparisonParams p{.delta_v = 4.0, .t_p_g = 2.0, .alpha = 0.1};
  p.beta = 0.4;
  CHECK(*compare_gaiax_dataspace(p).t_d == doctest::Approx(0.8));
  p.t_d = 1.5;
  CHECK(*compare_gaiax_dataspace(p).t_d == 1.5);
}

TEST_CASE("compare validates alpha") {
  CHECK_THROWS_AS(
      compare_gaiax_dataspace({.delta_v = 4.0, .t_p_g = 2.0, .alpha = 1.0}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      compare_gaiax_dataspace({.delta_v = 4.0, .t_p_g = 2.0, .alpha = 0.0}),
      std::invalid_argument);
}

namespace {

Ecosystem star_topology(double hub_edge_v_p) {
  std::vector<Participant> participants{{"hub", 0.0}};
  std::vector<Edge> edges;
  for (int i = 0; i < 4; ++i) {
    const std::string spoke = "s" + std::to_string(i);
    participants.push_back({spoke, 0.0});
    edges.push_back({spoke, "hub",
                     {.v_p = i == 0 ? hub_edge_v_p : 0.0, .v_c = 5.0,
                      .t_p = 1.0, .t_c = 1.0}});
  }
  return Ecosystem(participants, edges);
}

Ecosystem chain_topology() {
  std::vector<Participant> participants{{"a", 0.0}, {"b", 0.0}, {"c", 0.0}};
  std::vector<Edge> edges{{"a", "b", {.v_p = 0, .v_c = 3, .t_p = 1, .t_c = 1}},
                          {"b", "c", {.v_p = 0, .v_c = 3, .t_p = 1, .t_c = 1}}};
  return Ecosystem(participants, edges);
}

}  // namespace

TEST_CASE("hidden value function makes every topology indeterminate") {
  CHECK(classify_structure(star_topology(0.0), false) ==
        StructureClass::indeterminate);
  CHECK(classify_structure(star_topology(5.0), false) ==
        StructureClass::indeterminate);
  CHECK(classify_structure(chain_topology(), false) ==
        StructureClass::indeterminate);
  CHECK(classify_structure(Ecosystem{}, false) ==
        StructureClass::indeterminate);
}

TEST_CASE("visible value separates platforms from ecosystems proper") {
  CHECK(classify_structure(star_topology(0.0), true) ==
        StructureClass::market_arrangement);
  CHECK(classify_structure(star_topology(5.0), true) ==
        StructureClass::ecosystem_proper);
}
