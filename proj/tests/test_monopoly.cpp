#include <doctest.h>

#include <cmath>
#include <random>

#include "fairprice/errors.hpp"
#include "fairprice/monopoly.hpp"

using namespace fairprice;

namespace {

MonopolyScenario scenario(double eps, double theta, double gamma, Regime regime, double cost = 1.0) {
  MonopolyScenario s = acclimated_scenario(eps, theta, gamma, cost);
  s.regime = regime;
  return s;
}

}  // namespace

TEST_CASE("regime names round trip") {
  for (Regime r : {Regime::NoFairness, Regime::ObservableCost, Regime::RationalInference,
                   Regime::Subproportional}) {
    CHECK(regime_from_string(to_string(r)) == r);
  }
  CHECK_THROWS_AS(regime_from_string("fair"), InvalidParameter);
}

TEST_CASE("no-fairness and rational-inference markups are the standard markup") {
  for (Regime r : {Regime::NoFairness, Regime::RationalInference}) {
    const MonopolyOutcome o = solve_markup(scenario(3.0, 9.0, 0.8, r, 2.0));
    CHECK(o.markup == doctest::Approx(1.5));
    CHECK(o.price == doctest::Approx(3.0));
    CHECK(o.passthrough == doctest::Approx(1.0));
  }
}

TEST_CASE("acclimated subproportional solution matches the closed forms") {
  for (double eps : {1.8, 2.23, 4.0}) {
    for (double theta : {1.0, 9.0}) {
      for (double gamma : {0.2, 0.8, 1.0}) {
        const MonopolyScenario s = scenario(eps, theta, gamma, Regime::Subproportional);
        const MonopolyOutcome o = solve_markup(s);
        CHECK(o.markup == doctest::Approx(acclimated_markup(eps, theta, gamma)).epsilon(1e-10));
        CHECK(o.perceived_markup == doctest::Approx(standard_markup(eps)).epsilon(1e-9));
        CHECK(o.passthrough == doctest::Approx(acclimated_passthrough(eps, theta, gamma)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("acclimated markup oracle values") {
  // M = 1 + 1/((1+γθ)ε − 1)
  CHECK(acclimated_markup(2.0, 1.0, 1.0) == doctest::Approx(1.0 + 1.0 / 3.0));
  CHECK(acclimated_markup(2.23, 0.0, 0.8) == doctest::Approx(2.23 / 1.23));
  CHECK(acclimated_passthrough(2.23, 9.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("fairness lowers markups and passthrough") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> e(1.5, 6.0), th(0.1, 20.0), g(0.05, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double eps = e(rng), theta = th(rng), gamma = g(rng);
    const MonopolyOutcome o = solve_markup(scenario(eps, theta, gamma, Regime::Subproportional));
    CHECK(o.markup > 1.0);
    CHECK(o.markup < standard_markup(eps));
    CHECK(o.passthrough > 0.0);
    CHECK(o.passthrough < 1.0);
  }
}

TEST_CASE("observable-cost markup solves the fixed point") {
  const MonopolyScenario s = scenario(2.23, 9.0, 0.8, Regime::ObservableCost);
  const MonopolyOutcome o = solve_markup(s);
  CHECK(o.perceived_markup == doctest::Approx(o.markup));
  CHECK(o.markup == doctest::Approx(o.elasticity / (o.elasticity - 1.0)).epsilon(1e-10));
  CHECK(o.markup < s.fairness.m_high());
}

TEST_CASE("markup equals elasticity over elasticity minus one in every regime") {
  for (Regime r : {Regime::NoFairness, Regime::ObservableCost, Regime::RationalInference,
                   Regime::Subproportional}) {
    const MonopolyOutcome o = solve_markup(scenario(2.5, 4.0, 0.6, r));
    CHECK(o.markup == doctest::Approx(o.elasticity / (o.elasticity - 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("passthrough agrees with finite differences of the solved price") {
  const double h = 1e-6;
  for (Regime r : {Regime::ObservableCost, Regime::Subproportional}) {
    MonopolyScenario s = scenario(2.23, 9.0, 0.8, r);
    const MonopolyOutcome o = solve_markup(s);
    MonopolyScenario up = s, dn = s;
    up.marginal_cost *= std::exp(h);
    dn.marginal_cost *= std::exp(-h);
    const double fd = (std::log(solve_markup(up).price) - std::log(solve_markup(dn).price)) / (2 * h);
    CHECK(o.passthrough == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("profit is single peaked at the solved price") {
  for (Regime r : {Regime::NoFairness, Regime::ObservableCost, Regime::RationalInference,
                   Regime::Subproportional}) {
    const MonopolyScenario s = scenario(2.23, 9.0, 0.8, r);
    const auto grid = price_grid(s, 4000);
    const auto scan = profit_scan(s, grid);
    const SignChangeSummary sc = count_sign_changes(scan);
    CHECK(sc.changes == 1);
    CHECK(sc.positive_to_negative == 1);
    const double p_star = solve_markup(s).price;
    REQUIRE(sc.first_negative_index > 0);
    CHECK(grid[static_cast<std::size_t>(sc.first_negative_index - 1)] <= p_star);
    CHECK(grid[static_cast<std::size_t>(sc.first_negative_index)] >= p_star);
  }
}

TEST_CASE("subproportional price domain ends where perceived markup reaches the bound") {
  const MonopolyScenario s = scenario(2.23, 9.0, 0.8, Regime::Subproportional);
  const double pb = price_domain_upper(s);
  CHECK(regime_perceived_markup(pb, s) == doctest::Approx(s.fairness.m_high()).epsilon(1e-12));
  CHECK(demand(pb * 0.999, s) > 0.0);
  CHECK(std::isinf(price_domain_upper(scenario(2.23, 9.0, 0.8, Regime::NoFairness))));
}

TEST_CASE("too low a prior cost is rejected") {
  MonopolyScenario s = scenario(2.23, 9.0, 0.8, Regime::Subproportional);
  s.belief = BeliefSpec(0.8, 1e-3, 2.23);
  CHECK_THROWS_AS(s.validate(), InvalidParameter);
  CHECK_THROWS_AS(solve_markup(s), InvalidParameter);
}

TEST_CASE("comparative statics table ordering and monotonicity") {
  const auto rows = acclimated_comparative_statics({2.0, 3.0}, {1.0, 5.0}, {0.2, 0.5, 0.9});
  REQUIRE(rows.size() == 12);
  CHECK(rows[0].gamma == 0.2);
  CHECK(rows[1].gamma == 0.5);
  CHECK(rows[3].theta == 5.0);
  CHECK(rows[6].epsilon == 3.0);
  for (const auto& r : rows) {
    CHECK(r.markup == doctest::Approx(acclimated_markup(r.epsilon, r.theta, r.gamma)));
  }
  // markup falls in γ and θ
  CHECK(rows[0].markup > rows[1].markup);
  CHECK(rows[0].markup > rows[3].markup);
}
