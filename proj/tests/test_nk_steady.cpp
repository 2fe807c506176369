#include <doctest.h>

#include <cmath>

#include "fairprice/errors.hpp"
#include "fairprice/nk_steady.hpp"

using namespace fairprice;

TEST_CASE("baseline zero-inflation steady state") {
  const NKParams p;
  const SteadyState ss = steady_state(0.0, p, true);
  CHECK(ss.markup_bar == doctest::Approx(1.4995197).epsilon(1e-7));
  CHECK(ss.m_p_bar == doctest::Approx(2.23 / 1.23));
  CHECK(ss.f_bar == doctest::Approx(1.0));
  CHECK(ss.phi_bar == doctest::Approx(9.0 * 2.23 / 1.23));
  CHECK(ss.sigma_bar == doctest::Approx(1.0 + ss.phi_bar));
  CHECK(ss.employment_rel == doctest::Approx(1.0));
  REQUIRE(ss.employment_abs.has_value());
  CHECK(*ss.employment_abs > 0.0);
  CHECK(std::abs(steady_pricing_residual(ss, p)) < 1e-12);
}

TEST_CASE("steady inflation and policy intercept are inverse maps") {
  const NKParams p;
  for (double pi : {-0.002, 0.0, 0.005, 0.01}) {
    CHECK(steady_inflation(i0_for_inflation(pi, p), p) == doctest::Approx(pi).epsilon(1e-12));
  }
}

TEST_CASE("markup weight and limits") {
  NKParams p;
  p.gamma = 0.0;
  CHECK(p.markup_weight() == 0.0);
  CHECK(steady_markup_from_phi(50.0, p) == doctest::Approx(2.23 / 1.23));
  p.theta = 0.0;
  p.gamma = 0.8;
  CHECK(steady_state(0.01, p).markup_bar == doctest::Approx(2.23 / 1.23));
  CHECK(std::isinf(phillips_slope_at_zero(p)));
}

TEST_CASE("long-run employment gains from 1% annual inflation") {
  NKParams p;
  const double expected[] = {1.2007, 0.8287, 0.3744, 0.0613};
  const double chis[] = {0.0, 0.3, 0.7, 1.0};
  for (int i = 0; i < 4; ++i) {
    p.chi = chis[i];
    const double gain = 100.0 * (steady_state(0.0025, p).employment_rel - 1.0);
    CHECK(gain == doctest::Approx(expected[i]).epsilon(2e-4));
  }
}

TEST_CASE("slope at zero inflation matches finite differences") {
  for (double chi : {0.0, 0.5, 1.0}) {
    for (double theta : {3.0, 9.0}) {
      NKParams p;
      p.chi = chi;
      p.theta = theta;
      const double h = 1e-6;
      const double up = std::log(steady_state(h, p).employment_rel);
      const double dn = std::log(steady_state(-h, p).employment_rel);
      const double fd = 2 * h / (up - dn);
      CHECK(phillips_slope_at_zero(p) == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("employment rises with inflation until acclimation is complete") {
  NKParams p;
  for (double chi : {0.0, 0.3, 0.7}) {
    p.chi = chi;
    double prev = -1.0;
    for (int k = 0; k <= 16; ++k) {
      const double n = steady_state(0.0025 * k / 4.0, p).employment_rel;
      CHECK(n > prev);
      prev = n;
    }
  }
}

TEST_CASE("inadmissible steady states are reported") {
  NKParams p;
  CHECK_THROWS_AS(steady_state(0.05, p), InadmissibleSteadyState);
  const auto pts = long_run_curve({0.0, 1.0, 40.0}, {0.0}, p);
  REQUIRE(pts.size() == 3);
  CHECK(pts[1].admissible);
  CHECK(pts[1].pi_annual_pct == 1.0);
  CHECK_FALSE(pts[2].admissible);
  CHECK(std::isnan(pts[2].markup));
  CHECK_FALSE(pts[2].note.empty());
}

TEST_CASE("parameter validation") {
  NKParams p;
  p.epsilon = 1.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = NKParams{};
  p.delta = 1.0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = NKParams{};
  p.psi = 0.9;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p = NKParams{};
  p.chi = -0.1;
  CHECK_THROWS_AS(steady_state(0.0, p), InvalidParameter);
}
