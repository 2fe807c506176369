#include <doctest.h>

#include <cmath>
#include <limits>

#include "fairprice/errors.hpp"
#include "fairprice/fairness.hpp"

using namespace fairprice;

TEST_CASE("fairness factor equals one at the fair markup and zero at the upper bound") {
  const FairnessSpec spec = FairnessSpec::standard(9.0, 2.23);
  const double mu = standard_markup(2.23);
  CHECK(spec.fair_markup() == doctest::Approx(mu));
  CHECK(spec.m_high() == doctest::Approx(mu + 1.0 / 9.0));
  CHECK(fairness_factor(mu, spec) == doctest::Approx(1.0));
  CHECK(fairness_factor(spec.m_high() - 1e-12, spec) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK_THROWS_AS(fairness_factor(spec.m_high(), spec), DomainError);
  CHECK_THROWS_AS(fairness_factor(-0.1, spec), DomainError);
}

TEST_CASE("elasticity and superelasticity match finite differences of ln F") {
  const FairnessSpec spec = FairnessSpec::standard(5.0, 3.0);
  const double h = 1e-6;
  for (double m : {1.0, 1.4, 1.55, 1.65}) {
    const double fd_phi = -(std::log(fairness_factor(m * std::exp(h), spec)) -
                            std::log(fairness_factor(m * std::exp(-h), spec))) / (2 * h);
    CHECK(fairness_elasticity(m, spec) == doctest::Approx(fd_phi).epsilon(1e-6));
    const double fd_sigma = (std::log(fairness_elasticity(m * std::exp(h), spec)) -
                             std::log(fairness_elasticity(m * std::exp(-h), spec))) / (2 * h);
    CHECK(fairness_superelasticity(m, spec) == doctest::Approx(fd_sigma).epsilon(1e-6));
    CHECK(fairness_superelasticity(m, spec) == doctest::Approx(1.0 + fairness_elasticity(m, spec)));
  }
}

TEST_CASE("fairness function contract holds on its domain") {
  const LinearFairness f(FairnessSpec::standard(2.0, 4.0));
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 200; ++i) {
    const double m = f.upper_bound() * i / 200.0;
    const double v = f.value(m);
    CHECK(v > 0.0);
    CHECK(v < prev);
    if (m > 0.0) CHECK(f.superelasticity(m) > 0.0);
    prev = v;
  }
}

TEST_CASE("theta = 0 switches fairness off") {
  const FairnessSpec spec = FairnessSpec::standard(0.0, 2.0);
  CHECK_FALSE(spec.has_fairness());
  CHECK(std::isinf(spec.m_high()));
  CHECK(fairness_factor(10.0, spec) == 1.0);
  CHECK(fairness_elasticity(10.0, spec) == 0.0);
}

TEST_CASE("acclimated fair markup mixes steady and standard markups") {
  const FairnessSpec spec = FairnessSpec::acclimated(9.0, 2.23, 0.3, 1.85);
  const double mu = standard_markup(2.23);
  CHECK(spec.fair_markup() == doctest::Approx(0.3 * 1.85 + 0.7 * mu));
}

TEST_CASE("invalid fairness parameters are rejected") {
  CHECK_THROWS_AS(FairnessSpec::standard(1.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(FairnessSpec::standard(-1.0, 2.0), InvalidParameter);
  CHECK_THROWS_AS(FairnessSpec::acclimated(1.0, 2.0, 1.5, 2.0), InvalidParameter);
  CHECK_THROWS_AS(FairnessSpec(1.0, 2.0, 0.5, 0.0), InvalidParameter);
  CHECK_THROWS_AS(BeliefSpec(1.2, 1.0, 2.0), InvalidParameter);
  CHECK_THROWS_AS(BeliefSpec(0.5, 0.0, 2.0), InvalidParameter);
}

TEST_CASE("perceived markup limits") {
  const double eps = 2.5;
  const double mu = standard_markup(eps);
  const BeliefSpec rational(0.0, 0.7, eps);
  CHECK(perceived_markup(3.0, rational) == doctest::Approx(mu));
  const BeliefSpec anchored(1.0, 0.7, eps);
  CHECK(perceived_markup(3.0, anchored) == doctest::Approx(3.0 / 0.7));
  const BeliefSpec mixed(0.4, 0.7, eps);
  const double p = 2.0;
  CHECK(perceived_markup(p, mixed) == doctest::Approx(p / perceived_cost(p, mixed)));
  CHECK(perceived_markup(p, mixed) ==
        doctest::Approx(std::pow(mu, 0.6) * std::pow(p / 0.7, 0.4)));
  CHECK_THROWS_AS(perceived_markup(0.0, mixed), DomainError);
}

TEST_CASE("prior-cost admissibility bound is exact") {
  const FairnessSpec spec = FairnessSpec::standard(9.0, 2.23);
  const double gamma = 0.8, c = 1.0;
  const double mu = spec.fair_markup();
  const double bound = c * std::pow(mu, (1 - gamma) / gamma) * std::pow(spec.m_high(), -1.0 / gamma);
  CHECK(BeliefSpec(gamma, bound * 1.0001, 2.23).admits_cost(c, spec.m_high()));
  CHECK_FALSE(BeliefSpec(gamma, bound * 0.9999, 2.23).admits_cost(c, spec.m_high()));
  // At the bound the perceived markup of pricing at cost is exactly Mʰ.
  CHECK(perceived_markup(c, BeliefSpec(gamma, bound, 2.23)) == doctest::Approx(spec.m_high()));
}
