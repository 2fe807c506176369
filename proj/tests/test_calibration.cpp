#include <doctest.h>

#include <cmath>

#include "fairprice/calibration.hpp"
#include "fairprice/errors.hpp"
#include "fairprice/nk_steady.hpp"

using namespace fairprice;

TEST_CASE("firm steady state matches the macro steady markup") {
  const FirmParams fp;
  const FirmSteady ss = firm_steady(fp, 1.0);
  CHECK(ss.markup == doctest::Approx(steady_state(0.0, NKParams{}).markup_bar).epsilon(1e-12));
  CHECK(std::abs(firm_steady_residual(fp, ss)) < 1e-12);
  const FirmSteady doubled = firm_steady(fp, 2.0);
  CHECK(doubled.price == doctest::Approx(2.0 * ss.price));
}

TEST_CASE("symmetric passthrough path at the baseline") {
  FirmPathProblem prob;
  const PassthroughPath path = simulate_passthrough(prob);
  REQUIRE(path.beta.size() == 200);
  CHECK(path.beta[0] == doctest::Approx(0.19374).epsilon(1e-4));
  CHECK(path.beta[8] == doctest::Approx(0.41270).epsilon(1e-4));
  CHECK(path.residuals.worst() <= kPathResidualTol);
  for (std::size_t t = 1; t < path.beta.size(); ++t) CHECK(path.beta[t] >= path.beta[t - 1] - 1e-12);
  CHECK(path.beta.back() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(path.beta.back() <= 1.0 + 1e-12);
}

TEST_CASE("passthrough is insensitive to doubling the horizon") {
  FirmPathProblem a, b;
  b.horizon = 400;
  const PassthroughPath pa = simulate_passthrough(a), pb = simulate_passthrough(b);
  for (int t : {0, 4, 8, 20}) CHECK(std::abs(pa.beta[t] - pb.beta[t]) < 1e-6);
}

TEST_CASE("passthrough is proportional for small shocks") {
  FirmPathProblem a, b;
  a.cost_shock = 0.001;
  b.cost_shock = -0.001;
  const PassthroughPath pa = simulate_passthrough(a), pb = simulate_passthrough(b);
  CHECK(pa.beta[0] == doctest::Approx(pb.beta[0]).epsilon(1e-2));
}

TEST_CASE("no anchoring means full immediate passthrough") {
  FirmPathProblem prob;
  prob.params.theta = 0.0;
  const PassthroughPath path = simulate_passthrough(prob);
  CHECK(path.beta[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("analytic Jacobian matches finite differences") {
  for (PricingEquation eq : {PricingEquation::Symmetric, PricingEquation::Idiosyncratic}) {
    FirmPathProblem prob;
    prob.horizon = 12;
    prob.equation = eq;
    const FirmSteady s0 = firm_steady(prob.params, 1.0);
    Eigen::VectorXd u(2 * prob.horizon);
    for (int t = 0; t < prob.horizon; ++t) {
      u(2 * t) = std::log(s0.price) + 0.0005 * (t + 1);
      u(2 * t + 1) = std::log(s0.perceived_markup) - 0.0003 * t;
    }
    const Eigen::MatrixXd jac = Eigen::MatrixXd(stacked_jacobian(prob, u));
    const double h = 1e-7;
    double worst = 0.0;
    for (int j = 0; j < u.size(); ++j) {
      Eigen::VectorXd up = u, dn = u;
      up(j) += h;
      dn(j) -= h;
      const Eigen::VectorXd fd = (stacked_residual(prob, up) - stacked_residual(prob, dn)) / (2 * h);
      worst = std::max(worst, (fd - jac.col(j)).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("idiosyncratic pricing has no saddle path") {
  FirmPathProblem prob;
  prob.equation = PricingEquation::Idiosyncratic;
  const auto roots = linearized_roots(prob);
  int complex_pair = 0;
  for (const auto& z : roots) {
    if (std::abs(z.imag()) > 1e-8) {
      ++complex_pair;
      CHECK(std::abs(z) == doctest::Approx(1.0 / std::sqrt(prob.params.delta)).epsilon(1e-6));
    }
  }
  CHECK(complex_pair == 2);
  CHECK_THROWS_AS(simulate_passthrough(prob), NonConvergence);
}

TEST_CASE("epsilon recovered from the markup target") {
  const double m = firm_steady(FirmParams{}, 1.0).markup;
  CHECK(epsilon_from_markup(9.0, 0.8, m, 0.99) == doctest::Approx(2.23).epsilon(1e-8));
  CHECK(epsilon_from_markup(0.0, 0.8, 1.5, 0.99) == doctest::Approx(3.0));
  CHECK_THROWS_AS(epsilon_from_markup(500.0, 0.95, 1.5, 0.99), NoRoot);
  CHECK_THROWS_AS(epsilon_from_markup(1.0, 0.5, 1.0, 0.99), InvalidParameter);
}

TEST_CASE("calibration recovers the moments it targets") {
  const CalibrationTargets targets;
  const CalibrationResult r = calibrate(targets, 0.99);
  CHECK(r.markup == doctest::Approx(1.5).epsilon(1e-8));
  CHECK(std::abs(r.beta0 - 0.4) < 0.005);
  CHECK(std::abs(r.beta_2yr - 0.7) < 0.005);
  const CalibrationResult again = evaluate_candidate(r.theta, r.gamma, targets, 0.99, 200);
  CHECK(again.beta0 == doctest::Approx(r.beta0).epsilon(1e-9));
  CHECK(again.epsilon == doctest::Approx(r.epsilon).epsilon(1e-9));
}

TEST_CASE("calibration round trip at a known parameter point") {
  // Moments generated at (θ, γ) = (6, 0.7) are recovered.
  const CalibrationTargets probe{1.5, 0.4, 0.7, 8};
  const CalibrationResult gen = evaluate_candidate(6.0, 0.7, probe, 0.99, 200);
  const CalibrationTargets targets{1.5, gen.beta0, gen.beta_2yr, 8};
  const CalibrationResult r = calibrate(targets, 0.99);
  CHECK(r.theta == doctest::Approx(6.0).epsilon(1e-4));
  CHECK(r.gamma == doctest::Approx(0.7).epsilon(1e-4));
}

TEST_CASE("unreachable moments report the violated boundary") {
  CalibrationTargets targets;
  targets.beta0 = 0.999999;
  targets.beta_2yr = 0.9999999;
  try {
    calibrate(targets, 0.99);
    FAIL("expected SearchFailure");
  } catch (const SearchFailure& e) {
    CHECK_FALSE(e.boundary().empty());
    CHECK(e.best().evaluations >= 0);
  }
}

TEST_CASE("firm problem validation") {
  FirmPathProblem prob;
  prob.cost_shock = 0.0;
  CHECK_THROWS_AS(simulate_passthrough(prob), InvalidParameter);
  prob = FirmPathProblem{};
  prob.params.gamma = 1.0;
  CHECK_THROWS_AS(simulate_passthrough(prob), InvalidParameter);
  prob = FirmPathProblem{};
  prob.horizon = 1;
  CHECK_THROWS_AS(simulate_passthrough(prob), InvalidParameter);
}
