#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fairprice/errors.hpp"
#include "fairprice/nk_linear.hpp"

using namespace fairprice;

TEST_CASE("Phillips curve slopes at the baseline") {
  const NKParams p;
  const Lambdas l = lambdas(p);
  CHECK(l.lambda1 == doctest::Approx(0.276486).epsilon(1e-5));
  CHECK(l.lambda2 == doctest::Approx(0.267045).epsilon(1e-5));
  const Lambdas lo = lambdas_from_omegas(p);
  CHECK(lo.lambda1 == doctest::Approx(l.lambda1).epsilon(1e-12));
  CHECK(lo.lambda2 == doctest::Approx(l.lambda2).epsilon(1e-12));
  CHECK(expected_inflation_coefficient(p) == doctest::Approx(p.delta * p.gamma).epsilon(1e-12));
}

TEST_CASE("slope identities hold across parameters") {
  for (double theta : {1.0, 5.0, 20.0}) {
    for (double gamma : {0.2, 0.6, 0.95}) {
      for (double eps : {1.5, 2.23, 6.0}) {
        NKParams p;
        p.theta = theta;
        p.gamma = gamma;
        p.epsilon = eps;
        const Lambdas a = lambdas(p), b = lambdas_from_omegas(p);
        CHECK(a.lambda1 == doctest::Approx(b.lambda1).epsilon(1e-10));
        CHECK(a.lambda2 == doctest::Approx(b.lambda2).epsilon(1e-10));
        CHECK(expected_inflation_coefficient(p) == doctest::Approx(p.delta * gamma).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("system matrices, spectrum and shock loading") {
  const NKParams p;
  const LogLinSystem sys = assemble(p, ShockKind::Monetary);
  const Eigen::Matrix3d inv = closed_form_rhs_inverse(p, lambdas(p));
  CHECK((inv * sys.rhs - Eigen::Matrix3d::Identity()).norm() < 1e-12);
  CHECK((sys.rhs * sys.gamma_matrix - sys.lhs).norm() < 1e-12);
  CHECK(sys.psi_vector(0) == doctest::Approx(0.0));
  CHECK(sys.psi_vector(1) == doctest::Approx(0.252157).epsilon(1e-5));
  CHECK(sys.psi_vector(2) == doctest::Approx(0.747843).epsilon(1e-5));
  const EigenReport rep = eigencheck(sys.re_model());
  CHECK(rep.verdict == Determinacy::Unique);
  REQUIRE(rep.spectrum.size() == 3);
  CHECK(rep.spectrum[0].real() == doctest::Approx(0.299493).epsilon(1e-5));
  CHECK(std::abs(rep.spectrum[1].real() - 1.022389) < 1e-5);
  CHECK(std::abs(std::abs(rep.spectrum[1].imag()) - 0.027773) < 1e-5);
  CHECK(sys.shock_persistence == p.mu_i);
  CHECK(assemble(p, ShockKind::Technology).shock_persistence == p.mu_a);
}

TEST_CASE("monetary impulse responses") {
  const NKParams p;
  const IRFSeries irf = monetary_irf(p);
  REQUIRE(irf.horizon() == kDefaultHorizon);
  CHECK(irf.i0_hat[0] == doctest::Approx(-kMonetaryImpulse));
  const auto peak = std::max_element(irf.n_hat.begin(), irf.n_hat.end());
  CHECK(100.0 * *peak == doctest::Approx(0.6731).epsilon(1e-3));
  CHECK(peak - irf.n_hat.begin() == 1);
  CHECK(100.0 * *std::min_element(irf.m_hat.begin(), irf.m_hat.end()) ==
        doctest::Approx(-1.4135).epsilon(1e-3));
  CHECK(fairness_irf_residuals(irf, p).worst() < 1e-10);
  CHECK(is_residual(irf, p) < 1e-10);
}

TEST_CASE("technology impulse responses") {
  const NKParams p;
  const IRFSeries irf = technology_irf(p);
  CHECK(irf.a_hat[0] == doctest::Approx(kTechnologyImpulse));
  CHECK(irf.a_hat[3] == doctest::Approx(kTechnologyImpulse * std::pow(p.mu_a, 3)));
  const auto trough = std::min_element(irf.n_hat.begin(), irf.n_hat.end());
  CHECK(100.0 * *trough == doctest::Approx(-0.6124).epsilon(1e-3));
  CHECK(trough - irf.n_hat.begin() == 1);
  CHECK(100.0 * *std::max_element(irf.m_hat.begin(), irf.m_hat.end()) ==
        doctest::Approx(1.2861).epsilon(1e-3));
  CHECK(100.0 * irf.y_hat[0] == doctest::Approx(0.526).epsilon(1e-3));
  for (int t = 0; t < irf.horizon(); ++t) {
    CHECK(irf.y_hat[t] == doctest::Approx(irf.n_hat[t] + irf.a_hat[t]));
  }
  CHECK(fairness_irf_residuals(irf, p).worst() < 1e-10);
}

TEST_CASE("responses scale linearly and decay") {
  const NKParams p;
  const IRFSeries a = monetary_irf(p, kMonetaryImpulse, 120);
  const IRFSeries b = monetary_irf(p, 2.0 * kMonetaryImpulse, 120);
  for (int t = 0; t < 120; ++t) CHECK(b.n_hat[t] == doctest::Approx(2.0 * a.n_hat[t]));
  CHECK(std::abs(a.n_hat.back()) < 1e-6);
}

TEST_CASE("injected slope error is caught by the residual checks") {
  const NKParams p;
  Lambdas l = lambdas(p);
  l.lambda1 *= 1.1;
  const IRFSeries bad = fairness_irf(assemble_with_lambdas(p, ShockKind::Monetary, l), p,
                                     kMonetaryImpulse, kDefaultHorizon);
  CHECK(fairness_irf_residuals(bad, p).phillips > 1e-6);
}

TEST_CASE("linear model inputs are validated") {
  NKParams p;
  p.theta = 0.0;
  CHECK_THROWS_AS(assemble(p, ShockKind::Monetary), InvalidParameter);
  CHECK(shock_from_string("technology") == ShockKind::Technology);
  CHECK(to_string(ShockKind::Monetary) == "monetary");
  CHECK_THROWS_AS(shock_from_string("fiscal"), InvalidParameter);
}
