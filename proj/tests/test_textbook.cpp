#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fairprice/errors.hpp"
#include "fairprice/nk_linear.hpp"
#include "fairprice/textbook_nk.hpp"

using namespace fairprice;

TEST_CASE("textbook slope and spectrum") {
  const TextbookParams tp;
  CHECK(kappa(tp) == doctest::Approx(0.348258).epsilon(1e-5));
  const EigenReport rep = eigencheck(textbook_model(tp, ShockKind::Monetary));
  CHECK(rep.verdict == Determinacy::Unique);
  REQUIRE(rep.spectrum.size() == 2);
  for (const auto& z : rep.spectrum) {
    CHECK(z.real() == doctest::Approx(1.18094).epsilon(1e-5));
    CHECK(std::abs(z.imag()) == doctest::Approx(0.37835).epsilon(1e-4));
  }
}

TEST_CASE("textbook monetary response peaks on impact") {
  const TextbookParams tp;
  const IRFSeries irf = textbook_irf(tp, ShockKind::Monetary, kMonetaryImpulse);
  CHECK(irf.model == "textbook");
  CHECK(100.0 * irf.n_hat[0] == doctest::Approx(0.19773).epsilon(1e-4));
  CHECK(std::max_element(irf.y_hat.begin(), irf.y_hat.end()) == irf.y_hat.begin());
  CHECK(textbook_phillips_residual(irf, tp) < 1e-12);
  CHECK(is_residual(irf, tp.shared) < 1e-12);
  for (int t = 0; t < irf.horizon(); ++t) CHECK(irf.m_p_hat[t] == irf.m_hat[t]);
  const IRFSeries fair = monetary_irf(tp.shared);
  const double ratio = irf.y_hat[0] / *std::max_element(fair.y_hat.begin(), fair.y_hat.end());
  CHECK(ratio == doctest::Approx(0.294).epsilon(2e-3));
}

TEST_CASE("textbook parameters are validated") {
  TextbookParams tp;
  tp.xi = 1.0;
  CHECK_THROWS_AS(kappa(tp), InvalidParameter);
  tp = TextbookParams{};
  tp.epsilon_tb = 0.5;
  CHECK_THROWS_AS(textbook_model(tp, ShockKind::Monetary), InvalidParameter);
}
