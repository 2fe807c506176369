#include "fairprice/nk_steady.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fairprice/errors.hpp"
#include "fairprice/fairness.hpp"

namespace fairprice {

void NKParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidParameter(what);
  };
  require(epsilon > 1.0, "epsilon must exceed 1");
  require(theta >= 0.0 && std::isfinite(theta), "theta must be finite and >= 0");
  require(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
  require(eta > 0.0, "eta must be positive");
  require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
  require(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
  require(psi > 1.0, "psi must exceed 1");
  require(nu > 1.0, "nu must exceed 1");
  require(chi >= 0.0 && chi <= 1.0, "chi must lie in [0, 1]");
  require(mu_i > 0.0 && mu_i < 1.0, "mu_i must lie in (0, 1)");
  require(mu_a > 0.0 && mu_a < 1.0, "mu_a must lie in (0, 1)");
}

double NKParams::rho() const { return -std::log(delta); }

double NKParams::markup_weight() const {
  return (1.0 - delta) * gamma / (1.0 - delta * gamma);
}

double steady_inflation(double i0_bar, const NKParams& p) {
  if (!(p.psi > 1.0)) throw InvalidParameter("psi must exceed 1");
  return (p.rho() - i0_bar) / (p.psi - 1.0);
}

double i0_for_inflation(double pi_bar, const NKParams& p) {
  return p.rho() - (p.psi - 1.0) * pi_bar;
}

double steady_markup_from_phi(double phi_bar, const NKParams& p) {
  return 1.0 + (1.0 / (p.epsilon - 1.0)) / (1.0 + p.markup_weight() * phi_bar);
}

SteadyState steady_state(double pi_bar, const NKParams& p, bool with_level) {
  p.validate();
  const double mu = standard_markup(p.epsilon);
  SteadyState ss{};
  ss.pi_bar = pi_bar;
  ss.m_p_bar = mu * std::exp(p.gamma * pi_bar / (1.0 - p.gamma));
  ss.f_bar = 1.0 - p.theta * (1.0 - p.chi) * (ss.m_p_bar - mu);
  if (!(ss.f_bar > 0.0)) {
    std::ostringstream msg;
    msg << "steady fairness factor " << ss.f_bar << " <= 0 at quarterly inflation " << pi_bar
        << " (chi = " << p.chi << ")";
    throw InadmissibleSteadyState(msg.str());
  }
  ss.phi_bar = p.theta * ss.m_p_bar / ss.f_bar;
  ss.sigma_bar = 1.0 + ss.phi_bar;
  ss.markup_bar = steady_markup_from_phi(ss.phi_bar, p);

  const double markup_zero = steady_markup_from_phi(p.theta * mu, p);
  ss.employment_rel = std::pow(markup_zero / ss.markup_bar, 1.0 / (1.0 + p.eta));
  if (with_level) {
    const double wedge = (p.nu - 1.0) * p.alpha / p.nu;
    ss.employment_abs = std::pow(wedge / ss.markup_bar, 1.0 / (1.0 + p.eta));
  }
  return ss;
}

double steady_pricing_residual(const SteadyState& ss, const NKParams& p) {
  const double l1 = (ss.markup_bar - 1.0) / ss.markup_bar;
  const double e_bar = p.epsilon + (p.epsilon - 1.0) * p.gamma * ss.phi_bar;
  return (1.0 - p.delta * p.gamma) - l1 * e_bar +
         p.delta * l1 * (e_bar - (1.0 - p.gamma) * p.epsilon);
}

double phillips_slope_at_zero(const NKParams& p) {
  p.validate();
  // Without fairness the steady markup ignores inflation: vertical curve.
  if (p.theta == 0.0) return std::numeric_limits<double>::infinity();
  const double eps = p.epsilon;
  const double k = p.markup_weight();
  const double kt = 1.0 + k * p.theta;
  const double base = (1.0 + p.eta) / (1.0 - p.delta) * (1.0 - p.gamma) * (1.0 - p.delta * p.gamma) /
                      (p.gamma * p.gamma) * (eps - 1.0) / p.theta;
  return base * kt * (kt * eps - 1.0) / ((1.0 + (1.0 - p.chi) * p.theta) * eps - 1.0);
}

std::vector<LongRunPoint> long_run_curve(const std::vector<double>& pi_annual_pct,
                                         const std::vector<double>& chi_list,
                                         const NKParams& params) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<LongRunPoint> out;
  out.reserve(pi_annual_pct.size() * chi_list.size());
  for (double chi : chi_list) {
    NKParams p = params;
    p.chi = chi;
    for (double pct : pi_annual_pct) {
      const double pi_q = pct / 100.0 / 4.0;
      try {
        const SteadyState ss = steady_state(pi_q, p);
        out.push_back({pct, chi, ss.markup_bar, 100.0 * (ss.employment_rel - 1.0), true, ""});
      } catch (const InadmissibleSteadyState& e) {
        out.push_back({pct, chi, nan, nan, false, e.what()});
      }
    }
  }
  return out;
}

}  // namespace fairprice
