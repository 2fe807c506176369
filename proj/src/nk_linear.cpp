#include "fairprice/nk_linear.hpp"

#include <algorithm>
#include <cmath>

#include "fairprice/errors.hpp"
#include "fairprice/fairness.hpp"

namespace fairprice {

namespace {

struct ZeroInflationMoments {
  double phi;
  double sigma;
  double k;
};

ZeroInflationMoments zero_inflation(const NKParams& p) {
  p.validate();
  if (!(p.theta > 0.0)) throw InvalidParameter("the fairness NK model needs theta > 0");
  const double phi = p.theta * standard_markup(p.epsilon);
  return {phi, 1.0 + phi, p.markup_weight()};
}

double max_abs(double current, double value) { return std::max(current, std::abs(value)); }

}  // namespace

std::string to_string(ShockKind kind) {
  return kind == ShockKind::Monetary ? "monetary" : "technology";
}

ShockKind shock_from_string(const std::string& name) {
  if (name == "monetary") return ShockKind::Monetary;
  if (name == "technology") return ShockKind::Technology;
  throw InvalidParameter("unknown shock '" + name + "'");
}

Lambdas lambdas(const NKParams& p) {
  const auto z = zero_inflation(p);
  const double eps = p.epsilon;
  const double g = p.gamma;
  const double tail = 1.0 + z.k * z.phi;
  const double l1 = (1.0 + p.eta) * (eps + (eps - 1.0) * g * z.phi) / (g * z.phi * z.sigma) * tail;
  const double l2 = (1.0 + p.eta) * p.delta * (eps + (eps - 1.0) * z.phi) / (z.phi * z.sigma) * tail;
  return {l1, l2};
}

Omegas omegas(const NKParams& p) {
  const auto z = zero_inflation(p);
  const double eps = p.epsilon;
  const double g = p.gamma;
  Omegas o{};
  o.omega0 = (eps - 1.0) * g * z.phi * z.sigma / (eps + (eps - 1.0) * g * z.phi);
  o.omega1 = (eps - 1.0) * (1.0 + z.k * z.phi);
  o.omega2 = (eps - 1.0) * z.phi * z.sigma / (eps + (eps - 1.0) * z.phi);
  o.omega3 = p.delta * g * (eps + (eps - 1.0) * z.phi) / (eps + (eps - 1.0) * g * z.phi);
  return o;
}

Lambdas lambdas_from_omegas(const NKParams& p) {
  const Omegas o = omegas(p);
  return {(1.0 + p.eta) * o.omega1 / o.omega0, (1.0 + p.eta) * o.omega3 * o.omega1 / o.omega0};
}

double expected_inflation_coefficient(const NKParams& p) {
  const Omegas o = omegas(p);
  return p.gamma * o.omega3 * o.omega2 / o.omega0;
}

LinearREModel LogLinSystem::re_model() const {
  LinearREModel m;
  m.gamma_matrix = gamma_matrix;
  m.psi_vector = psi_vector;
  m.n_pre = 1;
  m.shock_persistence = shock_persistence;
  return m;
}

LogLinSystem assemble(const NKParams& params, ShockKind kind) {
  return assemble_with_lambdas(params, kind, lambdas(params));
}

LogLinSystem assemble_with_lambdas(const NKParams& p, ShockKind kind, Lambdas slopes) {
  p.validate();
  const double dg = p.delta * p.gamma;
  LogLinSystem sys;
  sys.lambda1 = slopes.lambda1;
  sys.lambda2 = slopes.lambda2;
  sys.shock_kind = kind;
  sys.shock_persistence = kind == ShockKind::Monetary ? p.mu_i : p.mu_a;
  sys.lhs << p.gamma, p.gamma, 0.0,
             0.0, p.psi, p.alpha,
             0.0, 0.0, slopes.lambda1;
  sys.rhs << 1.0, 0.0, 0.0,
             0.0, 1.0, p.alpha,
             1.0 - dg, -dg, slopes.lambda2;
  Eigen::FullPivLU<Eigen::Matrix3d> lu(sys.rhs);
  if (!lu.isInvertible()) throw SingularMatrix("right-hand matrix of the linear system is singular");
  sys.gamma_matrix = lu.solve(sys.lhs);
  sys.psi_vector = lu.solve(Eigen::Vector3d::UnitY());
  return sys;
}

Eigen::Matrix3d closed_form_rhs_inverse(const NKParams& p, Lambdas s) {
  const double dg = p.delta * p.gamma;
  const double den = s.lambda2 + p.alpha * dg;
  Eigen::Matrix3d inv;
  inv << 1.0, 0.0, 0.0,
         (1.0 - dg) * p.alpha / den, s.lambda2 / den, -p.alpha / den,
         (dg - 1.0) / den, dg / den, 1.0 / den;
  return inv;
}

IRFSeries fairness_irf(const LogLinSystem& sys, const NKParams& p, double zeta0, int horizon) {
  const DecisionRule rule = solve(sys.re_model());
  const bool monetary = sys.shock_kind == ShockKind::Monetary;
  // Monetary impulses are expansionary (î₀ falls); technology raises â.
  const double level0 = monetary ? -zeta0 : zeta0;
  const double forcing0 = monetary ? level0 : (1.0 - p.mu_a) * level0;
  const Eigen::MatrixXd x = impulse_response(rule, forcing0, horizon);

  IRFSeries out;
  out.model = "fairness";
  out.shock_kind = sys.shock_kind;
  double level = level0;
  for (int t = 0; t < horizon; ++t) {
    const double mp_lag = x(t, 0);
    const double pi = x(t, 1);
    const double n = x(t, 2);
    const double i0 = monetary ? level : 0.0;
    const double a = monetary ? 0.0 : level;
    out.t.push_back(t);
    out.i0_hat.push_back(i0);
    out.a_hat.push_back(a);
    out.pi_hat.push_back(pi);
    out.i_hat.push_back(i0 + p.psi * pi);
    out.m_p_hat.push_back(p.gamma * (pi + mp_lag));
    out.m_hat.push_back(-(1.0 + p.eta) * n);
    out.n_hat.push_back(n);
    out.y_hat.push_back(a + p.alpha * n);
    out.real_wage_hat.push_back(a + (p.eta + p.alpha) * n);
    level *= sys.shock_persistence;
  }
  return out;
}

IRFSeries monetary_irf(const NKParams& params, double zeta0, int horizon) {
  return fairness_irf(assemble(params, ShockKind::Monetary), params, zeta0, horizon);
}

IRFSeries technology_irf(const NKParams& params, double zeta0, int horizon) {
  return fairness_irf(assemble(params, ShockKind::Technology), params, zeta0, horizon);
}

double IRFResiduals::worst() const {
  return std::max({markup_employment, output, interest, perceived_markup_law, phillips, is_curve});
}

double is_residual(const IRFSeries& irf, const NKParams& p) {
  double worst = 0.0;
  for (int t = 0; t + 1 < irf.horizon(); ++t) {
    const auto u = static_cast<std::size_t>(t);
    const double r = p.alpha * irf.n_hat[u] + p.psi * irf.pi_hat[u] - p.alpha * irf.n_hat[u + 1] -
                     irf.pi_hat[u + 1] + irf.i0_hat[u] + irf.a_hat[u] - irf.a_hat[u + 1];
    worst = max_abs(worst, r);
  }
  return worst;
}

IRFResiduals fairness_irf_residuals(const IRFSeries& irf, const NKParams& p) {
  const Lambdas s = lambdas(p);
  const double dg = p.delta * p.gamma;
  IRFResiduals r;
  double mp_prev = 0.0;
  for (int t = 0; t < irf.horizon(); ++t) {
    const auto u = static_cast<std::size_t>(t);
    r.markup_employment = max_abs(r.markup_employment, irf.m_hat[u] + (1.0 + p.eta) * irf.n_hat[u]);
    r.output = max_abs(r.output, irf.y_hat[u] - irf.a_hat[u] - p.alpha * irf.n_hat[u]);
    r.interest = max_abs(r.interest, irf.i_hat[u] - irf.i0_hat[u] - p.psi * irf.pi_hat[u]);
    r.perceived_markup_law =
        max_abs(r.perceived_markup_law, irf.m_p_hat[u] - p.gamma * (irf.pi_hat[u] + mp_prev));
    mp_prev = irf.m_p_hat[u];
    if (t + 1 < irf.horizon()) {
      const double ph = (1.0 - dg) * irf.m_p_hat[u] - s.lambda1 * irf.n_hat[u] -
                        dg * irf.pi_hat[u + 1] + s.lambda2 * irf.n_hat[u + 1];
      r.phillips = max_abs(r.phillips, ph);
    }
  }
  r.is_curve = is_residual(irf, p);
  return r;
}

}  // namespace fairprice
