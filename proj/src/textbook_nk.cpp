#include "fairprice/textbook_nk.hpp"

#include <algorithm>
#include <cmath>

#include "fairprice/errors.hpp"

namespace fairprice {

void TextbookParams::validate() const {
  if (!(epsilon_tb > 1.0)) throw InvalidParameter("textbook epsilon must exceed 1");
  if (!(xi > 0.0 && xi < 1.0)) throw InvalidParameter("xi must lie in (0, 1)");
  NKParams p = shared;
  p.theta = std::max(p.theta, 0.0);
  p.validate();
}

double kappa(const TextbookParams& tp) {
  tp.validate();
  const NKParams& p = tp.shared;
  const double calvo = (1.0 - tp.xi) * (1.0 - p.delta * tp.xi) / tp.xi;
  const double curvature = p.alpha / (p.alpha + (1.0 - p.alpha) * tp.epsilon_tb);
  return (1.0 + p.eta) * calvo * curvature;
}

LinearREModel textbook_model(const TextbookParams& tp, ShockKind kind) {
  const NKParams& p = tp.shared;
  const double k = kappa(tp);
  Eigen::Matrix2d lhs;
  lhs << 1.0, -k,
         p.psi, p.alpha;
  Eigen::Matrix2d rhs;
  rhs << p.delta, 0.0,
         1.0, p.alpha;
  Eigen::FullPivLU<Eigen::Matrix2d> lu(rhs);
  if (!lu.isInvertible()) throw SingularMatrix("textbook right-hand matrix is singular");
  LinearREModel m;
  m.gamma_matrix = lu.solve(lhs);
  m.psi_vector = lu.solve(Eigen::Vector2d::UnitY());
  m.n_pre = 0;
  m.shock_persistence = kind == ShockKind::Monetary ? p.mu_i : p.mu_a;
  return m;
}

IRFSeries textbook_irf(const TextbookParams& tp, ShockKind kind, double zeta0, int horizon) {
  const NKParams& p = tp.shared;
  const LinearREModel model = textbook_model(tp, kind);
  const DecisionRule rule = solve(model);
  const bool monetary = kind == ShockKind::Monetary;
  const double level0 = monetary ? -zeta0 : zeta0;
  const double forcing0 = monetary ? level0 : (1.0 - p.mu_a) * level0;
  const Eigen::MatrixXd x = impulse_response(rule, forcing0, horizon);

  IRFSeries out;
  out.model = "textbook";
  out.shock_kind = kind;
  double level = level0;
  for (int t = 0; t < horizon; ++t) {
    const double pi = x(t, 0);
    const double n = x(t, 1);
    const double i0 = monetary ? level : 0.0;
    const double a = monetary ? 0.0 : level;
    const double m = -(1.0 + p.eta) * n;
    out.t.push_back(t);
    out.i0_hat.push_back(i0);
    out.a_hat.push_back(a);
    out.pi_hat.push_back(pi);
    out.i_hat.push_back(i0 + p.psi * pi);
    out.m_p_hat.push_back(m);
    out.m_hat.push_back(m);
    out.n_hat.push_back(n);
    out.y_hat.push_back(a + p.alpha * n);
    out.real_wage_hat.push_back(a + (p.eta + p.alpha) * n);
    level *= model.shock_persistence;
  }
  return out;
}

double textbook_phillips_residual(const IRFSeries& irf, const TextbookParams& tp) {
  const double k = kappa(tp);
  double worst = 0.0;
  for (int t = 0; t + 1 < irf.horizon(); ++t) {
    const auto u = static_cast<std::size_t>(t);
    const double r = irf.pi_hat[u] - tp.shared.delta * irf.pi_hat[u + 1] - k * irf.n_hat[u];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace fairprice
