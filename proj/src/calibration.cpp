#include "fairprice/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include "fairprice/fairness.hpp"

namespace fairprice {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxNewton = 50;
constexpr int kMaxHalvings = 10;

double steady_markup_weight(const FirmParams& p) {
  return (1.0 - p.delta) * p.gamma / (1.0 - p.delta * p.gamma);
}

// Pricing-side quantities at one date.
struct DateTerms {
  double markup;
  double l1;
  double elasticity;
  double phi;
  double sigma;
  double log_output;
};

DateTerms date_terms(const FirmParams& p, double log_price, double log_mp, double cost) {
  DateTerms d{};
  const double price = std::exp(log_price);
  const double mp = std::exp(log_mp);
  d.markup = price / cost;
  d.l1 = 1.0 - 1.0 / d.markup;
  const double f = 1.0 - p.theta * (mp - standard_markup(p.epsilon));
  if (!(f > 0.0)) {
    d.elasticity = d.phi = d.sigma = d.log_output = kNaN;
    return d;
  }
  d.phi = p.theta * mp / f;
  d.sigma = 1.0 + d.phi;
  d.elasticity = p.epsilon + (p.epsilon - 1.0) * p.gamma * d.phi;
  d.log_output = -p.epsilon * log_price + (p.epsilon - 1.0) * std::log(f);
  return d;
}

// Residuals of one period and their derivatives with respect to
// (ln P(t−1), ln Mᵖ(t−1), ln P(t), ln Mᵖ(t), ln P(t+1), ln Mᵖ(t+1)).
struct LocalBlock {
  double law;
  double pricing;
  double d_law[6];
  double d_pricing[6];
};

LocalBlock local_block(const FirmPathProblem& prob, const double v[6], double cost) {
  const FirmParams& p = prob.params;
  const double g = p.gamma;
  const double eps = p.epsilon;
  const double d = p.delta;
  LocalBlock b{};

  b.law = v[3] - (1.0 - g) * std::log(standard_markup(eps)) - g * (v[2] - v[0]) - g * v[1];
  b.d_law[0] = g;
  b.d_law[1] = -g;
  b.d_law[2] = -g;
  b.d_law[3] = 1.0;
  b.d_law[4] = 0.0;
  b.d_law[5] = 0.0;

  const DateTerms now = date_terms(p, v[2], v[3], cost);
  const DateTerms next = date_terms(p, v[4], v[5], cost);
  const double de_now = (eps - 1.0) * g * now.phi * now.sigma;
  const double de_next = (eps - 1.0) * g * next.phi * next.sigma;
  const double fwd = next.elasticity - (1.0 - g) * eps;

  for (double& x : b.d_pricing) x = 0.0;
  if (prob.equation == PricingEquation::Symmetric) {
    b.pricing = now.l1 * now.elasticity - (1.0 - d * g) - d * next.l1 * fwd;
    b.d_pricing[2] = now.elasticity / now.markup;
    b.d_pricing[3] = now.l1 * de_now;
    b.d_pricing[4] = -d * fwd / next.markup;
    b.d_pricing[5] = -d * next.l1 * de_next;
  } else {
    const double growth = std::exp(next.log_output + v[4] - now.log_output - v[2]);
    const double bracket = next.l1 * fwd - g;
    b.pricing = now.l1 * now.elasticity - 1.0 - d * growth * bracket;
    b.d_pricing[2] = now.elasticity / now.markup - d * bracket * growth * (eps - 1.0);
    b.d_pricing[3] = now.l1 * de_now - d * bracket * growth * (eps - 1.0) * now.phi;
    b.d_pricing[4] = -d * growth * ((1.0 - eps) * bracket + fwd / next.markup);
    b.d_pricing[5] = -d * growth * (-(eps - 1.0) * next.phi * bracket + next.l1 * de_next);
  }
  return b;
}

struct PathEnds {
  double log_p_before;
  double log_p_after;
  double log_mp;
  double cost_after;
};

PathEnds path_ends(const FirmPathProblem& prob) {
  const FirmSteady before = firm_steady(prob.params, prob.base_cost);
  const double cost_after = prob.base_cost * (1.0 + prob.cost_shock);
  const FirmSteady after = firm_steady(prob.params, cost_after);
  return {std::log(before.price), std::log(after.price), std::log(standard_markup(prob.params.epsilon)),
          cost_after};
}

void gather(const Eigen::VectorXd& u, const PathEnds& ends, int t, int horizon, double v[6]) {
  for (int k = 0; k < 3; ++k) {
    const int s = t - 1 + k;
    if (s < 0) {
      v[2 * k] = ends.log_p_before;
      v[2 * k + 1] = ends.log_mp;
    } else if (s >= horizon) {
      v[2 * k] = ends.log_p_after;
      v[2 * k + 1] = ends.log_mp;
    } else {
      v[2 * k] = u(2 * s);
      v[2 * k + 1] = u(2 * s + 1);
    }
  }
}

double max_abs_finite(const Eigen::VectorXd& r) {
  if (!r.allFinite()) return std::numeric_limits<double>::infinity();
  return r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace

void FirmParams::validate() const {
  if (!(epsilon > 1.0)) throw InvalidParameter("epsilon must exceed 1");
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw InvalidParameter("theta must be finite and >= 0");
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidParameter("gamma must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
}

void FirmPathProblem::validate() const {
  params.validate();
  if (!(base_cost > 0.0)) throw InvalidParameter("base cost must be positive");
  if (!(cost_shock > -1.0) || cost_shock == 0.0) {
    throw InvalidParameter("cost shock must be nonzero and exceed -1");
  }
  if (horizon < 2) throw InvalidParameter("horizon must be at least 2");
}

std::string to_string(PricingEquation eq) {
  return eq == PricingEquation::Symmetric ? "symmetric" : "idiosyncratic";
}

FirmSteady firm_steady(const FirmParams& p, double marginal_cost) {
  p.validate();
  const double mu = standard_markup(p.epsilon);
  const double phi = p.theta * mu;
  FirmSteady s{};
  s.markup = 1.0 + (1.0 / (p.epsilon - 1.0)) / (1.0 + steady_markup_weight(p) * phi);
  s.price = s.markup * marginal_cost;
  s.output = std::pow(s.price, -p.epsilon);
  s.perceived_markup = mu;
  return s;
}

double firm_steady_residual(const FirmParams& p, const FirmSteady& s) {
  const double l1 = (s.markup - 1.0) / s.markup;
  const FairnessSpec spec = FairnessSpec::standard(p.theta, p.epsilon);
  const double phi = p.theta > 0.0 ? fairness_elasticity(s.perceived_markup, spec) : 0.0;
  const double e = p.epsilon + (p.epsilon - 1.0) * p.gamma * phi;
  return (1.0 - p.delta * p.gamma) - l1 * e + p.delta * l1 * (e - (1.0 - p.gamma) * p.epsilon);
}

double PathResiduals::worst() const { return std::max({pricing, demand, markup, perceived_law}); }

Eigen::VectorXd stacked_residual(const FirmPathProblem& prob, const Eigen::VectorXd& u) {
  const int T = prob.horizon;
  const PathEnds ends = path_ends(prob);
  Eigen::VectorXd r(2 * T);
  double v[6];
  for (int t = 0; t < T; ++t) {
    gather(u, ends, t, T, v);
    const LocalBlock b = local_block(prob, v, ends.cost_after);
    r(2 * t) = b.law;
    r(2 * t + 1) = b.pricing;
  }
  return r;
}

Eigen::SparseMatrix<double> stacked_jacobian(const FirmPathProblem& prob, const Eigen::VectorXd& u) {
  const int T = prob.horizon;
  const PathEnds ends = path_ends(prob);
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(12 * T));
  double v[6];
  for (int t = 0; t < T; ++t) {
    gather(u, ends, t, T, v);
    const LocalBlock b = local_block(prob, v, ends.cost_after);
    for (int k = 0; k < 6; ++k) {
      const int col = 2 * (t - 1) + k;
      if (col < 0 || col >= 2 * T) continue;
      if (b.d_law[k] != 0.0) entries.emplace_back(2 * t, col, b.d_law[k]);
      if (b.d_pricing[k] != 0.0) entries.emplace_back(2 * t + 1, col, b.d_pricing[k]);
    }
  }
  Eigen::SparseMatrix<double> jac(2 * T, 2 * T);
  jac.setFromTriplets(entries.begin(), entries.end());
  return jac;
}

PassthroughPath simulate_passthrough(const FirmPathProblem& prob) {
  prob.validate();
  const int T = prob.horizon;
  const PathEnds ends = path_ends(prob);

  Eigen::VectorXd u(2 * T);
  for (int t = 0; t < T; ++t) {
    const double w = static_cast<double>(t + 1) / (T + 1);
    u(2 * t) = (1.0 - w) * ends.log_p_before + w * ends.log_p_after;
    u(2 * t + 1) = ends.log_mp;
  }

  Eigen::VectorXd r = stacked_residual(prob, u);
  double norm = max_abs_finite(r);
  int iterations = 0;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  while (norm > 1e-13 && iterations < kMaxNewton) {
    const Eigen::SparseMatrix<double> jac = stacked_jacobian(prob, u);
    lu.compute(jac);
    if (lu.info() != Eigen::Success) {
      throw NonConvergence("singular Jacobian in stacked Newton solve", norm, -1);
    }
    const Eigen::VectorXd step = lu.solve(r);
    double scale = 1.0;
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h, scale *= 0.5) {
      const Eigen::VectorXd trial = u - scale * step;
      const Eigen::VectorXd r_trial = stacked_residual(prob, trial);
      const double n_trial = max_abs_finite(r_trial);
      if (n_trial < norm) {
        u = trial;
        r = r_trial;
        norm = n_trial;
        accepted = true;
        break;
      }
    }
    ++iterations;
    if (!accepted) break;
  }

  if (!(norm <= kPathResidualTol)) {
    int worst_t = -1;
    double worst = 0.0;
    for (int i = 0; i < r.size(); ++i) {
      const double a = std::isfinite(r(i)) ? std::abs(r(i)) : std::numeric_limits<double>::infinity();
      if (a > worst) {
        worst = a;
        worst_t = i / 2;
      }
    }
    std::ostringstream msg;
    msg << "stacked Newton (" << to_string(prob.equation) << " pricing) stopped after "
        << iterations << " iterations with residual " << worst << " at t = " << worst_t;
    throw NonConvergence(msg.str(), worst, worst_t);
  }

  PassthroughPath path;
  path.iterations = iterations;
  path.base_price = std::exp(ends.log_p_before);
  const double mu = standard_markup(prob.params.epsilon);
  for (int t = 0; t < T; ++t) {
    const double price = std::exp(u(2 * t));
    const double mp = std::exp(u(2 * t + 1));
    const double f = 1.0 - prob.params.theta * (mp - mu);
    path.price.push_back(price);
    path.perceived_markup.push_back(mp);
    path.markup.push_back(price / ends.cost_after);
    path.output.push_back(std::pow(price, -prob.params.epsilon) * std::pow(f, prob.params.epsilon - 1.0));
    path.beta.push_back((price - path.base_price) / path.base_price / prob.cost_shock);
  }
  path.residuals = path_residuals(prob, path);
  if (!(path.residuals.worst() <= kPathResidualTol)) {
    std::ostringstream msg;
    msg << "path re-verification failed with residual " << path.residuals.worst();
    throw NonConvergence(msg.str(), path.residuals.worst(), -1);
  }
  return path;
}

PathResiduals path_residuals(const FirmPathProblem& prob, const PassthroughPath& path) {
  const FirmParams& p = prob.params;
  const int T = static_cast<int>(path.price.size());
  const PathEnds ends = path_ends(prob);
  const double mu = standard_markup(p.epsilon);
  const double p_before = std::exp(ends.log_p_before);
  const double p_after = std::exp(ends.log_p_after);
  PathResiduals res;
  auto price_at = [&](int t) { return t < 0 ? p_before : (t >= T ? p_after : path.price[static_cast<std::size_t>(t)]); };
  auto mp_at = [&](int t) { return (t < 0 || t >= T) ? mu : path.perceived_markup[static_cast<std::size_t>(t)]; };
  auto elasticity = [&](double mp) {
    const double phi = p.theta * mp / (1.0 - p.theta * (mp - mu));
    return p.epsilon + (p.epsilon - 1.0) * p.gamma * phi;
  };
  auto output = [&](int t) {
    return std::pow(price_at(t), -p.epsilon) * std::pow(1.0 - p.theta * (mp_at(t) - mu), p.epsilon - 1.0);
  };
  for (int t = 0; t < T; ++t) {
    const auto u = static_cast<std::size_t>(t);
    const double mp_law = std::pow(mu, 1.0 - p.gamma) * std::pow(price_at(t) / price_at(t - 1), p.gamma) *
                          std::pow(mp_at(t - 1), p.gamma);
    res.perceived_law = std::max(res.perceived_law, std::abs(path.perceived_markup[u] / mp_law - 1.0));
    res.markup = std::max(res.markup, std::abs(path.markup[u] - path.price[u] / ends.cost_after));
    res.demand = std::max(res.demand, std::abs(path.output[u] / output(t) - 1.0));

    const double m0 = price_at(t) / ends.cost_after;
    const double m1 = price_at(t + 1) / ends.cost_after;
    const double l0 = (m0 - 1.0) / m0;
    const double l1 = (m1 - 1.0) / m1;
    const double fwd = elasticity(mp_at(t + 1)) - (1.0 - p.gamma) * p.epsilon;
    double r = 0.0;
    if (prob.equation == PricingEquation::Symmetric) {
      r = l0 * elasticity(mp_at(t)) - (1.0 - p.delta * p.gamma) - p.delta * l1 * fwd;
    } else {
      const double growth = output(t + 1) * price_at(t + 1) / (output(t) * price_at(t));
      r = l0 * elasticity(mp_at(t)) - 1.0 - p.delta * growth * (l1 * fwd - p.gamma);
    }
    res.pricing = std::max(res.pricing, std::abs(r));
  }
  return res;
}

std::vector<std::complex<double>> linearized_roots(const FirmPathProblem& prob) {
  prob.validate();
  const PathEnds ends = path_ends(prob);
  const double v[6] = {ends.log_p_after, ends.log_mp, ends.log_p_after,
                       ends.log_mp,      ends.log_p_after, ends.log_mp};
  const LocalBlock b = local_block(prob, v, ends.cost_after);
  Eigen::Matrix2d lag, now, lead;
  lag << b.d_law[0], b.d_law[1], b.d_pricing[0], b.d_pricing[1];
  now << b.d_law[2], b.d_law[3], b.d_pricing[2], b.d_pricing[3];
  lead << b.d_law[4], b.d_law[5], b.d_pricing[4], b.d_pricing[5];

  // y(t) = (x(t−1), x(t)):  [I 0; 0 lead] y(t+1) = [0 I; −lag −now] y(t).
  Eigen::Matrix4d a = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d e = Eigen::Matrix4d::Zero();
  a.topRightCorner<2, 2>().setIdentity();
  a.bottomLeftCorner<2, 2>() = -lag;
  a.bottomRightCorner<2, 2>() = -now;
  e.topLeftCorner<2, 2>().setIdentity();
  e.bottomRightCorner<2, 2>() = lead;
  Eigen::GeneralizedEigenSolver<Eigen::Matrix4d> ges(a, e, false);
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < 4; ++i) {
    const double beta = ges.betas()(i);
    const std::complex<double> alpha = ges.alphas()(i);
    if (std::abs(beta) <= 1e-12 * std::max(1.0, std::abs(alpha))) continue;
    const std::complex<double> z = alpha / beta;
    if (std::abs(z) < 1e-12) continue;
    roots.push_back(z);
  }
  std::sort(roots.begin(), roots.end(), [](auto x, auto y) {
    if (std::abs(x) != std::abs(y)) return std::abs(x) < std::abs(y);
    return x.imag() < y.imag();
  });
  return roots;
}

double epsilon_from_markup(double theta, double gamma, double target, double delta) {
  if (!(target > 1.0)) throw InvalidParameter("markup target must exceed 1");
  if (theta == 0.0) return target / (target - 1.0);
  const FirmParams base{2.0, theta, gamma, delta};
  base.validate();
  const double k = steady_markup_weight(base);
  auto gap = [&](double eps) { return 1.0 + 1.0 / ((eps - 1.0) + k * theta * eps) - target; };
  double lo = 1.0 + 1e-6;
  double hi = 50.0;
  if (!(gap(lo) > 0.0) || !(gap(hi) < 0.0)) {
    std::ostringstream msg;
    msg << "markup target " << target << " unattainable for epsilon in (" << lo << ", " << hi
        << ") at theta = " << theta << ", gamma = " << gamma;
    throw NoRoot(msg.str());
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

CalibrationResult evaluate_candidate(double theta, double gamma, const CalibrationTargets& targets,
                                     double delta, int horizon) {
  CalibrationResult c;
  c.theta = theta;
  c.gamma = gamma;
  c.epsilon = epsilon_from_markup(theta, gamma, targets.markup, delta);
  FirmPathProblem prob;
  prob.params = {c.epsilon, theta, gamma, delta};
  prob.horizon = horizon;
  const PassthroughPath path = simulate_passthrough(prob);
  c.markup = firm_steady(prob.params, 1.0).markup;
  c.beta0 = path.beta.front();
  c.beta_2yr = path.beta.at(static_cast<std::size_t>(targets.quarters));
  c.evaluations = 1;
  return c;
}

namespace {

double moment_gap(const CalibrationResult& c, const CalibrationTargets& t) {
  return std::max(std::abs(c.beta0 - t.beta0), std::abs(c.beta_2yr - t.beta_2yr));
}

struct SearchState {
  const CalibrationTargets& targets;
  const CalibrationOptions& options;
  double delta;
  CalibrationResult best{};
  double best_gap = std::numeric_limits<double>::infinity();
  int evaluations = 0;

  CalibrationResult eval(double theta, double gamma) {
    CalibrationResult c = evaluate_candidate(theta, gamma, targets, delta, options.horizon);
    ++evaluations;
    const double gap = moment_gap(c, targets);
    if (gap < best_gap || (gap == best_gap && std::make_pair(theta, gamma) <
                                                   std::make_pair(best.theta, best.gamma))) {
      best = c;
      best_gap = gap;
    }
    return c;
  }

  // Largest θ for which the markup target is met with ε >= 1.05. Closer to
  // ε = 1 the price path problem becomes too ill-conditioned for Newton.
  double theta_ceiling(double gamma) const {
    const FirmParams fp{2.0, 1.0, gamma, delta};
    const double k = steady_markup_weight(fp);
    const double lo_eps = 1.05;
    const double cap = (1.0 / (targets.markup - 1.0) - (lo_eps - 1.0)) / (k * lo_eps);
    return std::min(options.theta_hi, cap * (1.0 - 1e-9));
  }
};

// θ hitting the impact target at this γ; impact passthrough falls with θ.
// Returns "" on success or the violated θ boundary.
std::string solve_theta(SearchState& st, double gamma, CalibrationResult& out) {
  double lo = st.options.theta_lo;
  double hi = st.theta_ceiling(gamma);
  if (!(hi > lo)) {
    out = st.best;
    return "theta_upper";
  }
  CalibrationResult c_lo = st.eval(lo, gamma);
  if (c_lo.beta0 < st.targets.beta0) {
    out = c_lo;
    return "theta_lower";
  }
  CalibrationResult c_hi = st.eval(hi, gamma);
  if (c_hi.beta0 > st.targets.beta0) {
    out = c_hi;
    return "theta_upper";
  }
  while (hi - lo > st.options.theta_tol) {
    const double mid = 0.5 * (lo + hi);
    const CalibrationResult mid_c = st.eval(mid, gamma);
    (mid_c.beta0 > st.targets.beta0 ? lo : hi) = mid;
  }
  out = st.eval(0.5 * (lo + hi), gamma);
  return "";
}

}  // namespace

CalibrationResult calibrate(const CalibrationTargets& targets, double delta,
                            const CalibrationOptions& options) {
  if (!(targets.markup > 1.0)) throw InvalidParameter("markup target must exceed 1");
  if (targets.quarters < 0 || targets.quarters >= options.horizon) {
    throw InvalidParameter("moment quarter outside the simulation horizon");
  }
  SearchState st{targets, options, delta};

  // +1: raise γ (two-year passthrough too high, or θ would have to exceed its
  // ceiling); −1: lower γ.
  std::string failure;
  auto direction = [&](double gamma, CalibrationResult& c) {
    failure = solve_theta(st, gamma, c);
    if (failure == "theta_upper") return +1;
    if (failure == "theta_lower") return -1;
    return c.beta_2yr > targets.beta_2yr ? +1 : -1;
  };
  auto fail = [&](const std::string& what, const std::string& boundary) {
    CalibrationResult best = st.best;
    best.evaluations = st.evaluations;
    throw SearchFailure(what, best, boundary);
  };

  double lo = options.gamma_lo;
  double hi = options.gamma_hi;
  CalibrationResult c;
  if (direction(lo, c) < 0) {
    fail("targets unreachable at the lower gamma bound", failure.empty() ? "gamma_lower" : failure);
  }
  if (direction(hi, c) > 0) {
    fail("targets unreachable at the upper gamma bound", failure.empty() ? "gamma_upper" : failure);
  }
  while (hi - lo > options.gamma_tol) {
    const double mid = 0.5 * (lo + hi);
    (direction(mid, c) > 0 ? lo : hi) = mid;
  }
  const double gamma = 0.5 * (lo + hi);
  direction(gamma, c);
  if (!failure.empty()) fail("inner theta search failed", failure);

  c.evaluations = st.evaluations;
  if (moment_gap(c, targets) > options.moment_tol) {
    std::ostringstream msg;
    msg << "moment gap " << moment_gap(c, targets) << " exceeds " << options.moment_tol;
    fail(msg.str(), "");
  }
  return c;
}

}  // namespace fairprice
