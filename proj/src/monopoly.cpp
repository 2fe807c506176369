#include "fairprice/monopoly.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fairprice/errors.hpp"

namespace fairprice {

namespace {

constexpr double kBracketPad = 1e-9;
constexpr double kMarkupTol = 1e-13;
constexpr int kMaxBisection = 200;

bool closed_form_regime(const MonopolyScenario& s) {
  if (s.regime == Regime::NoFairness || s.regime == Regime::RationalInference) return true;
  if (!s.fairness.has_fairness()) return true;
  return s.regime == Regime::Subproportional && s.belief.gamma() == 0.0;
}

// Right-hand side of the markup fixed point; saturates at 1 once the
// perceived markup leaves the fairness domain (φ → ∞ there).
double markup_rhs(double markup, const MonopolyScenario& s) {
  const double eps = s.fairness.epsilon();
  const double m_p = regime_perceived_markup(markup * s.marginal_cost, s);
  if (m_p >= s.fairness.m_high()) return 1.0;
  const double phi = fairness_elasticity(m_p, s.fairness);
  const double weight = s.regime == Regime::ObservableCost ? 1.0 : s.belief.gamma();
  return 1.0 + 1.0 / ((eps - 1.0) * (1.0 + weight * phi));
}

}  // namespace

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::NoFairness: return "no-fairness";
    case Regime::ObservableCost: return "observable-cost";
    case Regime::RationalInference: return "rational-inference";
    case Regime::Subproportional: return "subproportional";
  }
  return "unknown";
}

Regime regime_from_string(const std::string& name) {
  if (name == "no-fairness") return Regime::NoFairness;
  if (name == "observable-cost") return Regime::ObservableCost;
  if (name == "rational-inference") return Regime::RationalInference;
  if (name == "subproportional") return Regime::Subproportional;
  throw InvalidParameter("unknown regime '" + name + "'");
}

void MonopolyScenario::validate() const {
  if (!(marginal_cost > 0.0) || !std::isfinite(marginal_cost)) {
    throw InvalidParameter("marginal cost must be positive");
  }
  if (belief.epsilon() != fairness.epsilon()) {
    throw InvalidParameter("belief and fairness specs disagree on epsilon");
  }
  if (regime == Regime::Subproportional && !belief.admits_cost(marginal_cost, fairness.m_high())) {
    throw InvalidParameter("prior cost too low: perceived markup at marginal cost exceeds M^h");
  }
}

double regime_perceived_markup(double price, const MonopolyScenario& s) {
  switch (s.regime) {
    case Regime::NoFairness:
    case Regime::ObservableCost:
      return price / s.marginal_cost;
    case Regime::RationalInference:
      return standard_markup(s.fairness.epsilon());
    case Regime::Subproportional:
      return perceived_markup(price, s.belief);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double demand(double price, const MonopolyScenario& s) {
  if (!(price > 0.0)) throw DomainError("price must be positive");
  const double eps = s.fairness.epsilon();
  if (s.regime == Regime::NoFairness || !s.fairness.has_fairness()) {
    return std::exp(-eps * std::log(price));
  }
  const double f = fairness_factor(regime_perceived_markup(price, s), s.fairness);
  return std::exp(-eps * std::log(price) + (eps - 1.0) * std::log(f));
}

double demand_elasticity(double m_p, const MonopolyScenario& s) {
  const double eps = s.fairness.epsilon();
  switch (s.regime) {
    case Regime::NoFairness:
    case Regime::RationalInference:
      return eps;
    case Regime::ObservableCost:
      if (!s.fairness.has_fairness()) return eps;
      return eps + (eps - 1.0) * fairness_elasticity(m_p, s.fairness);
    case Regime::Subproportional:
      if (!s.fairness.has_fairness()) return eps;
      return eps + (eps - 1.0) * s.belief.gamma() * fairness_elasticity(m_p, s.fairness);
  }
  return eps;
}

MonopolyOutcome solve_markup(const MonopolyScenario& s) {
  s.validate();
  const double eps = s.fairness.epsilon();
  const double m_std = standard_markup(eps);
  MonopolyOutcome out{};

  if (closed_form_regime(s)) {
    out.markup = m_std;
  } else {
    double lo = 1.0 + kBracketPad;
    double hi = m_std - kBracketPad;
    const double g_lo = markup_rhs(lo, s) - lo;
    const double g_hi = markup_rhs(hi, s) - hi;
    if (!(g_lo > 0.0) || !(g_hi < 0.0)) {
      std::ostringstream msg;
      msg << "markup fixed point not bracketed on [" << lo << ", " << hi
          << "]: residuals " << g_lo << ", " << g_hi;
      throw InfeasibleScenario(msg.str());
    }
    for (int it = 0; it < kMaxBisection && hi - lo > kMarkupTol; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (markup_rhs(mid, s) - mid > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    out.markup = 0.5 * (lo + hi);
  }

  out.price = out.markup * s.marginal_cost;
  out.perceived_markup = regime_perceived_markup(out.price, s);
  out.elasticity = demand_elasticity(out.perceived_markup, s);
  out.passthrough = passthrough(s, out);
  return out;
}

double passthrough(const MonopolyScenario& s, const MonopolyOutcome& outcome) {
  if (s.regime != Regime::Subproportional || !s.fairness.has_fairness() || s.belief.gamma() == 0.0) {
    return 1.0;
  }
  const double eps = s.fairness.epsilon();
  const double g = s.belief.gamma();
  const double phi = fairness_elasticity(outcome.perceived_markup, s.fairness);
  const double sigma = fairness_superelasticity(outcome.perceived_markup, s.fairness);
  const double drag = g * g * phi * sigma / ((1.0 + g * phi) * (eps + (eps - 1.0) * g * phi));
  return 1.0 / (1.0 + drag);
}

double acclimated_markup(double epsilon, double theta, double gamma) {
  return 1.0 + 1.0 / ((1.0 + gamma * theta) * epsilon - 1.0);
}

double acclimated_passthrough(double epsilon, double theta, double gamma) {
  const double gt = 1.0 + gamma * theta;
  const double num = gamma * gamma * theta * ((1.0 + theta) * epsilon - 1.0);
  const double den = (epsilon - 1.0) * gt * (gt * epsilon - 1.0);
  return 1.0 / (1.0 + num / den);
}

MonopolyScenario acclimated_scenario(double epsilon, double theta, double gamma,
                                     double marginal_cost) {
  const double m = acclimated_markup(epsilon, theta, gamma);
  const double prior = m * marginal_cost / standard_markup(epsilon);
  return MonopolyScenario{marginal_cost, FairnessSpec::standard(theta, epsilon),
                          BeliefSpec(gamma, prior, epsilon), Regime::Subproportional};
}

std::vector<ComparativeStaticsRow> acclimated_comparative_statics(
    const std::vector<double>& epsilon_grid, const std::vector<double>& theta_grid,
    const std::vector<double>& gamma_grid) {
  std::vector<ComparativeStaticsRow> rows;
  rows.reserve(epsilon_grid.size() * theta_grid.size() * gamma_grid.size());
  for (double eps : epsilon_grid) {
    for (double theta : theta_grid) {
      for (double gamma : gamma_grid) {
        const MonopolyScenario s = acclimated_scenario(eps, theta, gamma);
        const MonopolyOutcome o = solve_markup(s);
        rows.push_back({eps, theta, gamma, o.markup, o.passthrough});
      }
    }
  }
  return rows;
}

double price_domain_upper(const MonopolyScenario& s) {
  const double m_high = s.fairness.m_high();
  if (!std::isfinite(m_high)) return std::numeric_limits<double>::infinity();
  switch (s.regime) {
    case Regime::NoFairness:
    case Regime::RationalInference:
      return std::numeric_limits<double>::infinity();
    case Regime::ObservableCost:
      return m_high * s.marginal_cost;
    case Regime::Subproportional: {
      const double g = s.belief.gamma();
      if (g == 0.0) return std::numeric_limits<double>::infinity();
      const double mu = standard_markup(s.fairness.epsilon());
      return std::exp(std::log(s.belief.prior_cost()) + std::log(m_high) / g -
                      (1.0 - g) / g * std::log(mu));
    }
  }
  return std::numeric_limits<double>::infinity();
}

std::vector<double> price_grid(const MonopolyScenario& s, int points, double cap_factor) {
  if (points < 2) throw InvalidParameter("price grid needs at least two points");
  const double c = s.marginal_cost;
  double upper = price_domain_upper(s);
  if (!std::isfinite(upper)) upper = cap_factor * standard_markup(s.fairness.epsilon()) * c;
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double step = (upper - c) / points;
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = c + (i + 0.5) * step;
  return grid;
}

std::vector<ProfitPoint> profit_scan(const MonopolyScenario& s, const std::vector<double>& prices) {
  s.validate();
  const double c = s.marginal_cost;
  auto profit = [&](double p) { return (p - c) * demand(p, s); };
  std::vector<ProfitPoint> scan;
  scan.reserve(prices.size());
  for (double p : prices) {
    const double h = 1e-7 * p;
    const double slope = (profit(p + h) - profit(p - h)) / (2.0 * h);
    scan.push_back({p, profit(p), slope > 0.0 ? 1 : (slope < 0.0 ? -1 : 0)});
  }
  return scan;
}

SignChangeSummary count_sign_changes(const std::vector<ProfitPoint>& scan) {
  SignChangeSummary out;
  int last = 0;
  for (std::size_t i = 0; i < scan.size(); ++i) {
    const int sign = scan[i].slope_sign;
    if (sign == 0) continue;
    if (last != 0 && sign != last) {
      ++out.changes;
      if (last > 0 && sign < 0) {
        ++out.positive_to_negative;
        if (out.first_negative_index < 0) out.first_negative_index = static_cast<int>(i);
      }
    }
    last = sign;
  }
  return out;
}

}  // namespace fairprice
