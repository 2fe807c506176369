#include "fairprice/fairness.hpp"

#include <cmath>
#include <sstream>

#include "fairprice/errors.hpp"

namespace fairprice {

namespace {

void check_open_domain(double m_p, const FairnessSpec& spec) {
  if (!(m_p > 0.0) || !(m_p < spec.m_high())) {
    std::ostringstream msg;
    msg << "perceived markup " << m_p << " outside (0, " << spec.m_high() << ")";
    throw DomainError(msg.str());
  }
}

}  // namespace

double standard_markup(double epsilon) { return epsilon / (epsilon - 1.0); }

FairnessSpec FairnessSpec::standard(double theta, double epsilon) {
  return FairnessSpec(theta, epsilon, standard_markup(epsilon), 0.0);
}

FairnessSpec FairnessSpec::acclimated(double theta, double epsilon, double chi,
                                      double steady_perceived_markup) {
  const double fair = chi * steady_perceived_markup + (1.0 - chi) * standard_markup(epsilon);
  return FairnessSpec(theta, epsilon, fair, chi);
}

FairnessSpec::FairnessSpec(double theta, double epsilon, double fair_markup, double chi)
    : theta_(theta), epsilon_(epsilon), fair_markup_(fair_markup), chi_(chi) {
  if (!(epsilon > 1.0)) throw InvalidParameter("epsilon must exceed 1");
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw InvalidParameter("theta must be finite and >= 0");
  if (!(chi >= 0.0 && chi <= 1.0)) throw InvalidParameter("chi must lie in [0, 1]");
  if (!(fair_markup > 0.0)) throw InvalidParameter("fair markup must be positive");
  m_high_ = theta > 0.0 ? fair_markup + 1.0 / theta : std::numeric_limits<double>::infinity();
  if (!(m_high_ > standard_markup(epsilon))) {
    std::ostringstream msg;
    msg << "fairness domain bound M^h = " << m_high_ << " must exceed eps/(eps-1) = "
        << standard_markup(epsilon);
    throw InvalidParameter(msg.str());
  }
}

double LinearFairness::value(double perceived_markup) const {
  if (!spec_.has_fairness()) return 1.0;
  if (!(perceived_markup >= 0.0) || !(perceived_markup < spec_.m_high())) {
    std::ostringstream msg;
    msg << "perceived markup " << perceived_markup << " outside [0, " << spec_.m_high() << ")";
    throw DomainError(msg.str());
  }
  return 1.0 - spec_.theta() * (perceived_markup - spec_.fair_markup());
}

double LinearFairness::elasticity(double perceived_markup) const {
  check_open_domain(perceived_markup, spec_);
  return spec_.theta() * perceived_markup / value(perceived_markup);
}

// σ = 1 + φ for the linear family, since d ln φ = d ln Mᵖ − d ln F.
double LinearFairness::superelasticity(double perceived_markup) const {
  return 1.0 + elasticity(perceived_markup);
}

double fairness_factor(double m_p, const FairnessSpec& spec) {
  return LinearFairness(spec).value(m_p);
}

double fairness_elasticity(double m_p, const FairnessSpec& spec) {
  return LinearFairness(spec).elasticity(m_p);
}

double fairness_superelasticity(double m_p, const FairnessSpec& spec) {
  return LinearFairness(spec).superelasticity(m_p);
}

BeliefSpec::BeliefSpec(double gamma, double prior_cost, double epsilon)
    : gamma_(gamma), prior_cost_(prior_cost), epsilon_(epsilon) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidParameter("gamma must lie in [0, 1]");
  if (!(prior_cost > 0.0) || !std::isfinite(prior_cost)) {
    throw InvalidParameter("prior cost must be positive");
  }
  if (!(epsilon > 1.0)) throw InvalidParameter("epsilon must exceed 1");
}

bool BeliefSpec::admits_cost(double marginal_cost, double m_high) const {
  if (!std::isfinite(m_high)) return true;
  if (gamma_ == 0.0) return standard_markup(epsilon_) < m_high;
  const double log_bound = std::log(marginal_cost) +
                           (1.0 - gamma_) / gamma_ * std::log(standard_markup(epsilon_)) -
                           std::log(m_high) / gamma_;
  return std::log(prior_cost_) > log_bound;
}

double perceived_cost(double price, const BeliefSpec& belief) {
  if (!(price > 0.0)) throw DomainError("price must be positive");
  const double g = belief.gamma();
  const double e = belief.epsilon();
  return std::exp(g * std::log(belief.prior_cost()) +
                  (1.0 - g) * (std::log((e - 1.0) / e) + std::log(price)));
}

double perceived_markup(double price, const BeliefSpec& belief) {
  if (!(price > 0.0)) throw DomainError("price must be positive");
  const double g = belief.gamma();
  return std::exp((1.0 - g) * std::log(standard_markup(belief.epsilon())) +
                  g * (std::log(price) - std::log(belief.prior_cost())));
}

}  // namespace fairprice
