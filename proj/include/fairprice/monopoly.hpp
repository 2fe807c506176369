#pragma once

#include <string>
#include <vector>

#include "fairprice/fairness.hpp"

namespace fairprice {

enum class Regime { NoFairness, ObservableCost, RationalInference, Subproportional };

std::string to_string(Regime regime);
Regime regime_from_string(const std::string& name);

struct MonopolyScenario {
  double marginal_cost;
  FairnessSpec fairness;
  BeliefSpec belief;
  Regime regime;

  /// Checks the prior-cost lower bound for the Subproportional regime.
  void validate() const;
};

struct MonopolyOutcome {
  double markup;
  double price;
  double perceived_markup;
  double elasticity;
  double passthrough;
};

/// Perceived markup implied by a candidate price under the scenario's regime.
double regime_perceived_markup(double price, const MonopolyScenario& scenario);

double demand(double price, const MonopolyScenario& scenario);
double demand_elasticity(double m_p, const MonopolyScenario& scenario);

MonopolyOutcome solve_markup(const MonopolyScenario& scenario);
double passthrough(const MonopolyScenario& scenario, const MonopolyOutcome& outcome);

/// Closed forms for a scenario whose prior cost makes the equilibrium
/// perceived markup equal ε/(ε−1).
double acclimated_markup(double epsilon, double theta, double gamma);
double acclimated_passthrough(double epsilon, double theta, double gamma);

/// Subproportional scenario with Cᵇ chosen so that the solved price sits
/// exactly at the acclimation point.
MonopolyScenario acclimated_scenario(double epsilon, double theta, double gamma,
                                     double marginal_cost = 1.0);

struct ComparativeStaticsRow {
  double epsilon;
  double theta;
  double gamma;
  double markup;
  double passthrough;
};

/// Row-major over (ε, θ, γ) with γ varying fastest.
std::vector<ComparativeStaticsRow> acclimated_comparative_statics(
    const std::vector<double>& epsilon_grid, const std::vector<double>& theta_grid,
    const std::vector<double>& gamma_grid);

struct ProfitPoint {
  double price;
  double profit;
  int slope_sign;
};

/// Upper end of the price domain on which demand is defined (P_b); +∞ when
/// the regime places no bound.
double price_domain_upper(const MonopolyScenario& scenario);

/// Evenly spaced prices strictly inside (C, upper); an unbounded domain is
/// capped at `cap_factor`·ε/(ε−1)·C.
std::vector<double> price_grid(const MonopolyScenario& scenario, int points,
                               double cap_factor = 4.0);

std::vector<ProfitPoint> profit_scan(const MonopolyScenario& scenario,
                                     const std::vector<double>& prices);

struct SignChangeSummary {
  int changes = 0;
  int positive_to_negative = 0;
  /// Index of the first point with negative slope after a positive run, or -1.
  int first_negative_index = -1;
};

SignChangeSummary count_sign_changes(const std::vector<ProfitPoint>& scan);

}  // namespace fairprice
