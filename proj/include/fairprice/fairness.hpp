#pragma once

#include <limits>
#include <memory>

namespace fairprice {

/// Standard monopoly markup ε/(ε−1).
double standard_markup(double epsilon);

// Contract every fairness-function family satisfies: positive, strictly
// decreasing on [0, upper_bound) and with positive superelasticity there.
class FairnessFunction {
 public:
  virtual ~FairnessFunction() = default;

  virtual double value(double perceived_markup) const = 0;
  /// φ = −d ln F / d ln Mᵖ.
  virtual double elasticity(double perceived_markup) const = 0;
  /// σ = d ln φ / d ln Mᵖ.
  virtual double superelasticity(double perceived_markup) const = 0;
  /// Mʰ, the perceived markup where F reaches zero.
  virtual double upper_bound() const = 0;
};

/// Parameters of the linear fairness family F(Mᵖ) = 1 − θ(Mᵖ − Mᶠ).
///
/// θ = 0 encodes customers without fairness concerns (F ≡ 1, Mʰ = +∞).
/// Mʰ = Mᶠ + 1/θ is computed once and validated against ε/(ε−1) so that
/// domain problems surface at construction rather than inside a solver.
class FairnessSpec {
 public:
  /// Fair markup anchored at ε/(ε−1), no acclimation.
  static FairnessSpec standard(double theta, double epsilon);
  /// Fair markup Mᶠ = χ·M̄ᵖ + (1−χ)·ε/(ε−1).
  static FairnessSpec acclimated(double theta, double epsilon, double chi,
                                 double steady_perceived_markup);

  FairnessSpec(double theta, double epsilon, double fair_markup, double chi);

  double theta() const noexcept { return theta_; }
  double epsilon() const noexcept { return epsilon_; }
  double fair_markup() const noexcept { return fair_markup_; }
  double chi() const noexcept { return chi_; }
  double m_high() const noexcept { return m_high_; }
  bool has_fairness() const noexcept { return theta_ > 0.0; }

 private:
  double theta_;
  double epsilon_;
  double fair_markup_;
  double chi_;
  double m_high_;
};

class LinearFairness final : public FairnessFunction {
 public:
  explicit LinearFairness(FairnessSpec spec) : spec_(spec) {}

  double value(double perceived_markup) const override;
  double elasticity(double perceived_markup) const override;
  double superelasticity(double perceived_markup) const override;
  double upper_bound() const override { return spec_.m_high(); }

  const FairnessSpec& spec() const noexcept { return spec_; }

 private:
  FairnessSpec spec_;
};

double fairness_factor(double m_p, const FairnessSpec& spec);
double fairness_elasticity(double m_p, const FairnessSpec& spec);
double fairness_superelasticity(double m_p, const FairnessSpec& spec);

/// Subproportional inference: Cᵖ(P) = (Cᵇ)^γ · ((ε−1)P/ε)^(1−γ).
/// γ = 0 is the rational-inference limit, γ = 1 pure anchoring on Cᵇ.
class BeliefSpec {
 public:
  BeliefSpec(double gamma, double prior_cost, double epsilon);

  double gamma() const noexcept { return gamma_; }
  double prior_cost() const noexcept { return prior_cost_; }
  double epsilon() const noexcept { return epsilon_; }

  /// True when pricing at marginal cost keeps the perceived markup below
  /// Mʰ, i.e. Cᵇ > C·(ε/(ε−1))^((1−γ)/γ)·(Mʰ)^(−1/γ).
  bool admits_cost(double marginal_cost, double m_high) const;

 private:
  double gamma_;
  double prior_cost_;
  double epsilon_;
};

double perceived_cost(double price, const BeliefSpec& belief);
double perceived_markup(double price, const BeliefSpec& belief);

}  // namespace fairprice
