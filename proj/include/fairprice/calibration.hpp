#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "fairprice/errors.hpp"
#include "fairprice/nk_steady.hpp"

namespace fairprice {

struct FirmParams {
  double epsilon = 2.23;
  double theta = 9.0;
  double gamma = 0.8;
  double delta = 0.99;

  static FirmParams from(const NKParams& p) { return {p.epsilon, p.theta, p.gamma, p.delta}; }
  void validate() const;
};

struct FirmSteady {
  double price;
  double markup;
  double output;
  double perceived_markup;
};

/// Zero-inflation steady state of a single price setter facing cost C.
FirmSteady firm_steady(const FirmParams& params, double marginal_cost);

/// Residual of the stationary pricing condition at the steady markup.
double firm_steady_residual(const FirmParams& params, const FirmSteady& steady);

/// Which forward-looking pricing condition closes the firm's path problem.
/// Symmetric: the revenue-growth ratio cancels against the discount factor,
/// as in the general-equilibrium model. Idiosyncratic: a single firm whose
/// revenue growth enters the optimality condition explicitly.
enum class PricingEquation { Symmetric, Idiosyncratic };

std::string to_string(PricingEquation eq);

struct FirmPathProblem {
  FirmParams params{};
  double base_cost = 1.0;
  /// Permanent proportional increase in marginal cost from t = 0 on.
  double cost_shock = 0.01;
  int horizon = 200;
  PricingEquation equation = PricingEquation::Symmetric;

  void validate() const;
};

struct PathResiduals {
  double pricing = 0.0;
  double demand = 0.0;
  double markup = 0.0;
  double perceived_law = 0.0;

  double worst() const;
};

struct PassthroughPath {
  /// β(t) = ((P(t) − P̄)/P̄)/shock, which for the 1% shock equals the price
  /// change in percent.
  std::vector<double> beta;
  std::vector<double> price;
  std::vector<double> markup;
  std::vector<double> perceived_markup;
  std::vector<double> output;
  double base_price = 0.0;
  int iterations = 0;
  PathResiduals residuals;
};

inline constexpr double kPathResidualTol = 1e-10;

/// Stacked-time damped Newton over (ln P(t), ln Mᵖ(t)), t = 0..T−1, with the
/// new steady state imposed at t = T. Throws NonConvergence on failure.
PassthroughPath simulate_passthrough(const FirmPathProblem& problem);

/// Re-evaluates all four equation families along a solved path.
PathResiduals path_residuals(const FirmPathProblem& problem, const PassthroughPath& path);

/// Stacked residual vector and analytic Jacobian at interleaved unknowns
/// u = (ln P(0), ln Mᵖ(0), ln P(1), ...).
Eigen::VectorXd stacked_residual(const FirmPathProblem& problem, const Eigen::VectorXd& u);
Eigen::SparseMatrix<double> stacked_jacobian(const FirmPathProblem& problem,
                                             const Eigen::VectorXd& u);

/// Finite characteristic roots of the path equations linearized at the new
/// steady state, sorted by modulus.
std::vector<std::complex<double>> linearized_roots(const FirmPathProblem& problem);

/// ε such that the zero-inflation steady markup equals `markup_target`.
double epsilon_from_markup(double theta, double gamma, double markup_target, double delta);

struct CalibrationTargets {
  double markup = 1.5;
  double beta0 = 0.4;
  double beta_2yr = 0.7;
  int quarters = 8;
};

struct CalibrationOptions {
  double theta_lo = 0.5;
  double theta_hi = 20.0;
  double gamma_lo = 0.05;
  double gamma_hi = 0.95;
  double moment_tol = 0.005;
  double theta_tol = 1e-8;
  double gamma_tol = 1e-8;
  int horizon = 200;
};

struct CalibrationResult {
  double theta = 0.0;
  double gamma = 0.0;
  double epsilon = 0.0;
  double markup = 0.0;
  double beta0 = 0.0;
  double beta_2yr = 0.0;
  int evaluations = 0;
};

class SearchFailure : public NumericalError {
 public:
  SearchFailure(const std::string& what, CalibrationResult best, std::string boundary)
      : NumericalError(what), best_(best), boundary_(std::move(boundary)) {}

  const CalibrationResult& best() const noexcept { return best_; }
  /// "theta_lower", "theta_upper", "gamma_lower", "gamma_upper", or "" if
  /// the search stopped inside the box.
  const std::string& boundary() const noexcept { return boundary_; }

 private:
  CalibrationResult best_;
  std::string boundary_;
};

/// Passthrough moments (β(0), β(quarters)) at a candidate (θ, γ) with ε
/// pinned by the markup target.
CalibrationResult evaluate_candidate(double theta, double gamma, const CalibrationTargets& targets,
                                     double delta, int horizon);

/// Outer bisection on γ for the two-year moment, inner bisection on θ for the
/// impact moment.
CalibrationResult calibrate(const CalibrationTargets& targets, double delta,
                            const CalibrationOptions& options = {});

}  // namespace fairprice
