#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fairprice {

/// E_t x(t+1) = Γ x(t) + Ψ ω(t), ω(t+1) = μ ω(t) + innovation.
/// The first `n_pre` entries of x are predetermined.
struct LinearREModel {
  Eigen::MatrixXd gamma_matrix;
  Eigen::VectorXd psi_vector;
  int n_pre = 0;
  double shock_persistence = 0.0;

  int size() const { return static_cast<int>(gamma_matrix.rows()); }
  int n_jump() const { return size() - n_pre; }
  void validate() const;
};

enum class Determinacy { Unique, NoSolution, Indeterminate, Boundary };

std::string to_string(Determinacy verdict);

struct EigenReport {
  int n_stable = 0;
  int n_unstable = 0;
  int n_boundary = 0;
  std::vector<std::complex<double>> spectrum;
  Determinacy verdict = Determinacy::Unique;
};

inline constexpr double kUnitCircleTol = 1e-8;
inline constexpr double kRuleResidualTol = 1e-10;

EigenReport eigencheck(const LinearREModel& model);

/// With p(t) the predetermined block of x(t) and ω(t) the forcing:
///   p(t+1) = pre_transition · [p(t); ω(t)]
///   j(t)   = jump_map       · [p(t); ω(t)]
/// For models whose predetermined entries are lagged variables, p(t) holds
/// values dated t−1, so pre_transition maps (x_pre(t−1), ω(t)) to x_pre(t).
struct DecisionRule {
  Eigen::MatrixXd pre_transition;
  Eigen::MatrixXd jump_map;
  std::vector<std::complex<double>> eigenvalues;
  int n_pre = 0;
  double shock_persistence = 0.0;
  double verified_residual = 0.0;

  /// Full x(t) for a given predetermined block and forcing value.
  Eigen::VectorXd state(const Eigen::VectorXd& pre, double shock) const;
};

/// Throws NoSolution, Indeterminate or BoundaryEigenvalue when the verdict is
/// not Unique, and VerificationFailure if the substituted rule leaves a
/// residual above kRuleResidualTol.
DecisionRule solve(const LinearREModel& model);

/// Largest residual of the model's expectational equations under the rule,
/// evaluated at `draws` random (p, ω) points with unit-scale entries.
double rule_residual(const LinearREModel& model, const DecisionRule& rule, int draws = 16,
                     unsigned seed = 12345);

/// Row t holds x(t) for t = 0..horizon−1, starting from p(0) = 0 and ω(0) =
/// shock_size, and `forcing` (if given) receives ω(t).
Eigen::MatrixXd impulse_response(const DecisionRule& rule, double shock_size, int horizon,
                                 Eigen::VectorXd* forcing = nullptr);

/// Complex Schur form Γ = U T U* with diagonal entries ordered so that the
/// `selected` predicate holds for a leading block. Returns the block size.
int ordered_schur(const Eigen::MatrixXd& matrix,
                  bool (*selected)(std::complex<double>), Eigen::MatrixXcd& unitary,
                  Eigen::MatrixXcd& triangular);

}  // namespace fairprice
