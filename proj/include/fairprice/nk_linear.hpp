#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fairprice/nk_steady.hpp"
#include "fairprice/re_solver.hpp"

namespace fairprice {

enum class ShockKind { Monetary, Technology };

std::string to_string(ShockKind kind);
ShockKind shock_from_string(const std::string& name);

struct Lambdas {
  double lambda1;
  double lambda2;
};

struct Omegas {
  double omega0;
  double omega1;
  double omega2;
  double omega3;
};

/// Slopes of the hybrid Phillips curve at the zero-inflation steady state.
Lambdas lambdas(const NKParams& params);
Omegas omegas(const NKParams& params);
/// Same slopes composed from the Ω intermediates.
Lambdas lambdas_from_omegas(const NKParams& params);
/// Coefficient on expected inflation implied by the Ω intermediates (= δγ).
double expected_inflation_coefficient(const NKParams& params);

/// L x(t) = R E_t x(t+1) − e₂ ω(t) with x = (m̂ᵖ(t−1), π̂(t), n̂(t)).
struct LogLinSystem {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Eigen::Matrix3d lhs;
  Eigen::Matrix3d rhs;
  Eigen::Matrix3d gamma_matrix;
  Eigen::Vector3d psi_vector;
  ShockKind shock_kind = ShockKind::Monetary;
  double shock_persistence = 0.0;

  LinearREModel re_model() const;
};

LogLinSystem assemble(const NKParams& params, ShockKind kind);
/// Assembly with caller-supplied slopes (used to inject faults in tests).
LogLinSystem assemble_with_lambdas(const NKParams& params, ShockKind kind, Lambdas slopes);

/// Inverse of the right-hand matrix written out by hand.
Eigen::Matrix3d closed_form_rhs_inverse(const NKParams& params, Lambdas slopes);

/// Raw quarterly log deviations (fractions, not percent).
struct IRFSeries {
  std::string model;
  ShockKind shock_kind = ShockKind::Monetary;
  std::vector<int> t;
  std::vector<double> i0_hat;
  std::vector<double> a_hat;
  std::vector<double> pi_hat;
  std::vector<double> i_hat;
  std::vector<double> m_p_hat;
  std::vector<double> m_hat;
  std::vector<double> n_hat;
  std::vector<double> y_hat;
  std::vector<double> real_wage_hat;

  int horizon() const { return static_cast<int>(t.size()); }
};

inline constexpr double kMonetaryImpulse = 0.0025;
inline constexpr double kTechnologyImpulse = 0.01;
inline constexpr int kDefaultHorizon = 24;

IRFSeries monetary_irf(const NKParams& params, double zeta0 = kMonetaryImpulse,
                       int horizon = kDefaultHorizon);
IRFSeries technology_irf(const NKParams& params, double zeta0 = kTechnologyImpulse,
                         int horizon = kDefaultHorizon);
/// IRF from an already assembled system (keeps the fault-injection path open).
IRFSeries fairness_irf(const LogLinSystem& system, const NKParams& params, double zeta0,
                       int horizon);

struct IRFResiduals {
  double markup_employment = 0.0;
  double output = 0.0;
  double interest = 0.0;
  double perceived_markup_law = 0.0;
  double phillips = 0.0;
  double is_curve = 0.0;

  double worst() const;
};

/// Per-period identity and equation residuals along a fairness-model IRF,
/// with λ₁, λ₂ recomputed from `params`.
IRFResiduals fairness_irf_residuals(const IRFSeries& irf, const NKParams& params);

/// IS residual αn̂ + ψπ̂ − αn̂′ − π̂′ + î₀ + â − â′ over t = 0..T−2.
double is_residual(const IRFSeries& irf, const NKParams& params);

}  // namespace fairprice
