#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fairprice {

/// Macro parameter set. Defaults are the baseline quarterly calibration;
/// ν only matters for absolute employment levels and is not calibrated.
struct NKParams {
  double epsilon = 2.23;
  double theta = 9.0;
  double gamma = 0.8;
  double eta = 1.1;
  double delta = 0.99;
  double alpha = 1.0;
  double psi = 1.5;
  double nu = 6.0;
  double chi = 0.0;
  double mu_i = 0.75;
  double mu_a = 0.9;

  /// Throws InvalidParameter naming the first violated bound.
  void validate() const;
  /// ρ = −ln δ.
  double rho() const;
  /// (1−δ)γ/(1−δγ), the weight on φ̄ in the steady markup.
  double markup_weight() const;
};

struct SteadyState {
  double pi_bar;
  double m_p_bar;
  double f_bar;
  double phi_bar;
  double sigma_bar;
  double markup_bar;
  double employment_rel;
  std::optional<double> employment_abs;
};

double steady_inflation(double i0_bar, const NKParams& params);
double i0_for_inflation(double pi_bar, const NKParams& params);

/// Steady markup for a given steady fairness elasticity φ̄.
double steady_markup_from_phi(double phi_bar, const NKParams& params);

/// `with_level` additionally computes N̄ from ν.
SteadyState steady_state(double pi_bar, const NKParams& params, bool with_level = false);

/// Residual of the stationary pricing condition at the returned markup.
double steady_pricing_residual(const SteadyState& ss, const NKParams& params);

/// dπ̄/d ln N̄ at zero inflation (quarterly inflation per log employment).
double phillips_slope_at_zero(const NKParams& params);

struct LongRunPoint {
  double pi_annual_pct;
  double chi;
  double markup;
  double employment_dev_pct;
  bool admissible;
  std::string note;
};

/// Inflation grid in annual percent; points beyond the fairness domain are
/// kept with admissible = false and NaN outputs.
std::vector<LongRunPoint> long_run_curve(const std::vector<double>& pi_annual_pct,
                                         const std::vector<double>& chi_list,
                                         const NKParams& params);

}  // namespace fairprice
