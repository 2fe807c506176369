#pragma once

#include "fairprice/nk_linear.hpp"

namespace fairprice {

/// Calvo benchmark. ε = 3 gives a steady markup of exactly 1.5; the other
/// structural parameters are shared with the fairness model.
struct TextbookParams {
  double epsilon_tb = 3.0;
  double xi = 0.67;
  NKParams shared{};

  void validate() const;
};

double kappa(const TextbookParams& params);

/// x = (π̂(t), n̂(t)), both jump variables.
LinearREModel textbook_model(const TextbookParams& params, ShockKind kind);

IRFSeries textbook_irf(const TextbookParams& params, ShockKind kind, double zeta0,
                       int horizon = kDefaultHorizon);

/// π̂(t) − δπ̂(t+1) − κn̂(t) over t = 0..T−2.
double textbook_phillips_residual(const IRFSeries& irf, const TextbookParams& params);

}  // namespace fairprice
