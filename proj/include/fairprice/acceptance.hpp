#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fairprice {

struct CriterionResult {
  std::string id;
  std::string name;
  bool passed = false;
  std::string measured;
  std::string target;
  double runtime_ms = 0.0;
  double budget_ms = 0.0;
};

struct AcceptanceOptions {
  /// Multiplies λ₁ when assembling the IRF systems (fault injection); the
  /// residual checks keep using the correct slope.
  double lambda1_scale = 1.0;
  /// Skip the calibration round trip (the slowest criterion).
  bool skip_calibration = false;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// One line per criterion; returns true when every criterion passed.
bool print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results,
                      double total_ms);

}  // namespace fairprice
