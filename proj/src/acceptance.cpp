#include "fairprice/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "fairprice/calibration.hpp"
#include "fairprice/monopoly.hpp"
#include "fairprice/nk_linear.hpp"
#include "fairprice/nk_steady.hpp"
#include "fairprice/re_solver.hpp"
#include "fairprice/report.hpp"
#include "fairprice/textbook_nk.hpp"

namespace fairprice {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

bool within(double value, double target, double tol) {
  return std::isfinite(value) && std::abs(value - target) <= tol;
}

CriterionResult make(std::string id, std::string name, bool ok, std::string measured,
                     std::string target, double runtime_ms, double budget_ms) {
  CriterionResult r;
  r.id = std::move(id);
  r.name = std::move(name);
  r.passed = ok && (budget_ms <= 0.0 || runtime_ms < budget_ms);
  r.measured = std::move(measured);
  r.target = std::move(target);
  r.runtime_ms = runtime_ms;
  r.budget_ms = budget_ms;
  return r;
}

CriterionResult failed(std::string id, std::string name, const std::exception& e,
                       std::string target, double runtime_ms, double budget_ms) {
  CriterionResult r = make(std::move(id), std::move(name), false,
                           std::string("error: ") + e.what(), std::move(target), runtime_ms, budget_ms);
  r.passed = false;
  return r;
}

LogLinSystem injected_system(const NKParams& p, ShockKind kind, double scale) {
  Lambdas s = lambdas(p);
  s.lambda1 *= scale;
  return assemble_with_lambdas(p, kind, s);
}

template <class F>
int argmax_abs(const std::vector<double>& v, F&& better) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i) {
    if (better(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(best)])) best = i;
  }
  return best;
}

double peak(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double trough(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

// ---- criterion 8 building blocks ------------------------------------------

std::pair<bool, std::string> passthrough_vs_fd() {
  std::mt19937 gen(2024);
  std::uniform_real_distribution<double> eps_d(1.5, 5.0), theta_d(0.5, 15.0), gamma_d(0.1, 1.0),
      prior_d(0.9, 1.1);
  int accepted = 0;
  int attempts = 0;
  double worst = 0.0;
  while (accepted < 100 && attempts < 10000) {
    ++attempts;
    const double eps = eps_d(gen), theta = theta_d(gen), gamma = gamma_d(gen);
    MonopolyScenario s = acclimated_scenario(eps, theta, gamma);
    s.belief = BeliefSpec(gamma, s.belief.prior_cost() * prior_d(gen), eps);
    try {
      const MonopolyOutcome o = solve_markup(s);
      const double h = 1e-6;
      MonopolyScenario up = s, down = s;
      up.marginal_cost *= std::exp(h);
      down.marginal_cost *= std::exp(-h);
      const double fd = (std::log(solve_markup(up).price) - std::log(solve_markup(down).price)) / (2 * h);
      worst = std::max(worst, std::abs(o.passthrough - fd) / std::abs(fd));
      ++accepted;
    } catch (const std::exception&) {
      continue;
    }
  }
  return {accepted == 100 && worst <= 1e-5,
          "worst rel err " + fmt(worst, 3) + " over " + std::to_string(accepted) + " draws"};
}

std::pair<bool, std::string> acclimated_monotonicity() {
  const std::vector<double> eg{1.5, 2.0, 2.5, 3.0, 4.0}, tg{0.5, 2.0, 5.0, 9.0, 15.0},
      gg{0.2, 0.4, 0.6, 0.8, 1.0};
  const auto rows = acclimated_comparative_statics(eg, tg, gg);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) { return rows[(i * 5 + j) * 5 + k]; };
  int violations = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      for (std::size_t k = 0; k < 5; ++k) {
        const auto r = at(i, j, k);
        if (i + 1 < 5) {
          const auto n = at(i + 1, j, k);
          violations += !(n.markup < r.markup) + !(n.passthrough > r.passthrough);
        }
        if (j + 1 < 5) {
          const auto n = at(i, j + 1, k);
          violations += !(n.markup < r.markup) + !(n.passthrough < r.passthrough);
        }
        if (k + 1 < 5) {
          const auto n = at(i, j, k + 1);
          violations += !(n.markup < r.markup) + !(n.passthrough < r.passthrough);
        }
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " violations on 125 grid points"};
}

std::pair<bool, std::string> slope_vs_fd() {
  double worst = 0.0;
  for (double chi : {0.0, 0.3, 0.7, 1.0}) {
    for (double theta : {3.0, 9.0}) {
      NKParams p;
      p.chi = chi;
      p.theta = theta;
      const double h = 1e-6;
      const double up = std::log(steady_state(h, p).employment_rel);
      const double down = std::log(steady_state(-h, p).employment_rel);
      const double fd = 2 * h / (up - down);
      worst = std::max(worst, std::abs(phillips_slope_at_zero(p) / fd - 1.0));
    }
  }
  return {worst <= 1e-4, "worst rel err " + fmt(worst, 3)};
}

std::pair<bool, std::string> profit_unimodality() {
  const double eps = 2.23, theta = 9.0, gamma = 0.8;
  const MonopolyScenario sub = acclimated_scenario(eps, theta, gamma);
  std::ostringstream os;
  bool ok = true;
  for (Regime reg : {Regime::NoFairness, Regime::ObservableCost, Regime::RationalInference,
                     Regime::Subproportional}) {
    MonopolyScenario s = sub;
    s.regime = reg;
    const auto grid = price_grid(s, 10000);
    const auto scan = profit_scan(s, grid);
    const auto sc = count_sign_changes(scan);
    const double p_star = solve_markup(s).price;
    const double step = grid[1] - grid[0];
    const auto best = std::max_element(scan.begin(), scan.end(), [](const auto& a, const auto& b) {
      return a.profit < b.profit;
    });
    const bool here = sc.changes == 1 && sc.positive_to_negative == 1 &&
                      std::abs(best->price - p_star) <= step;
    ok = ok && here;
    os << to_string(reg) << ":" << sc.changes << (here ? "" : "!") << " ";
  }
  return {ok, "sign changes " + os.str()};
}

std::pair<bool, std::string> irf_identities(double scale) {
  const NKParams p;
  double worst = 0.0;
  for (ShockKind kind : {ShockKind::Monetary, ShockKind::Technology}) {
    const double zeta = kind == ShockKind::Monetary ? kMonetaryImpulse : kTechnologyImpulse;
    for (int horizon : {kDefaultHorizon, 120}) {
      const IRFSeries irf = fairness_irf(injected_system(p, kind, scale), p, zeta, horizon);
      worst = std::max(worst, fairness_irf_residuals(irf, p).worst());
      TextbookParams tp;
      tp.shared = p;
      const IRFSeries tb = textbook_irf(tp, kind, zeta, horizon);
      worst = std::max({worst, textbook_phillips_residual(tb, tp), is_residual(tb, p)});
    }
  }
  return {worst <= 1e-10, "worst residual " + fmt(worst, 3)};
}

std::pair<bool, std::string> stacked_newton() {
  FirmPathProblem prob;
  const PassthroughPath a = simulate_passthrough(prob);
  prob.horizon = 400;
  const PassthroughPath b = simulate_passthrough(prob);
  const double diff = std::abs(a.beta.front() - b.beta.front());
  const double res = std::max(a.residuals.worst(), b.residuals.worst());
  return {res <= 1e-10 && diff < 1e-6,
          "residual " + fmt(res, 3) + ", |beta0(T=200) - beta0(T=400)| " + fmt(diff, 3)};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> out;
  const NKParams base;
  const double scale = options.lambda1_scale;

  // 1. Steady-state markup.
  {
    const auto t0 = Clock::now();
    try {
      const double m = steady_state(0.0, base).markup_bar;
      const double ms = elapsed_ms(t0);
      out.push_back(make("1", "steady-state markup", within(m, 1.5, 0.01), fmt(m), "1.5 +- 0.01", ms, 1.0));
    } catch (const std::exception& e) {
      out.push_back(failed("1", "steady-state markup", e, "1.5 +- 0.01", elapsed_ms(t0), 1.0));
    }
  }

  // 2. Calibration round trip.
  if (!options.skip_calibration) {
    const auto t0 = Clock::now();
    const CalibrationTargets targets;
    try {
      const CalibrationResult c = calibrate(targets, base.delta);
      const double search_ms = elapsed_ms(t0);
      FirmPathProblem prob;
      prob.params = {c.epsilon, c.theta, c.gamma, base.delta};
      const PassthroughPath path = simulate_passthrough(prob);
      const double ms = elapsed_ms(t0);
      const double b0 = path.beta.front();
      const double b8 = path.beta.at(8);
      out.push_back(make("2a", "calibrated theta", within(c.theta, 9.0, 0.5), fmt(c.theta), "9 +- 0.5",
                         search_ms, 30000.0));
      out.push_back(make("2b", "calibrated gamma", within(c.gamma, 0.8, 0.02), fmt(c.gamma),
                         "0.8 +- 0.02", search_ms, 30000.0));
      out.push_back(make("2c", "calibrated epsilon", within(c.epsilon, 2.23, 0.05), fmt(c.epsilon),
                         "2.23 +- 0.05", search_ms, 30000.0));
      out.push_back(make("2d", "recovered beta(0)", within(b0, 0.4, 0.005), fmt(b0), "0.40 +- 0.005",
                         ms, 30000.0));
      out.push_back(make("2e", "recovered beta(8)", within(b8, 0.7, 0.005), fmt(b8), "0.70 +- 0.005",
                         ms, 30000.0));
    } catch (const std::exception& e) {
      for (const char* id : {"2a", "2b", "2c", "2d", "2e"}) {
        out.push_back(failed(id, "calibration round trip", e, "see criterion", elapsed_ms(t0), 30000.0));
      }
    }
  }

  // 3. Blanchard-Kahn spectrum.
  {
    const auto t0 = Clock::now();
    try {
      const EigenReport rep = eigencheck(injected_system(base, ShockKind::Monetary, scale).re_model());
      const double ms = elapsed_ms(t0);
      bool ok = rep.spectrum.size() == 3;
      std::ostringstream m;
      for (const auto& z : rep.spectrum) m << fmt(z.real(), 4) << (z.imag() < 0 ? "" : "+") << fmt(z.imag(), 3) << "i ";
      if (ok) {
        const auto& r = rep.spectrum[0];
        const auto& c1 = rep.spectrum[1];
        const auto& c2 = rep.spectrum[2];
        ok = within(r.real(), 0.30, 0.005) && std::abs(r.imag()) < 0.005 &&
             within(c1.real(), 1.02, 0.005) && within(c2.real(), 1.02, 0.005) &&
             within(std::abs(c1.imag()), 0.03, 0.005) && within(std::abs(c2.imag()), 0.03, 0.005) &&
             c1.imag() * c2.imag() < 0;
      }
      out.push_back(make("3", "Blanchard-Kahn spectrum", ok, m.str(), "0.30, 1.02 +- 0.03i (2 dp)", ms, 1.0));
    } catch (const std::exception& e) {
      out.push_back(failed("3", "Blanchard-Kahn spectrum", e, "0.30, 1.02 +- 0.03i", elapsed_ms(t0), 1.0));
    }
  }

  // 4. Monetary IRF.
  {
    const auto t0 = Clock::now();
    try {
      const IRFSeries irf = fairness_irf(injected_system(base, ShockKind::Monetary, scale), base,
                                         kMonetaryImpulse, kDefaultHorizon);
      const double ms = elapsed_ms(t0);
      const double y = 100 * peak(irf.y_hat), n = 100 * peak(irf.n_hat), m = 100 * trough(irf.m_hat);
      out.push_back(make("4a", "monetary peak output/employment",
                         within(y, 0.7, 0.1) && within(n, 0.7, 0.1),
                         "y " + fmt(y, 4) + "%, n " + fmt(n, 4) + "%", "+0.7% +- 0.1pp", ms, 10.0));
      out.push_back(make("4b", "monetary trough markup", within(m, -1.4, 0.15), fmt(m, 4) + "%",
                         "-1.4% +- 0.15pp", ms, 10.0));
    } catch (const std::exception& e) {
      out.push_back(failed("4", "monetary IRF", e, "+0.7%, -1.4%", elapsed_ms(t0), 10.0));
    }
  }

  // 5. Technology IRF.
  {
    const auto t0 = Clock::now();
    try {
      const IRFSeries irf = fairness_irf(injected_system(base, ShockKind::Technology, scale), base,
                                         kTechnologyImpulse, kDefaultHorizon);
      const double ms = elapsed_ms(t0);
      const double m = 100 * peak(irf.m_hat), n = 100 * trough(irf.n_hat), y0 = 100 * irf.y_hat.front();
      const int at = argmax_abs(irf.n_hat, [](double a, double b) { return std::abs(a) > std::abs(b); });
      out.push_back(make("5a", "technology peak markup", within(m, 1.3, 0.15), fmt(m, 4) + "%",
                         "+1.3% +- 0.15pp", ms, 10.0));
      out.push_back(make("5b", "technology employment trough", within(n, -0.7, 0.1), fmt(n, 4) + "%",
                         "-0.7% +- 0.1pp", ms, 10.0));
      out.push_back(make("5c", "technology initial output", within(y0, 0.5, 0.1), fmt(y0, 4) + "%",
                         "+0.5% +- 0.1pp", ms, 10.0));
      out.push_back(make("5d", "technology employment hump", at >= 1, "extremum at t = " + std::to_string(at),
                         "t >= 1", ms, 10.0));
    } catch (const std::exception& e) {
      out.push_back(failed("5", "technology IRF", e, "+1.3%, -0.7%, +0.5%", elapsed_ms(t0), 10.0));
    }
  }

  // 6. Textbook comparator.
  {
    const auto t0 = Clock::now();
    try {
      TextbookParams tp;
      tp.shared = base;
      const IRFSeries tb = textbook_irf(tp, ShockKind::Monetary, kMonetaryImpulse);
      const IRFSeries fair = fairness_irf(injected_system(base, ShockKind::Monetary, scale), base,
                                          kMonetaryImpulse, kDefaultHorizon);
      const double ms = elapsed_ms(t0);
      const double ratio = peak(tb.y_hat) / peak(fair.y_hat);
      const int at = argmax_abs(tb.y_hat, [](double a, double b) { return std::abs(a) > std::abs(b); });
      out.push_back(make("6a", "textbook/fairness output ratio", within(ratio, 0.33, 0.15), fmt(ratio, 4),
                         "0.33 +- 0.15", ms, 10.0));
      out.push_back(make("6b", "textbook output maximal on impact", at == 0,
                         "max at t = " + std::to_string(at), "t = 0", ms, 10.0));
    } catch (const std::exception& e) {
      out.push_back(failed("6", "textbook comparator", e, "ratio 0.33", elapsed_ms(t0), 10.0));
    }
  }

  // 7. Long-run Phillips curve.
  {
    const auto t0 = Clock::now();
    try {
      const std::vector<double> chis{0.0, 0.3, 0.7, 1.0};
      const std::vector<double> targets{1.2, 0.8, 0.4, 0.06};
      const auto pts = long_run_curve({0.0, 1.0}, chis, base);
      const double ms = elapsed_ms(t0);
      for (std::size_t k = 0; k < chis.size(); ++k) {
        const double gain = pts[2 * k + 1].employment_dev_pct - pts[2 * k].employment_dev_pct;
        out.push_back(make("7" + std::string(1, static_cast<char>('a' + k)),
                           "long-run employment gain, chi = " + fmt(chis[k]),
                           within(gain, targets[k], 0.1), fmt(gain, 4) + "%",
                           fmt(targets[k]) + "% +- 0.1pp", ms, 10.0));
      }
    } catch (const std::exception& e) {
      out.push_back(failed("7", "long-run Phillips curve", e, "1.2/0.8/0.4/0.06%", elapsed_ms(t0), 10.0));
    }
  }

  // 8. Property suite.
  {
    const auto t_all = Clock::now();
    const std::vector<std::pair<std::string, std::function<std::pair<bool, std::string>()>>> props = {
        {"8a passthrough formula vs finite-difference re-solve", passthrough_vs_fd},
        {"8b acclimated markup/passthrough monotonicity", acclimated_monotonicity},
        {"8c long-run slope vs finite differences", slope_vs_fd},
        {"8d profit unimodality, four regimes", profit_unimodality},
        {"8e linearized identities along IRFs", [scale] { return irf_identities(scale); }},
        {"8f stacked Newton residuals and horizon doubling", stacked_newton},
    };
    const std::vector<std::string> targets = {"<= 1e-5 rel", "0 violations", "<= 1e-4 rel",
                                              "1 sign change, argmax at P*", "<= 1e-10",
                                              "<= 1e-10, < 1e-6"};
    for (std::size_t k = 0; k < props.size(); ++k) {
      const auto t0 = Clock::now();
      const std::string id = props[k].first.substr(0, 2);
      const std::string name = props[k].first.substr(3);
      try {
        const auto [ok, measured] = props[k].second();
        out.push_back(make(id, name, ok, measured, targets[k], elapsed_ms(t0), 0.0));
      } catch (const std::exception& e) {
        out.push_back(failed(id, name, e, targets[k], elapsed_ms(t0), 0.0));
      }
    }
    const double ms = elapsed_ms(t_all);
    out.push_back(make("8", "property suite runtime", true, fmt(ms, 4) + " ms", "< 20 s", ms, 20000.0));
  }
  return out;
}

bool print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results, double total_ms) {
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": measured " << r.measured
       << " | target " << r.target << " | " << fmt(r.runtime_ms, 4) << " ms";
    if (r.budget_ms > 0.0) os << " (budget " << fmt(r.budget_ms) << " ms)";
    os << '\n';
  }
  const bool budget_ok = total_ms <= 60000.0;
  all = all && budget_ok;
  os << (budget_ok ? "[PASS] " : "[FAIL] ") << "total runtime " << fmt(total_ms, 5)
     << " ms | budget 60000 ms\n";
  const auto failures = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
  os << "summary: " << results.size() - static_cast<std::size_t>(failures) << "/" << results.size()
     << " criteria passed\n";
  return all;
}

}  // namespace fairprice
