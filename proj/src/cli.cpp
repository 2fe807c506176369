#include "fairprice/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fairprice/acceptance.hpp"
#include "fairprice/calibration.hpp"
#include "fairprice/errors.hpp"
#include "fairprice/monopoly.hpp"
#include "fairprice/nk_linear.hpp"
#include "fairprice/nk_steady.hpp"
#include "fairprice/report.hpp"
#include "fairprice/textbook_nk.hpp"

namespace fairprice {

namespace {

struct Overrides {
  std::optional<std::string> config;
  std::optional<std::string> out;
  bool plot = false;
  std::optional<int> horizon;
  std::optional<std::string> chi_list;
  std::optional<double> pi_annual;
  std::map<std::string, std::optional<double>> params;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(parse_double(item, what));
  if (values.empty()) throw UsageError("empty list for " + what);
  return values;
}

// "lo:hi:step" in annual percent.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(parse_double(item, "--pi-grid"));
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw UsageError("--pi-grid expects lo:hi:step with step > 0 and hi >= lo");
  }
  std::vector<double> grid;
  const int n = static_cast<int>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  for (int i = 0; i <= n; ++i) grid.push_back(parts[0] + i * parts[2]);
  return grid;
}

std::string default_dir() {
  const char* env = std::getenv("FAIRPRICE_SEED_DIR");
  return env && *env ? std::string(env) : std::string(".");
}

std::string output_path(const Overrides& o, const std::string& stem, const std::string& ext) {
  if (o.out) return *o.out;
  const std::filesystem::path dir(default_dir());
  std::filesystem::create_directories(dir);
  return (dir / (stem + ext)).string();
}

std::string svg_path(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".svg");
  return p.string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

std::vector<double> column_values(const CsvTable& t, const std::string& name) {
  std::size_t idx = 0;
  while (idx < t.columns.size() && t.columns[idx] != name) ++idx;
  std::vector<double> v;
  for (const auto& row : t.rows) v.push_back(std::strtod(row.at(idx).c_str(), nullptr));
  return v;
}

void kv(std::ostream& os, const std::string& key, double value) {
  os << key << " = " << format_number(value) << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fairness-based pricing: monopoly markups, NK dynamics and calibration", "fairprice"};
  app.require_subcommand(1);
  Overrides o;

  app.add_option("--config", o.config, "key = value parameter file ('#' comments)");
  app.add_option("--out", o.out, "output file (default: $FAIRPRICE_SEED_DIR or . / <command>.csv)");
  app.add_flag("--plot", o.plot, "also write an SVG line chart next to the output");
  app.add_option("--horizon", o.horizon, "number of quarters to simulate")->check(CLI::PositiveNumber);
  app.add_option("--chi", o.chi_list, "acclimation degree, or a comma-separated list for phillips");
  app.add_option("--pi-annual", o.pi_annual, "steady inflation in annual percent");
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"epsilon", "--epsilon"}, {"theta", "--theta"}, {"gamma", "--gamma"}, {"eta", "--eta"},
      {"delta", "--delta"},     {"alpha", "--alpha"}, {"psi", "--psi"},     {"xi", "--xi"},
      {"mu_i", "--mu-i"},       {"mu_a", "--mu-a"},   {"nu", "--nu"},       {"epsilon_tb", "--epsilon-tb"}};
  for (const auto& [key, flag] : flags) {
    app.add_option(flag, o.params[key], "override parameter " + key);
  }

  auto* monopoly = app.add_subcommand("monopoly", "static monopoly markup and passthrough")->fallthrough();
  std::string regime = "subproportional";
  double cost = 1.0;
  std::optional<double> prior_cost;
  monopoly->add_option("--regime", regime, "no-fairness | observable-cost | rational-inference | subproportional")
      ->check(CLI::IsMember({"no-fairness", "observable-cost", "rational-inference", "subproportional"}));
  monopoly->add_option("--cost", cost, "marginal cost C")->check(CLI::PositiveNumber);
  monopoly->add_option("--prior-cost", prior_cost, "prior cost belief (default: acclimation point)");

  auto* steady = app.add_subcommand("steady", "steady state at a given inflation rate")->fallthrough();
  auto* phillips = app.add_subcommand("phillips", "long-run Phillips curves")->fallthrough();
  std::string pi_grid = "0:4:0.25";
  phillips->add_option("--pi-grid", pi_grid, "annual inflation grid lo:hi:step in percent");

  auto* irf = app.add_subcommand("irf", "impulse responses")->fallthrough();
  std::string shock = "monetary";
  std::string model = "fairness";
  double lambda1_scale = 1.0;
  irf->add_option("--shock", shock, "monetary | technology")->check(CLI::IsMember({"monetary", "technology"}));
  irf->add_option("--model", model, "fairness | textbook")->check(CLI::IsMember({"fairness", "textbook"}));
  irf->add_option("--inject-lambda1-scale", lambda1_scale, "test hook: scale the Phillips slope");

  auto* passthrough_cmd = app.add_subcommand("passthrough", "firm price path after a 1% cost increase")->fallthrough();
  std::string equation = "symmetric";
  passthrough_cmd->add_option("--equation", equation, "symmetric | idiosyncratic")
      ->check(CLI::IsMember({"symmetric", "idiosyncratic"}));

  auto* calibrate_cmd = app.add_subcommand("calibrate", "recover theta, gamma, epsilon from moments")->fallthrough();
  CalibrationTargets targets;
  calibrate_cmd->add_option("--target-markup", targets.markup, "steady markup target");
  calibrate_cmd->add_option("--target-beta0", targets.beta0, "impact passthrough target");
  calibrate_cmd->add_option("--target-beta8", targets.beta_2yr, "two-year passthrough target");

  auto* selfcheck = app.add_subcommand("selfcheck", "run the acceptance suite")->fallthrough();
  bool skip_calibration = false;
  selfcheck->add_flag("--skip-calibration", skip_calibration, "omit the calibration round trip");
  selfcheck->add_option("--inject-lambda1-scale", lambda1_scale, "test hook: scale the Phillips slope");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  std::string command_line;
  for (int i = 0; i < argc; ++i) command_line += (i ? " " : "") + std::string(argv[i]);

  try {
    ParameterSet params;
    if (o.config) params.apply_config(read_config_file(*o.config));
    for (const auto& [key, value] : o.params) {
      if (value) params.set(key, *value, "flag");
    }
    std::vector<double> chi_values;
    if (o.chi_list) {
      chi_values = parse_list(*o.chi_list, "--chi");
      params.set("chi", chi_values.front(), "flag");
    }
    const auto header = provenance_lines(command_line, params);

    if (*monopoly) {
      const double eps = params.get("epsilon"), theta = params.get("theta"), gamma = params.get("gamma");
      MonopolyScenario s = acclimated_scenario(eps, theta, gamma, cost);
      s.regime = regime_from_string(regime);
      if (prior_cost) s.belief = BeliefSpec(gamma, *prior_cost, eps);
      const MonopolyOutcome res = solve_markup(s);
      CsvTable t;
      t.columns = {"regime", "cost", "prior_cost", "markup", "price", "perceived_markup", "elasticity",
                   "passthrough"};
      t.rows.push_back({regime, format_number(cost), format_number(s.belief.prior_cost()),
                        format_number(res.markup), format_number(res.price),
                        format_number(res.perceived_markup), format_number(res.elasticity),
                        format_number(res.passthrough)});
      const std::string path = output_path(o, "monopoly", ".csv");
      write_table_file(path, header, t);
      out << "regime = " << regime << '\n';
      kv(out, "markup", res.markup);
      kv(out, "price", res.price);
      kv(out, "perceived_markup", res.perceived_markup);
      kv(out, "elasticity", res.elasticity);
      kv(out, "passthrough", res.passthrough);
      if (o.plot) {
        const auto grid = price_grid(s, 400);
        const auto scan = profit_scan(s, grid);
        std::vector<double> profit;
        for (const auto& p : scan) profit.push_back(p.profit);
        write_text(svg_path(path), svg_line_chart("Profit by price (" + regime + ")", "price", grid,
                                                  {{"profit", profit}}));
      }
      out << "wrote " << path << '\n';
      return kExitOk;
    }

    if (*steady) {
      const NKParams p = params.nk();
      const double pct = o.pi_annual.value_or(0.0);
      const SteadyState ss = steady_state(pct / 400.0, p, true);
      const std::vector<LongRunPoint> pts = long_run_curve({pct}, {p.chi}, p);
      const std::string path = output_path(o, "steady", ".csv");
      write_table_file(path, header, long_run_table(pts));
      kv(out, "pi_annual_pct", pct);
      kv(out, "chi", p.chi);
      kv(out, "markup", ss.markup_bar);
      kv(out, "perceived_markup", ss.m_p_bar);
      kv(out, "fairness_factor", ss.f_bar);
      kv(out, "phi", ss.phi_bar);
      kv(out, "employment_dev_pct", 100.0 * (ss.employment_rel - 1.0));
      kv(out, "employment_level_nu", *ss.employment_abs);
      kv(out, "phillips_slope_quarterly", phillips_slope_at_zero(p));
      out << "wrote " << path << '\n';
      return kExitOk;
    }

    if (*phillips) {
      const NKParams p = params.nk();
      if (chi_values.empty()) chi_values = {0.0, 0.3, 0.7, 1.0};
      const std::vector<double> grid = parse_grid(pi_grid);
      const auto pts = long_run_curve(grid, chi_values, p);
      const std::string path = output_path(o, "phillips", ".csv");
      write_table_file(path, header, long_run_table(pts));
      for (const auto& pt : pts) {
        if (!pt.admissible) err << "warning: inadmissible point pi = " << format_number(pt.pi_annual_pct)
                                << "%, chi = " << format_number(pt.chi) << ": " << pt.note << '\n';
      }
      for (double chi : chi_values) {
        NKParams pc = p;
        pc.chi = chi;
        const double gain = 100.0 * (steady_state(0.0025, pc).employment_rel - 1.0);
        out << "employment_gain_0_to_1pct[chi=" << format_number(chi) << "] = " << format_number(gain) << '\n';
      }
      if (o.plot) {
        std::vector<SvgSeries> series;
        for (double chi : chi_values) {
          SvgSeries s{"chi = " + format_number(chi), {}};
          for (const auto& pt : pts) {
            if (pt.chi == chi) s.y.push_back(pt.employment_dev_pct);
          }
          series.push_back(s);
        }
        write_text(svg_path(path), svg_line_chart("Long-run Phillips curves", "annual inflation (%)", grid, series));
      }
      out << "wrote " << path << '\n';
      return kExitOk;
    }

    if (*irf) {
      const NKParams p = params.nk();
      const ShockKind kind = shock_from_string(shock);
      const int horizon = o.horizon.value_or(kDefaultHorizon);
      const double zeta = kind == ShockKind::Monetary ? kMonetaryImpulse : kTechnologyImpulse;
      IRFSeries series;
      if (model == "fairness") {
        Lambdas s = lambdas(p);
        s.lambda1 *= lambda1_scale;
        series = fairness_irf(assemble_with_lambdas(p, kind, s), p, zeta, horizon);
      } else {
        series = textbook_irf(params.textbook(), kind, zeta, horizon);
      }
      const CsvTable table = irf_table(series);
      const std::string path = output_path(o, "irf_" + shock + "_" + model, ".csv");
      write_table_file(path, header, table);
      auto peak = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
      auto trough = [](const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); };
      out << "model = " << model << "\nshock = " << shock << '\n';
      kv(out, "peak_n_hat_pct", 100.0 * peak(series.n_hat));
      kv(out, "trough_n_hat_pct", 100.0 * trough(series.n_hat));
      kv(out, "peak_y_hat_pct", 100.0 * peak(series.y_hat));
      kv(out, "y_hat_0_pct", 100.0 * series.y_hat.front());
      kv(out, "peak_m_hat_pct", 100.0 * peak(series.m_hat));
      kv(out, "trough_m_hat_pct", 100.0 * trough(series.m_hat));
      kv(out, "pi_hat_0_annual_pp", 400.0 * series.pi_hat.front());
      kv(out, "i0_hat_0_annual_pp", 400.0 * series.i0_hat.front());
      if (o.plot) {
        std::vector<double> x(series.t.begin(), series.t.end());
        std::vector<SvgSeries> lines;
        for (const char* c : {"n_hat", "m_hat", "m_p_hat", "pi_hat_annual", "i_hat_annual"}) {
          lines.push_back({c, column_values(table, c)});
        }
        write_text(svg_path(path), svg_line_chart(model + " model, " + shock + " shock", "quarter", x, lines));
      }
      out << "wrote " << path << '\n';
      return kExitOk;
    }

    if (*passthrough_cmd) {
      FirmPathProblem prob;
      prob.params = params.firm();
      prob.horizon = o.horizon.value_or(200);
      prob.equation = equation == "symmetric" ? PricingEquation::Symmetric : PricingEquation::Idiosyncratic;
      const PassthroughPath path_res = simulate_passthrough(prob);
      const std::string path = output_path(o, "passthrough", ".csv");
      write_table_file(path, header, passthrough_table(path_res));
      out << "equation = " << equation << '\n';
      kv(out, "steady_markup", firm_steady(prob.params, 1.0).markup);
      for (int q : {0, 4, 8}) {
        if (q < prob.horizon) kv(out, "beta_" + std::to_string(q), path_res.beta[static_cast<std::size_t>(q)]);
      }
      kv(out, "beta_last", path_res.beta.back());
      kv(out, "newton_iterations", path_res.iterations);
      kv(out, "max_residual", path_res.residuals.worst());
      if (o.plot) {
        std::vector<double> x;
        for (std::size_t k = 0; k < path_res.beta.size(); ++k) x.push_back(static_cast<double>(k));
        write_text(svg_path(path), svg_line_chart("Cost passthrough", "quarter", x, {{"beta(t)", path_res.beta}}));
      }
      out << "wrote " << path << '\n';
      return kExitOk;
    }

    if (*calibrate_cmd) {
      const double delta = params.get("delta");
      CalibrationOptions opts;
      if (o.horizon) opts.horizon = *o.horizon;
      const std::string path = output_path(o, "calibration", ".txt");
      std::string prov;
      for (const auto& line : header) prov += line + '\n';
      try {
        const CalibrationResult r = calibrate(targets, delta, opts);
        const std::string report = calibration_report(targets, r, "ok", "");
        write_text(path, prov + report);
        out << report << "wrote " << path << '\n';
        return kExitOk;
      } catch (const SearchFailure& e) {
        const std::string report = calibration_report(targets, e.best(), "failed", e.boundary());
        write_text(path, prov + report);
        out << report;
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
      }
    }

    if (*selfcheck) {
      AcceptanceOptions opts;
      opts.lambda1_scale = lambda1_scale;
      opts.skip_calibration = skip_calibration;
      const auto t0 = std::chrono::steady_clock::now();
      const auto results = run_acceptance(opts);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      return print_acceptance(out, results, ms) ? kExitOk : kExitSelfcheckFailed;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParameter& e) {
    err << "error: invalid parameter: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DomainError& e) {
    err << "error: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace fairprice
