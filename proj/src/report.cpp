#include "fairprice/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace fairprice {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string pct(double x) { return format_number(100.0 * x); }
std::string annual_pp(double x) { return format_number(400.0 * x); }

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ConfigError("cannot parse '" + text + "' as a number for " + what);
  }
  return value;
}

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
    }
    if (!out.emplace(key, value).second) {
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ParameterSet::ParameterSet() {
  const NKParams nk;
  const TextbookParams tb;
  const std::string d = "default";
  entries_ = {
      {"epsilon", {nk.epsilon, d}}, {"theta", {nk.theta, d}},   {"gamma", {nk.gamma, d}},
      {"eta", {nk.eta, d}},         {"delta", {nk.delta, d}},   {"alpha", {nk.alpha, d}},
      {"psi", {nk.psi, d}},         {"nu", {nk.nu, d}},         {"chi", {nk.chi, d}},
      {"mu_i", {nk.mu_i, d}},       {"mu_a", {nk.mu_a, d}},     {"xi", {tb.xi, d}},
      {"epsilon_tb", {tb.epsilon_tb, d}},
  };
}

const std::vector<std::string>& ParameterSet::known_keys() {
  static const std::vector<std::string> keys = {"epsilon", "theta", "gamma", "eta",  "delta",
                                                "alpha",   "psi",   "nu",    "chi",  "mu_i",
                                                "mu_a",    "xi",    "epsilon_tb"};
  return keys;
}

double ParameterSet::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("unknown parameter '" + key + "'");
  return it->second.value;
}

const std::string& ParameterSet::source(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("unknown parameter '" + key + "'");
  return it->second.source;
}

void ParameterSet::set(const std::string& key, double value, const std::string& source) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("unknown parameter '" + key + "'");
  if (!std::isfinite(value)) throw ConfigError("parameter '" + key + "' must be finite");
  it->second = {value, source};
}

void ParameterSet::apply_config(const std::map<std::string, std::string>& entries) {
  for (const auto& [key, value] : entries) set(key, parse_double(value, key), "config-file");
}

NKParams ParameterSet::nk() const {
  NKParams p;
  p.epsilon = get("epsilon");
  p.theta = get("theta");
  p.gamma = get("gamma");
  p.eta = get("eta");
  p.delta = get("delta");
  p.alpha = get("alpha");
  p.psi = get("psi");
  p.nu = get("nu");
  p.chi = get("chi");
  p.mu_i = get("mu_i");
  p.mu_a = get("mu_a");
  return p;
}

TextbookParams ParameterSet::textbook() const {
  TextbookParams tp;
  tp.epsilon_tb = get("epsilon_tb");
  tp.xi = get("xi");
  tp.shared = nk();
  return tp;
}

FirmParams ParameterSet::firm() const { return FirmParams::from(nk()); }

std::vector<std::string> provenance_lines(const std::string& command_line,
                                          const ParameterSet& params) {
  std::vector<std::string> lines;
  lines.push_back("# fairprice " + std::string(kVersion));
  lines.push_back("# command: " + command_line);
  for (const auto& key : ParameterSet::known_keys()) {
    lines.push_back("# param " + key + " = " + format_number(params.get(key)) + " (" +
                    params.source(key) + ")");
  }
  return lines;
}

void write_table(std::ostream& os, const std::vector<std::string>& header, const CsvTable& table) {
  for (const auto& line : header) os << line << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

void write_table_file(const std::string& path, const std::vector<std::string>& header,
                      const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_table(out, header, table);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

CsvTable irf_table(const IRFSeries& irf) {
  CsvTable t;
  t.columns = {"model", "t",     "i0_hat", "a_hat", "pi_hat_annual", "i_hat_annual",
               "m_p_hat", "m_hat", "n_hat",  "y_hat", "real_wage_hat"};
  for (int k = 0; k < irf.horizon(); ++k) {
    const auto u = static_cast<std::size_t>(k);
    t.rows.push_back({irf.model, std::to_string(irf.t[u]), annual_pp(irf.i0_hat[u]), pct(irf.a_hat[u]),
                      annual_pp(irf.pi_hat[u]), annual_pp(irf.i_hat[u]), pct(irf.m_p_hat[u]),
                      pct(irf.m_hat[u]), pct(irf.n_hat[u]), pct(irf.y_hat[u]),
                      pct(irf.real_wage_hat[u])});
  }
  return t;
}

CsvTable long_run_table(const std::vector<LongRunPoint>& points) {
  CsvTable t;
  t.columns = {"pi_annual_pct", "chi", "markup", "employment_dev_pct"};
  for (const auto& p : points) {
    t.rows.push_back({format_number(p.pi_annual_pct), format_number(p.chi), format_number(p.markup),
                      format_number(p.employment_dev_pct)});
  }
  return t;
}

CsvTable passthrough_table(const PassthroughPath& path) {
  CsvTable t;
  t.columns = {"t", "beta_t", "price_dev_pct", "markup", "perceived_markup"};
  for (std::size_t k = 0; k < path.beta.size(); ++k) {
    t.rows.push_back({std::to_string(k), format_number(path.beta[k]),
                      format_number(100.0 * (path.price[k] / path.base_price - 1.0)),
                      format_number(path.markup[k]), format_number(path.perceived_markup[k])});
  }
  return t;
}

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::vector<double>& x, const std::vector<SvgSeries>& series) {
  const double width = 640.0, height = 400.0, left = 60.0, right = 150.0, top = 40.0, bottom = 50.0;
  double xmin = x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
  double xmax = x.empty() ? 1.0 : *std::max_element(x.begin(), x.end());
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -ymin;
  for (const auto& s : series) {
    for (double v : s.y) {
      if (!std::isfinite(v)) continue;
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;
  if (ymax - ymin < 1e-12) ymin -= 0.5, ymax += 0.5;
  if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
  const double pw = width - left - right, ph = height - top - bottom;
  auto sx = [&](double v) { return left + (v - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double v) { return top + (ymax - v) / (ymax - ymin) * ph; };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\""
     << " font-size=\"15\">" << xml_escape(title) << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (ymin < 0.0 && ymax > 0.0) {
    os << "<line x1=\"" << left << "\" x2=\"" << left + pw << "\" y1=\"" << sy(0.0) << "\" y2=\""
       << sy(0.0) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double yv = ymin + (ymax - ymin) * i / 4.0;
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    os << "<text x=\"" << left - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\""
       << " font-family=\"sans-serif\" font-size=\"11\">" << format_number(std::round(yv * 1e4) / 1e4)
       << "</text>\n";
    os << "<text x=\"" << sx(xv) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\""
       << " font-family=\"sans-serif\" font-size=\"11\">" << format_number(std::round(xv * 100) / 100)
       << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\""
     << " font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(x_label) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = colors[k % 6];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
    const std::size_t n = std::min(x.size(), series[k].y.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(series[k].y[i])) continue;
      os << format_number(sx(x[i])) << ',' << format_number(sy(series[k].y[i])) << ' ';
    }
    os << "\"/>\n";
    const double ly = top + 14.0 + 18.0 * static_cast<double>(k);
    os << "<line x1=\"" << left + pw + 10 << "\" x2=\"" << left + pw + 30 << "\" y1=\"" << ly
       << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << left + pw + 34 << "\" y=\"" << ly + 4 << "\" font-family=\"sans-serif\""
       << " font-size=\"11\">" << xml_escape(series[k].label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string calibration_report(const CalibrationTargets& targets, const CalibrationResult& r,
                               const std::string& status, const std::string& boundary) {
  std::ostringstream os;
  os << "status = " << status << '\n';
  if (!boundary.empty()) os << "boundary = " << boundary << '\n';
  os << "target_markup = " << format_number(targets.markup) << '\n';
  os << "target_beta0 = " << format_number(targets.beta0) << '\n';
  os << "target_beta_" << targets.quarters << " = " << format_number(targets.beta_2yr) << '\n';
  os << "theta = " << format_number(r.theta) << '\n';
  os << "gamma = " << format_number(r.gamma) << '\n';
  os << "epsilon = " << format_number(r.epsilon) << '\n';
  os << "markup = " << format_number(r.markup) << '\n';
  os << "beta0 = " << format_number(r.beta0) << '\n';
  os << "beta_" << targets.quarters << " = " << format_number(r.beta_2yr) << '\n';
  os << "evaluations = " << r.evaluations << '\n';
  return os.str();
}

}  // namespace fairprice
