#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairprice/calibration.hpp"
#include "fairprice/nk_linear.hpp"
#include "fairprice/nk_steady.hpp"
#include "fairprice/textbook_nk.hpp"

namespace fairprice {

inline constexpr const char* kVersion = "1.0.0";

/// General-format rendering with 12 significant digits, a
/// '.' decimal separator, independent of the process locale.
std::string format_number(double x);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `key = value` lines; '#' starts a comment. Throws ConfigError on
/// malformed lines or repeated keys.
std::map<std::string, std::string> parse_config(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Numeric run parameters with the origin of each value.
class ParameterSet {
 public:
  ParameterSet();

  static const std::vector<std::string>& known_keys();

  double get(const std::string& key) const;
  const std::string& source(const std::string& key) const;
  /// Throws ConfigError for keys not in known_keys().
  void set(const std::string& key, double value, const std::string& source);
  void apply_config(const std::map<std::string, std::string>& entries);

  NKParams nk() const;
  TextbookParams textbook() const;
  FirmParams firm() const;

 private:
  struct Entry {
    double value;
    std::string source;
  };
  std::map<std::string, Entry> entries_;
};

double parse_double(const std::string& text, const std::string& what);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// '#'-prefixed lines: command line, every parameter with its source, version.
std::vector<std::string> provenance_lines(const std::string& command_line,
                                          const ParameterSet& params);

void write_table(std::ostream& os, const std::vector<std::string>& header, const CsvTable& table);
void write_table_file(const std::string& path, const std::vector<std::string>& header,
                      const CsvTable& table);

/// Rates annualized (×4) and expressed in percentage points; other series in
/// percent deviations.
CsvTable irf_table(const IRFSeries& irf);
CsvTable long_run_table(const std::vector<LongRunPoint>& points);
CsvTable passthrough_table(const PassthroughPath& path);

struct SvgSeries {
  std::string label;
  std::vector<double> y;
};

/// Minimal self-contained line chart sharing one x axis.
std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::vector<double>& x, const std::vector<SvgSeries>& series);

std::string calibration_report(const CalibrationTargets& targets, const CalibrationResult& result,
                               const std::string& status, const std::string& boundary);

}  // namespace fairprice
