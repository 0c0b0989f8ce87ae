#pragma once

// Parameter sweeps over the (1,8) observables, figure presets, flat
// key = value config files, and CSV output.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "repeater/oracle.hpp"
#include "repeater/protocol.hpp"

namespace repeater::sweep {

/// Largest closed-form vs pipeline difference tolerated during a scan.
inline constexpr double kEngineTolerance = 1e-8;

enum class TimeAxis { t, tau };

struct Grid {
  double start = 0.0;
  double stop = 20.0;
  int points = 1001;

  double at(int i) const;
};

struct ScanConfig {
  std::string name = "custom";
  Method method = Method::BSM;
  CaseLabel case_label{};
  BellTarget bell = BellTarget::BPrime;
  ProductOutcome qed_outcome = ProductOutcome::eg;
  double g2 = 1.0, g3 = 1.0, delta2 = 2.0, delta3 = 3.0;
  double cavity_g = 1.0;
  std::optional<double> cavity_delta;
  TimeAxis axis = TimeAxis::t;
  Grid grid{};
  double fixed = 0.0;  // the time that is not swept (t for a tau sweep, tau for a t sweep)

  TwoModeParams segment() const { return TwoModeParams(g2, g3, delta2, delta3); }
  /// Throws ConfigInvalid when the config cannot be scanned.
  void validate() const;
  SwapQuery query_at(double time) const;
  std::string selector() const;
};

struct ScanRow {
  double time = 0.0;
  double concurrence = 0.0;
  double probability = 0.0;
};

struct ScanTable {
  std::string case_name;
  std::string method;
  std::string outcome;
  std::vector<ScanRow> rows;
};

/// One grid point; both engines are evaluated and must agree within
/// kEngineTolerance (EngineMismatch otherwise). Zero-weight branches give
/// concurrence 0 and probability 0.
ScanRow evaluate_point(const ScanConfig& cfg, double time);

/// OpenMP-parallel over grid points.
ScanTable run_scan(const ScanConfig& cfg);
/// Serial reference for run_scan; identical output.
ScanTable run_scan_serial(const ScanConfig& cfg);

/// Header `time,concurrence,probability,case,method,outcome`, %.12g numbers, LF endings.
void write_csv(const ScanTable& table, std::ostream& out);
void emit_csv(const ScanTable& table, const std::string& path);
ScanTable read_csv(const std::string& path);

struct Preset {
  std::string name;
  std::string description;
  ScanConfig config;
};

const std::vector<Preset>& presets();
/// Throws ConfigInvalid for an unknown name.
const Preset& find_preset(const std::string& name);

ScanConfig parse_scan_config(std::istream& in);
ScanConfig load_scan_config(const std::string& path);

// ---------------------------------------------------------------- oracle report

struct OracleReportConfig {
  OracleParams params{};
  CavityKind kind = CavityKind::TwoMode;
  int cutoff = 2;
  Grid grid{0.0, 10.0, 201};

  void validate() const;
};

struct OracleReportRow {
  double time = 0.0;
  double deviation = 0.0;  // max-norm, global phase removed
  double leakage = 0.0;    // worst vacuum-sector leakage over the four basis inputs
};

OracleReportRow evaluate_oracle_point(const OracleReportConfig& cfg, double time);

std::vector<OracleReportRow> run_oracle_report(const OracleReportConfig& cfg);
std::vector<OracleReportRow> run_oracle_report_serial(const OracleReportConfig& cfg);

OracleReportConfig parse_oracle_config(std::istream& in);
OracleReportConfig load_oracle_config(const std::string& path);

void write_oracle_csv(const std::vector<OracleReportRow>& rows, std::ostream& out);
void emit_oracle_csv(const std::vector<OracleReportRow>& rows, const std::string& path);

}  // namespace repeater::sweep
