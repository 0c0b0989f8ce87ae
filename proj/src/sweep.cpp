#include "repeater/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace repeater::sweep {

namespace {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigInvalid("'" + key + "': not a number: '" + value + "'");
  }
  if (used != value.size() || !std::isfinite(x)) {
    throw ConfigInvalid("'" + key + "': not a finite number: '" + value + "'");
  }
  return x;
}

int parse_int(const std::string& key, const std::string& value) {
  const double x = parse_number(key, value);
  if (x != std::floor(x) || std::abs(x) > 1e9) throw ConfigInvalid("'" + key + "': expected an integer");
  return static_cast<int>(x);
}

/// Ordered `key = value` pairs; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_key_values(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigInvalid("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigInvalid("line " + std::to_string(lineno) + ": empty key or value");
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

ScanConfig bsm_preset(std::string name, BellTarget bell, double g3, double delta3) {
  ScanConfig c;
  c.name = std::move(name);
  c.method = Method::BSM;
  c.case_label = {Segment::Psi, Segment::Psi};
  c.bell = bell;
  c.g2 = 1.0;
  c.g3 = g3;
  c.delta2 = 2.0;
  c.delta3 = delta3;
  c.axis = TimeAxis::t;
  c.grid = {0.0, 20.0, 1001};
  return c;
}

ScanConfig qed_preset(std::string name, CaseLabel which, double g3, double delta3, double gt) {
  ScanConfig c;
  c.name = std::move(name);
  c.method = Method::QED;
  c.case_label = which;
  c.qed_outcome = ProductOutcome::eg;
  c.g2 = 1.0;
  c.g3 = g3;
  c.delta2 = 2.0;
  c.delta3 = delta3;
  c.cavity_g = 1.0;
  c.cavity_delta = 2.0;
  c.axis = TimeAxis::tau;
  c.fixed = gt;
  c.grid = {gt, gt + 20.0, 1001};
  return c;
}

std::vector<Preset> build_presets() {
  std::vector<Preset> p;
  const auto fmt = [](double x) { return format_number(x); };

  for (auto [panel, bell, what] : {std::tuple{"2a", BellTarget::BPrime, "concurrence C1"},
                                   std::tuple{"2b", BellTarget::B, "success probability S_B"}}) {
    for (auto [tag, g3] : {std::pair{"symmetric", 1.0}, std::pair{"asymmetric", 3.0}}) {
      std::string name = std::string("fig") + panel + "-" + tag;
      p.push_back({name, std::string(what) + ", g2=1, g3=" + fmt(g3) + ", Delta2=2, Delta3=3 (BSM)",
                   bsm_preset(name, bell, g3, 3.0)});
    }
  }
  for (auto [panel, bell, what] : {std::tuple{"3a", BellTarget::BPrime, "concurrence C1"},
                                   std::tuple{"3b", BellTarget::B, "success probability S_B"}}) {
    for (double d3 : {3.0, 10.0}) {
      std::string name = std::string("fig") + panel + "-delta3-" + fmt(d3);
      p.push_back({name, std::string(what) + ", g2=1, g3=3, Delta2=2, Delta3=" + fmt(d3) + " (BSM)",
                   bsm_preset(name, bell, 3.0, d3)});
    }
  }

  struct QedPanel {
    const char* suffix;
    CaseLabel which;
    const char* what;
  };
  const QedPanel panels[] = {
      {"a", {Segment::Psi, Segment::Psi}, "C'1 = C''4"},
      {"b", {Segment::PsiPrime, Segment::PsiPrime}, "C'4 = C''1"},
      {"c", {Segment::Psi, Segment::PsiPrime}, "C'2 = C''2 = C'3 = C''3"},
  };
  for (const auto& panel : panels) {
    for (double d3 : {3.0, 20.0}) {
      std::string name = std::string("fig4") + panel.suffix + "-delta3-" + fmt(d3);
      p.push_back({name,
                   std::string(panel.what) + " vs g*tau, delta=Delta2=2, g2=1, g3=5, Delta3=" + fmt(d3) +
                       ", gt=10 (QED)",
                   qed_preset(name, panel.which, 5.0, d3, 10.0)});
    }
  }
  for (const auto& panel : panels) {
    for (double gt : {2.0, 10.0}) {
      std::string name = std::string("fig5") + panel.suffix + "-gt" + fmt(gt);
      p.push_back({name,
                   std::string(panel.what) + " vs g*tau, delta=Delta2=2, Delta3=3, g2=1, g3=5, gt=" + fmt(gt) +
                       " (QED)",
                   qed_preset(name, panel.which, 5.0, 3.0, gt)});
    }
  }
  for (const auto& panel : panels) {
    for (double g3 : {1.0, 5.0}) {
      std::string name = std::string("fig6") + panel.suffix + "-g3-" + fmt(g3);
      p.push_back({name,
                   std::string(panel.what) + " vs g*tau, delta=Delta2=2, Delta3=10, g2=1, g3=" + fmt(g3) +
                       ", gt=10 (QED)",
                   qed_preset(name, panel.which, g3, 10.0, 10.0)});
    }
  }
  return p;
}

bool close(double a, double b) { return std::abs(a - b) <= kEngineTolerance; }

}  // namespace

double Grid::at(int i) const {
  if (i == points - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
}

// ------------------------------------------------------------------ ScanConfig

void ScanConfig::validate() const {
  if (grid.points < 2) throw ConfigInvalid("grid needs at least 2 points");
  if (!std::isfinite(grid.start) || !std::isfinite(grid.stop) || !(grid.start < grid.stop)) {
    throw ConfigInvalid("grid requires start < stop");
  }
  (void)segment();  // validates couplings and detunings
  if (method == Method::BSM) {
    if (axis != TimeAxis::t) throw ConfigInvalid("BSM scans sweep t only");
    if (grid.start < 0.0) throw ConfigInvalid("t must be >= 0");
    return;
  }
  if (!cavity_delta) throw ConfigInvalid("QED scans require cavity_delta");
  (void)SingleModeParams(cavity_g, *cavity_delta);
  if (qed_outcome != ProductOutcome::eg && qed_outcome != ProductOutcome::ge) {
    throw ConfigInvalid("QED scans report the 'eg' or 'ge' reading");
  }
  if (!std::isfinite(fixed)) throw ConfigInvalid("fixed time must be finite");
  if (axis == TimeAxis::tau) {
    if (fixed < 0.0) throw ConfigInvalid("t must be >= 0");
    if (grid.start < fixed) throw ConfigInvalid("QED requires tau >= t over the whole grid");
  } else {
    if (grid.start < 0.0) throw ConfigInvalid("t must be >= 0");
    if (grid.stop > fixed) throw ConfigInvalid("QED requires tau >= t over the whole grid");
  }
}

SwapQuery ScanConfig::query_at(double time) const {
  SwapQuery q{.case_label = case_label,
              .method = method,
              .bell = bell,
              .qed_outcome = qed_outcome,
              .segment = segment(),
              .cavity = std::nullopt,
              .t = time,
              .tau = 0.0};
  if (method == Method::QED) {
    q.cavity = SingleModeParams(cavity_g, *cavity_delta);
    if (axis == TimeAxis::tau) {
      q.t = fixed;
      q.tau = time;
    } else {
      q.tau = fixed;
    }
  }
  return q;
}

std::string ScanConfig::selector() const {
  return method == Method::BSM ? to_string(bell) : to_string(qed_outcome);
}

ScanRow evaluate_point(const ScanConfig& cfg, double time) {
  const SwapQuery q = cfg.query_at(time);

  std::optional<Observables> closed;
  std::optional<Observables> pipeline;
  try {
    closed = closed_form_observables(q);
  } catch (const DegenerateFormulaPoint&) {
  }
  try {
    pipeline = pipeline_observables(q);
  } catch (const ZeroProbabilityBranch&) {
  }

  const auto mismatch = [&](const std::string& what) {
    return EngineMismatch(cfg.name + ": engines disagree on " + what + " at time " + format_number(time));
  };
  if (closed && pipeline) {
    if (!close(closed->concurrence, pipeline->concurrence)) throw mismatch("concurrence");
    if (!close(closed->probability, pipeline->probability)) throw mismatch("probability");
    return {time, closed->concurrence, closed->probability};
  }
  if (closed && closed->probability > kEngineTolerance) throw mismatch("branch existence");
  if (pipeline && pipeline->probability > kEngineTolerance) throw mismatch("branch existence");
  return {time, 0.0, 0.0};
}

// ------------------------------------------------------------------------ CSV

void write_csv(const ScanTable& table, std::ostream& out) {
  out << "time,concurrence,probability,case,method,outcome\n";
  for (const auto& r : table.rows) {
    out << format_number(r.time) << ',' << format_number(r.concurrence) << ','
        << format_number(r.probability) << ',' << table.case_name << ',' << table.method << ','
        << table.outcome << '\n';
  }
}

void emit_csv(const ScanTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_csv(table, out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

ScanTable read_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line) || line != "time,concurrence,probability,case,method,outcome") {
    throw IoError("'" + path + "': missing or unexpected CSV header");
  }
  ScanTable t;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 6) throw IoError("'" + path + "': malformed row '" + line + "'");
    try {
      t.rows.push_back({std::stod(f[0]), std::stod(f[1]), std::stod(f[2])});
    } catch (const std::exception&) {
      throw IoError("'" + path + "': non-numeric field in '" + line + "'");
    }
    t.case_name = f[3];
    t.method = f[4];
    t.outcome = f[5];
  }
  return t;
}

// -------------------------------------------------------------------- presets

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build_presets();
  return all;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p;
  throw ConfigInvalid("unknown preset '" + name + "' (see list-presets)");
}

// ----------------------------------------------------------------- config I/O

ScanConfig parse_scan_config(std::istream& in) {
  const auto entries = read_key_values(in);
  ScanConfig cfg;
  // A preset, if given, is the base that later keys override.
  for (const auto& [k, v] : entries)
    if (k == "preset") cfg = find_preset(v).config;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"preset", [](auto&, auto&) {}},
      {"name", [&](auto&, auto& v) { cfg.name = v; }},
      {"method", [&](auto&, auto& v) { cfg.method = parse_method(v); }},
      {"case", [&](auto&, auto& v) { cfg.case_label = parse_case(v); }},
      {"bell", [&](auto&, auto& v) { cfg.bell = parse_bell(v); }},
      {"outcome", [&](auto&, auto& v) { cfg.qed_outcome = parse_product_outcome(v); }},
      {"g2", [&](auto& k, auto& v) { cfg.g2 = parse_number(k, v); }},
      {"g3", [&](auto& k, auto& v) { cfg.g3 = parse_number(k, v); }},
      {"delta2", [&](auto& k, auto& v) { cfg.delta2 = parse_number(k, v); }},
      {"delta3", [&](auto& k, auto& v) { cfg.delta3 = parse_number(k, v); }},
      {"cavity_g", [&](auto& k, auto& v) { cfg.cavity_g = parse_number(k, v); }},
      {"cavity_delta", [&](auto& k, auto& v) { cfg.cavity_delta = parse_number(k, v); }},
      {"axis",
       [&](auto&, auto& v) {
         if (v == "t") cfg.axis = TimeAxis::t;
         else if (v == "tau") cfg.axis = TimeAxis::tau;
         else throw ConfigInvalid("axis must be 't' or 'tau'");
       }},
      {"start", [&](auto& k, auto& v) { cfg.grid.start = parse_number(k, v); }},
      {"stop", [&](auto& k, auto& v) { cfg.grid.stop = parse_number(k, v); }},
      {"points", [&](auto& k, auto& v) { cfg.grid.points = parse_int(k, v); }},
      {"fixed", [&](auto& k, auto& v) { cfg.fixed = parse_number(k, v); }},
  };
  for (const auto& [k, v] : entries) {
    auto it = setters.find(k);
    if (it == setters.end()) throw ConfigInvalid("unknown key '" + k + "'");
    it->second(k, v);
  }
  cfg.validate();
  return cfg;
}

ScanConfig load_scan_config(const std::string& path) {
  std::ifstream in = open_input(path);
  return parse_scan_config(in);
}

// ---------------------------------------------------------------- oracle report

void OracleReportConfig::validate() const {
  if (grid.points < 2) throw ConfigInvalid("grid needs at least 2 points");
  if (!(grid.start < grid.stop) || grid.start < 0.0) throw ConfigInvalid("grid requires 0 <= start < stop");
  if (cutoff < 0) throw ConfigInvalid("cutoff must be >= 0");
  const FullSystemBasis b{kind, cutoff, cutoff};
  if (b.dimension() > 64) throw ConfigInvalid("cutoff too large (dimension > 64)");
  if (params.g_first < 0.0 || params.g_second < 0.0) throw ConfigInvalid("couplings must be >= 0");
  const bool decoupled = params.g_first == 0.0 && params.g_second == 0.0;
  if (!decoupled) {
    if (kind == CavityKind::TwoMode) (void)params.two_mode();
    else (void)params.single_mode();
  }
}

OracleReportRow evaluate_oracle_point(const OracleReportConfig& cfg, double time) {
  const FullSystemBasis basis{cfg.kind, cfg.cutoff, cfg.cutoff};
  const auto reduced = oracle_reduced_propagator(cfg.params, basis, time);
  const bool decoupled = cfg.params.g_first == 0.0 && cfg.params.g_second == 0.0;
  const ComplexMatrix effective =
      decoupled ? ComplexMatrix::identity(4) : effective_counterpart(cfg.params, cfg.kind, time);
  double leak = 0.0;
  for (double l : reduced.leakage) leak = std::max(leak, l);
  return {time, propagator_deviation(effective, reduced.u), leak};
}

OracleReportConfig parse_oracle_config(std::istream& in) {
  OracleReportConfig cfg;
  auto& p = cfg.params;
  for (const auto& [k, v] : read_key_values(in)) {
    if (k == "kind") {
      if (v == "two-mode") cfg.kind = CavityKind::TwoMode;
      else if (v == "single-mode") cfg.kind = CavityKind::SingleMode;
      else throw ConfigInvalid("kind must be 'two-mode' or 'single-mode'");
    } else if (k == "omega") {
      p.omega = parse_number(k, v);
    } else if (k == "omega_prime") {
      p.omega_prime = parse_number(k, v);
    } else if (k == "omega2" || k == "omega4" || k == "omega_first") {
      p.omega_first = parse_number(k, v);
    } else if (k == "omega3" || k == "omega5" || k == "omega_second") {
      p.omega_second = parse_number(k, v);
    } else if (k == "g2" || k == "g_first") {
      p.g_first = parse_number(k, v);
    } else if (k == "g3" || k == "g_second") {
      p.g_second = parse_number(k, v);
    } else if (k == "g") {
      p.g_first = p.g_second = parse_number(k, v);
    } else if (k == "cutoff") {
      cfg.cutoff = parse_int(k, v);
    } else if (k == "start") {
      cfg.grid.start = parse_number(k, v);
    } else if (k == "stop") {
      cfg.grid.stop = parse_number(k, v);
    } else if (k == "points") {
      cfg.grid.points = parse_int(k, v);
    } else {
      throw ConfigInvalid("unknown key '" + k + "'");
    }
  }
  cfg.validate();
  return cfg;
}

OracleReportConfig load_oracle_config(const std::string& path) {
  std::ifstream in = open_input(path);
  return parse_oracle_config(in);
}

void write_oracle_csv(const std::vector<OracleReportRow>& rows, std::ostream& out) {
  out << "time,deviation,leakage\n";
  for (const auto& r : rows) {
    out << format_number(r.time) << ',' << format_number(r.deviation) << ',' << format_number(r.leakage)
        << '\n';
  }
}

void emit_oracle_csv(const std::vector<OracleReportRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_oracle_csv(rows, out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace repeater::sweep
