// repeater: figure presets and parameter sweeps for the eight-atom
// entanglement-swapping protocol.
//
//   repeater list-presets
//   repeater scan --preset fig2a-symmetric --out c1.csv
//   repeater scan --config my.cfg
//   repeater oracle-report --config oracle.cfg --out deviation.csv
//
// Exit codes: 0 ok, 1 I/O or other error, 2 invalid config, 3 engine mismatch.

#include <CLI11.hpp>
#include <iostream>

#include "repeater/sweep.hpp"

namespace sw = repeater::sweep;

namespace {

constexpr int kExitError = 1;
constexpr int kExitConfigInvalid = 2;
constexpr int kExitEngineMismatch = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum repeater simulator: concurrence and success probability sweeps"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list-presets", "List figure presets");

  std::string preset, config, out;
  auto* scan = app.add_subcommand("scan", "Sweep a time axis and write CSV");
  auto* preset_opt = scan->add_option("--preset", preset, "Preset name (see list-presets)");
  auto* config_opt = scan->add_option("--config", config, "key = value config file")->check(CLI::ExistingFile);
  preset_opt->excludes(config_opt);
  scan->add_option("--out", out, "Output CSV path (default: stdout)");

  std::string oracle_config, oracle_out;
  auto* oracle = app.add_subcommand("oracle-report", "Compare effective and exact propagators");
  oracle->add_option("--config", oracle_config, "key = value config file")->required()->check(CLI::ExistingFile);
  oracle->add_option("--out", oracle_out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfigInvalid;
  }

  try {
    if (*list) {
      for (const auto& p : sw::presets()) std::cout << p.name << "\t" << p.description << "\n";
      return 0;
    }
    if (*scan) {
      if (preset.empty() && config.empty()) throw repeater::ConfigInvalid("scan needs --preset or --config");
      const sw::ScanConfig cfg = preset.empty() ? sw::load_scan_config(config) : sw::find_preset(preset).config;
      const sw::ScanTable table = sw::run_scan(cfg);
      if (out.empty()) {
        sw::write_csv(table, std::cout);
      } else {
        sw::emit_csv(table, out);
      }
      return 0;
    }
    if (*oracle) {
      const auto cfg = sw::load_oracle_config(oracle_config);
      sw::emit_oracle_csv(sw::run_oracle_report(cfg), oracle_out);
      return 0;
    }
  } catch (const repeater::ConfigInvalid& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigInvalid;
  } catch (const repeater::EngineMismatch& e) {
    std::cerr << "engine mismatch: " << e.what() << "\n";
    return kExitEngineMismatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
