// Serial reference vs OpenMP kernels for figure scans and the oracle report.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "repeater/sweep.hpp"

namespace sw = repeater::sweep;

namespace {

const sw::ScanConfig& bsm_config() { return sw::find_preset("fig3a-delta3-3").config; }
const sw::ScanConfig& qed_config() { return sw::find_preset("fig4a-delta3-20").config; }

sw::OracleReportConfig oracle_config() {
  sw::OracleReportConfig cfg;
  cfg.params = {5.0, 5.0, 60.0, 60.0, 1.0, 1.0};
  return cfg;
}

void BM_ScanBsmSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sw::run_scan_serial(bsm_config()));
}

void BM_ScanBsmParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sw::run_scan(bsm_config()));
}

void BM_ScanQedSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sw::run_scan_serial(qed_config()));
}

void BM_ScanQedParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sw::run_scan(qed_config()));
}

void BM_OracleSerial(benchmark::State& state) {
  const auto cfg = oracle_config();
  for (auto _ : state) benchmark::DoNotOptimize(sw::run_oracle_report_serial(cfg));
}

void BM_OracleParallel(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const auto cfg = oracle_config();
  for (auto _ : state) benchmark::DoNotOptimize(sw::run_oracle_report(cfg));
}

}  // namespace

BENCHMARK(BM_ScanBsmSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanBsmParallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScanQedSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanQedParallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
