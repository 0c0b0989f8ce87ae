// Grid kernels. Each grid point is independent, so the parallel versions
// distribute points over OpenMP threads and write into preallocated slots;
// the serial versions are the reference the tests compare against.

#include <exception>

#include "repeater/sweep.hpp"

namespace repeater::sweep {

namespace {

template <typename Row, typename Eval>
std::vector<Row> parallel_grid(const Grid& grid, Eval eval) {
  const int n = grid.points;
  std::vector<Row> rows(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));

#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < n; ++i) {
    try {
      rows[static_cast<std::size_t>(i)] = eval(grid.at(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  // Report the lowest failing index, matching the serial order.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

template <typename Row, typename Eval>
std::vector<Row> serial_grid(const Grid& grid, Eval eval) {
  std::vector<Row> rows;
  rows.reserve(static_cast<std::size_t>(grid.points));
  for (int i = 0; i < grid.points; ++i) rows.push_back(eval(grid.at(i)));
  return rows;
}

ScanTable empty_table(const ScanConfig& cfg) {
  return ScanTable{to_string(cfg.case_label), to_string(cfg.method), cfg.selector(), {}};
}

}  // namespace

ScanTable run_scan(const ScanConfig& cfg) {
  cfg.validate();
  ScanTable t = empty_table(cfg);
  t.rows = parallel_grid<ScanRow>(cfg.grid, [&](double time) { return evaluate_point(cfg, time); });
  return t;
}

ScanTable run_scan_serial(const ScanConfig& cfg) {
  cfg.validate();
  ScanTable t = empty_table(cfg);
  t.rows = serial_grid<ScanRow>(cfg.grid, [&](double time) { return evaluate_point(cfg, time); });
  return t;
}

std::vector<OracleReportRow> run_oracle_report(const OracleReportConfig& cfg) {
  cfg.validate();
  return parallel_grid<OracleReportRow>(cfg.grid,
                                        [&](double time) { return evaluate_oracle_point(cfg, time); });
}

std::vector<OracleReportRow> run_oracle_report_serial(const OracleReportConfig& cfg) {
  cfg.validate();
  return serial_grid<OracleReportRow>(cfg.grid,
                                      [&](double time) { return evaluate_oracle_point(cfg, time); });
}

}  // namespace repeater::sweep
