#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core/checks.hpp"
#include "core/config.hpp"
#include "core/diagnostics.hpp"
#include "core/dmv.hpp"
#include "core/snapshot.hpp"

namespace esfv {

struct RunResult {
  State final_state;
  std::vector<SeriesRow> series;
  ChiSpec chi;
  ConservationDrifts drifts;
  double weak_bv_statistic = 0.0;
  double entropy_residual_min = 0.0;  // min over all steps and cells
  double initial_min_entropy_ratio = 0.0;
  double max_min_entropy_ratio = 0.0;
  double rho_min_run = 0.0;
  double p_min_run = 0.0;
  std::int64_t steps = 0;
  std::vector<std::pair<double, Field>> snapshots;
};

// Runs one simulation with the diagnostics observer attached. When `out_dir`
// is nonempty, writes series.csv, summary.json and snap_<time>.dat/.csv
// under it.
RunResult run_simulation(const RunConfig& config, const std::string& out_dir, bool verbose);

struct ConvergenceLevel {
  int n = 0;
  std::int64_t steps = 0;
  double weak_bv = 0.0;
  std::optional<Norms> norms;  // absent for the reference level of a self study
};

struct ConvergenceResult {
  std::string reference;  // exact | self
  std::vector<ConvergenceLevel> levels;
  std::vector<double> l1_rho_orders;
  std::vector<double> weak_bv_orders;
};

ConvergenceResult convergence_study(const StudyConfig& study, const std::string& out_dir,
                                    bool verbose);

struct DmvWindowReport {
  StudyWindow window;
  double radius_used = 0.0;
  CollapseStudy collapse;
};

struct DmvResult {
  std::vector<int> levels;
  std::vector<DmvWindowReport> windows;
  std::vector<DefectSeries> defects;  // one per level
};

DmvResult dmv_study(const StudyConfig& study, const std::string& out_dir, bool verbose);

// Property suite with one printed pass/fail line per property when verbose;
// writes a JSON report when `out_path` is nonempty.
std::vector<CheckResult> check_suite(const std::string& out_path, bool verbose);

}  // namespace esfv
