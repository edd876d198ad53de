#include "core/driver.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <iostream>

#include "json.hpp"

namespace esfv {

namespace {

using nlohmann::json;

json echo_json(const std::map<std::string, std::string>& kv) {
  json j = json::object();
  for (const auto& [key, value] : kv) {
    j[key] = value;
  }
  return j;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw error(errc::io, fmt::format("cannot create output directory '{}': {}", dir, ec.message()));
  }
}

void write_series_csv(const std::string& path, const std::vector<SeriesRow>& rows) {
  std::ofstream out(path);
  if (!out) {
    throw error(errc::io, fmt::format("cannot open '{}' for writing", path));
  }
  out << "time,mass,energy,entropy_total,rho_min,rho_max,p_min,"
         "entropy_residual_min,weak_bv_integrand,min_entropy_ratio\n";
  for (const SeriesRow& r : rows) {
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                       r.time, r.mass, r.energy, r.entropy, r.rho_min, r.rho_max, r.p_min,
                       r.entropy_residual_min, r.weak_bv_integrand, r.min_entropy_ratio);
  }
}

json chi_json(const ChiSpec& chi) {
  return {{"kind", chi.kind == ChiSpec::Kind::Cutoff ? "cutoff" : "capped"},
          {"param", chi.param}};
}

// Writes snap_<time>.dat and snap_<time>.csv and optionally retains fields.
class SnapshotWriter : public RunObserver {
 public:
  SnapshotWriter(std::string dir, std::vector<std::string> names,
                 std::vector<std::pair<double, Field>>* keep)
      : dir_(std::move(dir)), names_(std::move(names)), keep_(keep) {}

  void on_init(const SchemeConfig&, const State& s0) override {
    if (keep_ != nullptr) {
      keep_->emplace_back(s0.time, s0.field);
    }
  }

  void on_snapshot(const SchemeConfig&, const State& s) override {
    if (keep_ != nullptr) {
      keep_->emplace_back(s.time, s.field);
    }
    if (dir_.empty()) {
      return;
    }
    const std::string stem = fmt::format("{}/snap_{:.6f}", dir_, s.time);
    write_snapshot(stem + ".dat", s.field, s.time, names_);
    write_field_csv(stem + ".csv", s.field, names_);
  }

 private:
  std::string dir_;
  std::vector<std::string> names_;
  std::vector<std::pair<double, Field>>* keep_;
};

double weak_bv_total(const std::vector<SeriesRow>& rows) {
  double total = 0.0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    total += rows[k].weak_bv_integrand * (rows[k].time - rows[k - 1].time);
  }
  return total;
}

double order_log2(double coarse, double fine) {
  if (!(coarse > 0.0) || !(fine > 0.0)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::log2(coarse / fine);
}

}  // namespace

RunResult run_simulation(const RunConfig& config, const std::string& out_dir, bool verbose) {
  const CaseSpec spec = config.make_case_spec();

  RunResult result;
  DiagnosticsObserver diag(config.chi);
  SnapshotWriter snaps(out_dir, component_names(config.scheme.model), &result.snapshots);
  std::vector<RunObserver*> observers = {&diag, &snaps};

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
  }

  result.final_state =
      run(config.scheme, config.grid, spec.initial, observers, config.snapshots);
  result.series = diag.rows();
  result.chi = diag.chi();
  result.steps = static_cast<std::int64_t>(result.series.size()) - 1;
  result.drifts = conservation_ledger(result.series);
  result.weak_bv_statistic = weak_bv_total(result.series);

  result.entropy_residual_min = std::numeric_limits<double>::infinity();
  result.rho_min_run = std::numeric_limits<double>::infinity();
  result.p_min_run = std::numeric_limits<double>::infinity();
  result.max_min_entropy_ratio = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < result.series.size(); ++k) {
    const SeriesRow& r = result.series[k];
    result.rho_min_run = std::min(result.rho_min_run, r.rho_min);
    result.p_min_run = std::min(result.p_min_run, r.p_min);
    if (k > 0 && std::isfinite(r.entropy_residual_min)) {
      result.entropy_residual_min = std::min(result.entropy_residual_min, r.entropy_residual_min);
    }
    if (std::isfinite(r.min_entropy_ratio)) {
      result.max_min_entropy_ratio = std::max(result.max_min_entropy_ratio, r.min_entropy_ratio);
    }
  }
  result.initial_min_entropy_ratio = diag.initial_min_entropy_ratio();
  if (result.series.size() < 2) {
    result.entropy_residual_min = 0.0;
  }

  if (!out_dir.empty()) {
    write_series_csv(out_dir + "/series.csv", result.series);

    json summary;
    summary["config"] = echo_json(config.echo());
    summary["final_time"] = result.final_state.time;
    summary["steps"] = result.steps;
    summary["conservation"] = {{"mass_drift_max", result.drifts.mass_max},
                               {"energy_drift_max", result.drifts.energy_max}};
    summary["weak_bv_statistic"] = result.weak_bv_statistic;
    summary["entropy_residual_min"] = result.entropy_residual_min;
    summary["positivity"] = {{"rho_min", result.rho_min_run}, {"p_min", result.p_min_run}};
    if (config.scheme.model.system == System::Complete) {
      summary["min_entropy_ratio"] = {{"initial", result.initial_min_entropy_ratio},
                                      {"max", result.max_min_entropy_ratio},
                                      {"final", result.series.back().min_entropy_ratio}};
    }
    summary["chi"] = chi_json(result.chi);
    std::ofstream out(out_dir + "/summary.json");
    if (!out) {
      throw error(errc::io, fmt::format("cannot open '{}/summary.json' for writing", out_dir));
    }
    out << summary.dump(2) << "\n";
  }

  if (verbose) {
    std::cout << fmt::format(
        "run: case={} n={} dim={} steps={} t={:.6g} mass_drift={:.3e} energy_drift={:.3e}\n",
        config.case_name, config.grid.n, config.grid.dim, result.steps, result.final_state.time,
        result.drifts.mass_max, result.drifts.energy_max);
  }
  return result;
}

ConvergenceResult convergence_study(const StudyConfig& study, const std::string& out_dir,
                                    bool verbose) {
  const RunConfig& base = study.base;
  const CaseSpec spec = base.make_case_spec();

  std::string reference = study.reference;
  if (reference == "auto") {
    reference = spec.has_exact() ? "exact" : "self";
  }
  if (reference == "exact" && !spec.has_exact()) {
    throw error(errc::config,
                fmt::format("case '{}' has no exact evaluator for an exact-reference study",
                            base.case_name));
  }
  if (reference == "self") {
    const int finest = study.levels.back();
    for (int n : study.levels) {
      if (finest % n != 0) {
        throw error(errc::config, "self-reference study needs nested levels (finest % n == 0)");
      }
    }
  }

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
  }

  ConvergenceResult result;
  result.reference = reference;

  std::vector<RunResult> runs;
  for (int n : study.levels) {
    RunConfig level_cfg = base;
    level_cfg.grid.n = n;
    const std::string level_dir =
        out_dir.empty() ? std::string{} : fmt::format("{}/level_{}", out_dir, n);
    runs.push_back(run_simulation(level_cfg, level_dir, false));
  }

  const Field* finest_field = &runs.back().final_state.field;
  for (std::size_t i = 0; i < study.levels.size(); ++i) {
    ConvergenceLevel lvl;
    lvl.n = study.levels[i];
    lvl.steps = runs[i].steps;
    lvl.weak_bv = runs[i].weak_bv_statistic;
    if (reference == "exact") {
      RunConfig level_cfg = base;
      level_cfg.grid.n = lvl.n;
      const double t = runs[i].final_state.time;
      const Field ref = project(
          [&spec, t](const std::array<double, 3>& x, std::span<double> out) {
            spec.exact(t, x, out);
          },
          level_cfg.grid, base.scheme.model.components());
      lvl.norms = error_norms(runs[i].final_state.field, ref);
    } else if (i + 1 < study.levels.size()) {
      lvl.norms = error_norms(runs[i].final_state.field, restrict_to(*finest_field, lvl.n));
    }
    result.levels.push_back(std::move(lvl));
  }

  for (std::size_t i = 0; i + 1 < result.levels.size(); ++i) {
    const auto& a = result.levels[i];
    const auto& b = result.levels[i + 1];
    if (a.norms.has_value() && b.norms.has_value()) {
      result.l1_rho_orders.push_back(order_log2(a.norms->l1[0], b.norms->l1[0]));
    }
    result.weak_bv_orders.push_back(order_log2(a.weak_bv, b.weak_bv));
  }

  if (!out_dir.empty()) {
    json report;
    report["config"] = echo_json(study.echo());
    report["study"] = study.kind;
    report["reference"] = reference;
    json levels = json::array();
    const std::vector<std::string> names = component_names(base.scheme.model);
    for (const ConvergenceLevel& lvl : result.levels) {
      json j;
      j["n"] = lvl.n;
      j["steps"] = lvl.steps;
      j["weak_bv"] = lvl.weak_bv;
      if (lvl.norms.has_value()) {
        json l1 = json::object();
        json linf = json::object();
        for (std::size_t c = 0; c < names.size(); ++c) {
          l1[names[c]] = lvl.norms->l1[c];
          linf[names[c]] = lvl.norms->linf[c];
        }
        j["l1"] = l1;
        j["linf"] = linf;
      }
      levels.push_back(j);
    }
    report["levels"] = levels;
    report["orders"] = {{"l1_rho", result.l1_rho_orders}, {"weak_bv", result.weak_bv_orders}};
    std::ofstream out(out_dir + "/study_report.json");
    if (!out) {
      throw error(errc::io, "cannot write study_report.json");
    }
    out << report.dump(2) << "\n";
  }

  if (verbose) {
    std::cout << fmt::format("{} study: case={} reference={}\n", study.kind, base.case_name,
                             reference);
    std::cout << "    n      L1(rho)        Linf(rho)      weak_bv        steps\n";
    for (const ConvergenceLevel& lvl : result.levels) {
      if (lvl.norms.has_value()) {
        std::cout << fmt::format("  {:>4}   {:.6e}   {:.6e}   {:.6e}   {}\n", lvl.n,
                                 lvl.norms->l1[0], lvl.norms->linf[0], lvl.weak_bv, lvl.steps);
      } else {
        std::cout << fmt::format("  {:>4}   {:>12}   {:>12}   {:.6e}   {}\n", lvl.n, "(reference)",
                                 "", lvl.weak_bv, lvl.steps);
      }
    }
    auto print_orders = [](const std::string& label, const std::vector<double>& orders) {
      if (orders.empty()) {
        return;
      }
      std::cout << "  " << label << ":";
      for (double o : orders) {
        std::cout << fmt::format(" {:.3f}", o);
      }
      std::cout << "\n";
    };
    print_orders("observed L1(rho) orders", result.l1_rho_orders);
    print_orders("observed weak-BV orders", result.weak_bv_orders);
  }
  return result;
}

DmvResult dmv_study(const StudyConfig& study, const std::string& out_dir, bool verbose) {
  const RunConfig& base = study.base;
  if (!out_dir.empty()) {
    ensure_dir(out_dir);
  }

  const double h_max = 1.0 / study.levels.front();

  // Every window time becomes a scheduled snapshot so levels land exactly.
  std::vector<double> window_times;
  for (const StudyWindow& w : study.windows) {
    if (w.t < 0.0 || w.t > base.scheme.t_end) {
      throw error(errc::config,
                  fmt::format("window time {} outside the run horizon [0, {}]", w.t,
                              base.scheme.t_end));
    }
    window_times.push_back(w.t);
  }

  DmvResult result;
  result.levels = study.levels;

  std::vector<RunResult> runs;
  for (int n : study.levels) {
    RunConfig level_cfg = base;
    level_cfg.grid.n = n;
    level_cfg.snapshots.insert(level_cfg.snapshots.end(), window_times.begin(),
                               window_times.end());
    std::sort(level_cfg.snapshots.begin(), level_cfg.snapshots.end());
    level_cfg.snapshots.erase(
        std::unique(level_cfg.snapshots.begin(), level_cfg.snapshots.end()),
        level_cfg.snapshots.end());
    const std::string level_dir =
        out_dir.empty() ? std::string{} : fmt::format("{}/level_{}", out_dir, n);
    runs.push_back(run_simulation(level_cfg, level_dir, false));
    result.defects.push_back(
        dissipation_defect(base.scheme.model.system, runs.back().series));
  }

  for (const StudyWindow& w : study.windows) {
    DmvWindowReport report;
    report.window = w;
    report.radius_used = w.radius > 0.0 ? w.radius : 3.0 * h_max;

    SampleWindow window;
    window.t = w.t;
    window.x = w.x;
    window.radius = report.radius_used;

    std::vector<LevelSnapshot> snaps;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      // Nearest recorded snapshot to the window time.
      const auto& stored = runs[i].snapshots;
      std::size_t best = 0;
      for (std::size_t s = 1; s < stored.size(); ++s) {
        if (std::abs(stored[s].first - w.t) < std::abs(stored[best].first - w.t)) {
          best = s;
        }
      }
      snaps.push_back({study.levels[i], stored[best].first, &stored[best].second});
    }
    report.collapse = dirac_collapse_study(snaps, window);
    result.windows.push_back(std::move(report));
  }

  if (!out_dir.empty()) {
    json report;
    report["config"] = echo_json(study.echo());
    report["study"] = "dmv";
    report["levels"] = study.levels;
    json windows = json::array();
    for (const DmvWindowReport& w : result.windows) {
      json jw;
      jw["t"] = w.window.t;
      json x = json::array();
      for (int a = 0; a < base.grid.dim; ++a) {
        x.push_back(w.window.x[a]);
      }
      jw["x"] = x;
      jw["radius"] = w.radius_used;
      json levels = json::array();
      const std::vector<std::string> names = component_names(base.scheme.model);
      for (const CollapseLevel& lvl : w.collapse.levels) {
        json jl;
        jl["n"] = lvl.n;
        jl["snapshot_time"] = lvl.snapshot_time;
        jl["time_mismatch"] = lvl.time_mismatch;
        jl["atoms"] = lvl.atom_count;
        json moments = json::object();
        for (std::size_t c = 0; c < names.size(); ++c) {
          moments[names[c]] = lvl.first_moments[c];
        }
        jl["first_moments"] = moments;
        jl["oscillation"] = lvl.oscillation;
        levels.push_back(jl);
      }
      jw["levels"] = levels;
      jw["oscillation_decreasing"] = w.collapse.oscillation_decreasing;
      jw["rho_moment_diffs"] = w.collapse.rho_moment_diffs;
      jw["rho_moments_stabilizing"] = w.collapse.rho_moments_stabilizing;
      windows.push_back(jw);
    }
    report["windows"] = windows;
    json defects = json::array();
    for (std::size_t i = 0; i < result.defects.size(); ++i) {
      const DefectSeries& d = result.defects[i];
      json jd;
      jd["n"] = study.levels[i];
      jd["final"] = d.values.empty() ? 0.0 : d.values.back();
      jd["max"] = d.values.empty() ? 0.0
                                   : *std::max_element(d.values.begin(), d.values.end());
      defects.push_back(jd);
    }
    report["dissipation_defect"] = defects;
    std::ofstream out(out_dir + "/study_report.json");
    if (!out) {
      throw error(errc::io, "cannot write study_report.json");
    }
    out << report.dump(2) << "\n";
  }

  if (verbose) {
    std::cout << fmt::format("dmv study: case={} levels=", base.case_name);
    for (std::size_t i = 0; i < study.levels.size(); ++i) {
      std::cout << (i ? "," : "") << study.levels[i];
    }
    std::cout << "\n";
    for (const DmvWindowReport& w : result.windows) {
      std::cout << fmt::format("  window t={:.4g} x=({:.4g}", w.window.t, w.window.x[0]);
      for (int a = 1; a < base.grid.dim; ++a) {
        std::cout << fmt::format(",{:.4g}", w.window.x[a]);
      }
      std::cout << fmt::format(") r={:.4g}\n", w.radius_used);
      for (const CollapseLevel& lvl : w.collapse.levels) {
        std::cout << fmt::format("    n={:>4} atoms={:>5} <rho>={:.8g} oscillation={:.6e}\n",
                                 lvl.n, lvl.atom_count, lvl.first_moments[0], lvl.oscillation);
      }
      std::cout << fmt::format("    oscillation decreasing: {}; rho moments stabilizing: {}\n",
                               w.collapse.oscillation_decreasing ? "yes" : "no",
                               w.collapse.rho_moments_stabilizing ? "yes" : "no");
    }
  }
  return result;
}

std::vector<CheckResult> check_suite(const std::string& out_path, bool verbose) {
  const std::vector<CheckResult> results = run_check_suite();
  if (verbose) {
    for (const CheckResult& r : results) {
      std::cout << fmt::format("[{}] {} (worst {:.3e}, bound {:.3e})\n", r.pass ? "PASS" : "FAIL",
                               r.name, r.worst, r.bound);
      if (!r.pass && !r.detail.empty()) {
        std::cout << "       counterexample: " << r.detail << "\n";
      }
    }
  }
  if (!out_path.empty()) {
    json report = json::array();
    for (const CheckResult& r : results) {
      report.push_back({{"name", r.name},
                        {"pass", r.pass},
                        {"worst", r.worst},
                        {"bound", r.bound},
                        {"detail", r.detail}});
    }
    std::ofstream out(out_path);
    if (!out) {
      throw error(errc::io, fmt::format("cannot write '{}'", out_path));
    }
    out << report.dump(2) << "\n";
  }
  return results;
}

}  // namespace esfv
