#include "core/dmv.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace esfv {

double torus_distance(std::span<const double> a, std::span<const double> b, int dim) {
  double d2 = 0.0;
  for (int i = 0; i < dim; ++i) {
    double d = a[i] - b[i];
    d -= std::round(d);
    d2 += d * d;
  }
  return std::sqrt(d2);
}

EmpiricalMeasure collect(const Field& snapshot, const SampleWindow& window) {
  const GridSpec& g = snapshot.grid;
  EmpiricalMeasure out;
  out.components = snapshot.components;
  const std::int64_t cells = g.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    const std::array<double, 3> c = g.center(k);
    if (torus_distance(c, window.x, g.dim) <= window.radius) {
      const auto v = snapshot.cell_values(k);
      out.atoms.emplace_back(v.begin(), v.end());
    }
  }
  if (out.atoms.empty()) {
    throw error(errc::runtime,
                fmt::format("empty sample window at x=({}, {}, {}) radius {}", window.x[0],
                            window.x[1], window.x[2], window.radius));
  }
  out.weights.assign(out.atoms.size(), 1.0 / static_cast<double>(out.atoms.size()));
  return out;
}

double moment(const EmpiricalMeasure& measure,
              const std::function<double(std::span<const double>)>& g) {
  double acc = 0.0;
  for (std::size_t i = 0; i < measure.atoms.size(); ++i) {
    acc += measure.weights[i] * g(measure.atoms[i]);
  }
  return acc;
}

std::function<double(std::span<const double>)> moment_observable(const EulerModel& model,
                                                                 const std::string& name,
                                                                 const ChiSpec& chi) {
  const int dim = model.dim;
  if (name == "rho") {
    return [](std::span<const double> u) { return u[0]; };
  }
  for (int i = 0; i < dim; ++i) {
    if (name == fmt::format("m{}", i + 1)) {
      return [i](std::span<const double> u) { return u[1 + i]; };
    }
  }
  if (name == "E" && model.system == System::Complete) {
    return [dim](std::span<const double> u) { return u[1 + dim]; };
  }
  if (name == "p") {
    return [model](std::span<const double> u) {
      return model.pressure_of(ConsState::from_cell(u, model.system, model.dim));
    };
  }
  if (name == "kinetic") {
    return [model](std::span<const double> u) {
      const ConsState s = ConsState::from_cell(u, model.system, model.dim);
      return 0.5 * s.momentum_sq(model.dim) / s.rho;
    };
  }
  if (name == "eta") {
    return [model, chi](std::span<const double> u) {
      return model.entropy_pair(ConsState::from_cell(u, model.system, model.dim), chi).eta;
    };
  }
  throw error(errc::config, fmt::format("unknown observable '{}'", name));
}

std::vector<double> first_moments(const EmpiricalMeasure& measure) {
  std::vector<double> out(measure.components, 0.0);
  for (std::size_t i = 0; i < measure.atoms.size(); ++i) {
    for (int c = 0; c < measure.components; ++c) {
      out[c] += measure.weights[i] * measure.atoms[i][c];
    }
  }
  return out;
}

double oscillation(const EmpiricalMeasure& measure) {
  const std::vector<double> mean = first_moments(measure);
  double trace = 0.0;
  for (std::size_t i = 0; i < measure.atoms.size(); ++i) {
    for (int c = 0; c < measure.components; ++c) {
      const double d = measure.atoms[i][c] - mean[c];
      trace += measure.weights[i] * d * d;
    }
  }
  return trace;
}

DefectSeries dissipation_defect(System system, std::span<const SeriesRow> rows) {
  DefectSeries out;
  if (rows.empty()) {
    return out;
  }
  const double e0 = rows.front().energy;
  out.times.reserve(rows.size());
  out.values.reserve(rows.size());
  for (const SeriesRow& r : rows) {
    out.times.push_back(r.time);
    const double d = e0 - r.energy;
    out.values.push_back(system == System::Barotropic ? d : std::abs(d));
  }
  return out;
}

CollapseStudy dirac_collapse_study(std::span<const LevelSnapshot> levels,
                                   const SampleWindow& window) {
  if (levels.size() < 3) {
    throw error(errc::config, "dirac collapse study needs at least three refinement levels");
  }
  CollapseStudy out;
  for (const LevelSnapshot& lvl : levels) {
    if (lvl.field == nullptr) {
      throw error(errc::runtime, fmt::format("missing snapshot for level n={}", lvl.n));
    }
    const EmpiricalMeasure m = collect(*lvl.field, window);
    CollapseLevel row;
    row.n = lvl.n;
    row.snapshot_time = lvl.time;
    row.time_mismatch = std::abs(lvl.time - window.t);
    row.atom_count = m.size();
    row.first_moments = first_moments(m);
    row.oscillation = oscillation(m);
    out.levels.push_back(std::move(row));
  }

  out.oscillation_decreasing = true;
  for (std::size_t k = 0; k + 1 < out.levels.size(); ++k) {
    if (!(out.levels[k + 1].oscillation < out.levels[k].oscillation)) {
      out.oscillation_decreasing = false;
    }
    out.rho_moment_diffs.push_back(
        std::abs(out.levels[k + 1].first_moments[0] - out.levels[k].first_moments[0]));
  }
  out.rho_moments_stabilizing = true;
  for (std::size_t k = 0; k + 1 < out.rho_moment_diffs.size(); ++k) {
    if (!(out.rho_moment_diffs[k + 1] < out.rho_moment_diffs[k])) {
      out.rho_moments_stabilizing = false;
    }
  }
  return out;
}

}  // namespace esfv
