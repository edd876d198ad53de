#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "core/diagnostics.hpp"
#include "core/scheme.hpp"

namespace esfv {

// Space-time sampling window: closed ball of radius `radius` (torus metric)
// around x, sampled from the snapshot nearest to t.
struct SampleWindow {
  double t = 0.0;
  std::array<double, 3> x = {0.0, 0.0, 0.0};
  double radius = 0.0;
};

// Weighted atoms in state space; weights are nonnegative and sum to one.
struct EmpiricalMeasure {
  int components = 0;
  std::vector<std::vector<double>> atoms;
  std::vector<double> weights;

  std::size_t size() const { return atoms.size(); }
};

// Distance on the unit torus.
double torus_distance(std::span<const double> a, std::span<const double> b, int dim);

// One equally weighted atom per cell whose center lies in the window.
// Raises errc::runtime when the window is empty.
EmpiricalMeasure collect(const Field& snapshot, const SampleWindow& window);

double moment(const EmpiricalMeasure& measure,
              const std::function<double(std::span<const double>)>& g);

// Shipped observables: rho, m1..m3, E, p, kinetic (|m|^2 / 2 rho), eta.
std::function<double(std::span<const double>)> moment_observable(const EulerModel& model,
                                                                 const std::string& name,
                                                                 const ChiSpec& chi);

// First moment of every state component.
std::vector<double> first_moments(const EmpiricalMeasure& measure);

// Trace of the per-component variance of the atoms: zero iff the measure is
// a Dirac; the finite-data proxy for non-Dirac (oscillation) structure.
double oscillation(const EmpiricalMeasure& measure);

struct DefectSeries {
  std::vector<double> times;
  std::vector<double> values;
};

// Energy lost between time 0 and tau at the measure level: E(0) - E(tau) for
// the barotropic system (nonnegative up to integrator tolerance),
// |E(0) - E(tau)| for the complete system (conserved discretely).
DefectSeries dissipation_defect(System system, std::span<const SeriesRow> rows);

struct CollapseLevel {
  int n = 0;
  double snapshot_time = 0.0;
  double time_mismatch = 0.0;
  std::size_t atom_count = 0;
  std::vector<double> first_moments;
  double oscillation = 0.0;
};

struct CollapseStudy {
  std::vector<CollapseLevel> levels;
  std::vector<double> rho_moment_diffs;  // |<rho>_{k+1} - <rho>_k| per consecutive pair
  bool oscillation_decreasing = false;
  bool rho_moments_stabilizing = false;  // consecutive diffs decreasing
};

struct LevelSnapshot {
  int n = 0;
  double time = 0.0;
  const Field* field = nullptr;
};

// Per-level moments and oscillation within one window plus the monotone
// verdicts; needs at least three refinement levels.
CollapseStudy dirac_collapse_study(std::span<const LevelSnapshot> levels,
                                   const SampleWindow& window);

}  // namespace esfv
