#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/scheme.hpp"

namespace esfv {

// Coefficient C in the fully discrete entropy-residual tolerance
// tol(dt, h) = C dt max(1, |eta|_max) / h. The semi-discrete inequality is
// exact; the tolerance absorbs the explicit-time-stepping undershoot.
constexpr double kResidualTolCoeff = 10.0;

// Renormalization defaults derived from initial data: cutoff at the initial
// minimum of the specific entropy (so eta(0) = 0 cell-by-cell), cap one unit
// above the initial maximum.
ChiSpec default_cutoff_chi(const EulerModel& model, const Field& initial);
ChiSpec default_capped_chi(const EulerModel& model, const Field& initial);

// Per-cell entropy-inequality residual over one recorded step,
//   r_K = [eta(U_K(t+dt)) - eta(U_K(t))]/dt + div_h Q |_t,
// oriented so that the certified property is r >= -tol for both systems
// (the barotropic energy entropy satisfies the reversed inequality and is
// negated here).
Field entropy_residual(const SchemeConfig& config, const ChiSpec& chi, const State& before,
                       const State& after, double dt);

double entropy_residual_tol(const SchemeConfig& config, const ChiSpec& chi, const State& before,
                            double dt);

// h^dim sum over faces of lambda_sigma |[[U]]|_1 for the configured flux.
double weak_bv_integrand(const SchemeConfig& config, const Field& field);

// Midpoint-in-time quadrature of the weak BV integrand over a trajectory.
double weak_bv_statistic(const SchemeConfig& config, std::span<const State> trajectory);

// max_K rho_K / theta_K^{1/(gamma-1)}; complete system only. The monitored
// property is ratio(t) <= ratio(0) (1 + tol).
double min_entropy_ratio(const EulerModel& model, const Field& field);

struct PositivityExtrema {
  double rho_min = 0.0;
  double rho_max = 0.0;
  double p_min = 0.0;
  double e_int_min = 0.0;  // complete system; NaN otherwise
  double E_min = 0.0;      // complete system; NaN otherwise
};

PositivityExtrema positivity_monitor(const EulerModel& model, const Field& field);

// Smooth space-time test function, periodic in x and vanishing at t = T.
struct TestFunction {
  std::string name;
  double t_final = 1.0;
  bool nonnegative = false;
  std::function<double(double, const std::array<double, 3>&)> phi;
  std::function<double(double, const std::array<double, 3>&)> dphi_dt;
  std::function<void(double, const std::array<double, 3>&, std::span<double>)> grad;
};

// Three canonical instances per dimension, shipped for reproducibility.
std::vector<TestFunction> shipped_test_functions(int dim, double t_final);

enum class WeakForm { Continuity, Momentum, Entropy };

// Weak-form consistency residual of the recorded trajectory against one test
// function, trapezoidal in time. Continuity/momentum return |LHS - RHS| of
// the weak identity; the entropy variant returns the signed defect, oriented
// so the inequality-compatible sign is nonnegative.
double consistency_residual(const SchemeConfig& config, const ChiSpec& chi,
                            std::span<const State> trajectory, const TestFunction& test,
                            WeakForm which, int momentum_axis = 0);

struct Norms {
  std::vector<double> l1;
  std::vector<double> linf;
};

// Component-wise L1 (h^dim-weighted) and Linf distance between two fields on
// the same grid.
Norms error_norms(const Field& a, const Field& b);

// One realized row of the diagnostics time series. Columns that do not apply
// (first row residual/integrand, barotropic ratio) are NaN.
struct SeriesRow {
  double time = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  double p_min = 0.0;
  double entropy_residual_min = 0.0;
  double weak_bv_integrand = 0.0;
  double min_entropy_ratio = 0.0;
};

struct ConservationDrifts {
  std::vector<double> mass;
  std::vector<double> energy;
  double mass_max = 0.0;
  double energy_max = 0.0;
};

// Relative drifts |Q(t_k) - Q(0)| / max(|Q(0)|, eps) of the recorded totals.
ConservationDrifts conservation_ledger(std::span<const SeriesRow> rows);

// Records the scalar time series every step; chi defaults are resolved from
// the initial data when not supplied.
class DiagnosticsObserver : public RunObserver {
 public:
  explicit DiagnosticsObserver(std::optional<ChiSpec> chi = std::nullopt) : chi_(chi) {}

  void on_init(const SchemeConfig& config, const State& s0) override;
  void on_step(const SchemeConfig& config, const State& before, const State& after,
               double dt) override;

  const std::vector<SeriesRow>& rows() const { return rows_; }
  const ChiSpec& chi() const { return *chi_; }
  double initial_min_entropy_ratio() const { return initial_ratio_; }

 private:
  SeriesRow totals_row(const SchemeConfig& config, const State& s) const;

  std::optional<ChiSpec> chi_;
  std::vector<SeriesRow> rows_;
  double initial_ratio_ = 0.0;
};

// Keeps every visited state in memory; for weak-form residuals and studies.
class TrajectoryRecorder : public RunObserver {
 public:
  void on_init(const SchemeConfig&, const State& s0) override { states_.push_back(s0); }
  void on_step(const SchemeConfig&, const State&, const State& after, double) override {
    states_.push_back(after);
  }
  const std::vector<State>& states() const { return states_; }

 private:
  std::vector<State> states_;
};

}  // namespace esfv
