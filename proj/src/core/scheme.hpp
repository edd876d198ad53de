#pragma once

#include <functional>
#include <span>
#include <vector>

#include "core/eos.hpp"
#include "core/flux.hpp"
#include "core/grid.hpp"

namespace esfv {

enum class Integrator { ForwardEuler, SSPRK2 };

struct SchemeConfig {
  EulerModel model;
  FluxKind flux;
  double cfl = 0.4;
  double t_end = 0.0;
  double rho_floor = kRhoFloor;
  double e_floor = kEnergyFloor;
  Integrator integrator = Integrator::SSPRK2;
};

// Timestamped solution with the mesh-wide wave-speed bound cached at `time`.
// The cached value is frozen for all stages of the step starting at `time`.
struct State {
  double time = 0.0;
  Field field;
  double lambda_max = 0.0;
};

ConsState cell_state(const EulerModel& model, const Field& field, std::int64_t cell);

double global_wave_speed(const SchemeConfig& config, const Field& field);

// Verifies every cell against the floors; the error names the first
// violating cell. `where` is appended to the error context.
void verify_admissible(const SchemeConfig& config, const Field& field, const std::string& where);

// Projects the initial sampler and verifies cell-by-cell admissibility.
State init(const SchemeConfig& config, const GridSpec& grid, const PointSampler& initial);

// Face-assembled semi-discrete right-hand side
//   dU_K/dt = -(1/h) sum_s (F_{sigma,s+} - F_{sigma,s-}).
// With the global diffusion coefficient this is algebraically identical to
// -div_central(f) + lambda h laplacian_h(U).
Field rhs(const SchemeConfig& config, const State& state);

// dt = cfl h / (dim lambda_max), clamped to t_end - time.
double cfl_dt(const SchemeConfig& config, const State& state);

// One explicit step; admissibility is re-verified after each stage and the
// cached wave speed is recomputed for the returned state.
State step(const SchemeConfig& config, const State& state, double dt);

// Explicit update with a caller-supplied right-hand side; used by `step` and
// directly testable with frozen RHS functions.
using RhsFn = std::function<Field(const State&)>;
State advance(const SchemeConfig& config, const State& state, double dt, const RhsFn& rhs_fn);

class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_init(const SchemeConfig&, const State&) {}
  virtual void on_step(const SchemeConfig&, const State& before, const State& after, double) {}
  virtual void on_snapshot(const SchemeConfig&, const State&) {}
  virtual void on_finish(const SchemeConfig&, const State&) {}
};

// Integrates to t_end, landing exactly on every requested snapshot time and
// on t_end (where a final snapshot is always emitted). Deterministic:
// identical inputs produce identical results bit for bit.
State run(const SchemeConfig& config, const GridSpec& grid, const PointSampler& initial,
          std::span<RunObserver* const> observers, std::span<const double> snapshot_times = {});

}  // namespace esfv
