#include "core/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace esfv {

namespace {

std::string cell_context(const GridSpec& grid, std::int64_t cell) {
  const std::array<int, 3> ijk = grid.coords(cell);
  std::string idx = std::to_string(ijk[0]);
  for (int a = 1; a < grid.dim; ++a) {
    idx += "," + std::to_string(ijk[a]);
  }
  return fmt::format("cell {} ({})", cell, idx);
}

bool admissible_fast(System system, const ConsState& u, int dim, double rho_floor,
                     double e_floor) {
  if (!std::isfinite(u.rho) || u.rho < rho_floor) {
    return false;
  }
  for (int i = 0; i < dim; ++i) {
    if (!std::isfinite(u.m[i])) {
      return false;
    }
  }
  if (system == System::Complete) {
    if (!std::isfinite(u.E) || !(internal_energy(u, dim) >= e_floor)) {
      return false;
    }
  }
  return true;
}

}  // namespace

ConsState cell_state(const EulerModel& model, const Field& field, std::int64_t cell) {
  return ConsState::from_cell(field.cell_values(cell), model.system, model.dim);
}

double global_wave_speed(const SchemeConfig& config, const Field& field) {
  double lambda = 0.0;
  const std::int64_t cells = field.grid.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    lambda = std::max(lambda, max_wave_speed(config.model, cell_state(config.model, field, k)));
  }
  return lambda;
}

void verify_admissible(const SchemeConfig& config, const Field& field, const std::string& where) {
  const std::int64_t cells = field.grid.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    const ConsState u = cell_state(config.model, field, k);
    if (admissible_fast(config.model.system, u, config.model.dim, config.rho_floor,
                        config.e_floor)) {
      continue;
    }
    std::string context = cell_context(field.grid, k);
    if (!where.empty()) {
      context = where + ", " + context;
    }
    check_admissible(config.model.system, u, config.model.dim, config.rho_floor, config.e_floor,
                     context);
  }
}

State init(const SchemeConfig& config, const GridSpec& grid, const PointSampler& initial) {
  State s;
  s.time = 0.0;
  s.field = project(initial, grid, config.model.components());
  verify_admissible(config, s.field, "initial data");
  s.lambda_max = global_wave_speed(config, s.field);
  return s;
}

Field rhs(const SchemeConfig& config, const State& state) {
  const EulerModel& model = config.model;
  const GridSpec& g = state.field.grid;
  const int m = model.components();
  const double h = g.cell_width();
  const std::int64_t cells = g.cell_count();

  Field out = Field::zeros(g, m);

  const bool local = config.flux.variant == FluxVariant::LocalLF;
  std::vector<double> speed;
  if (local) {
    speed.resize(cells);
    for (std::int64_t k = 0; k < cells; ++k) {
      speed[k] = max_wave_speed(model, cell_state(model, state.field, k));
    }
  }

  std::vector<double> fplus(static_cast<std::size_t>(cells) * m);
  for (int axis = 0; axis < g.dim; ++axis) {
    for (std::int64_t k = 0; k < cells; ++k) {
      const std::int64_t l = g.neighbor(k, axis, +1);
      const ConsState uk = cell_state(model, state.field, k);
      const ConsState ul = cell_state(model, state.field, l);
      const double lambda =
          local ? std::max(speed[k], speed[l]) : state.lambda_max;
      numerical_flux(config.flux, model, uk, ul, axis, lambda,
                     std::span<double>(fplus.data() + k * m, m));
    }
    for (std::int64_t k = 0; k < cells; ++k) {
      const std::int64_t j = g.neighbor(k, axis, -1);
      for (int c = 0; c < m; ++c) {
        out.at(k, c) -= (fplus[k * m + c] - fplus[j * m + c]) / h;
      }
    }
  }
  return out;
}

double cfl_dt(const SchemeConfig& config, const State& state) {
  const double remaining = config.t_end - state.time;
  if (!(state.lambda_max > 0.0)) {
    return remaining;
  }
  const double dt =
      config.cfl * state.field.grid.cell_width() / (config.model.dim * state.lambda_max);
  return std::min(dt, remaining);
}

State advance(const SchemeConfig& config, const State& state, double dt, const RhsFn& rhs_fn) {
  State out;
  out.time = state.time + dt;
  const std::size_t len = state.field.values.size();

  const Field k1 = rhs_fn(state);
  State stage1;
  stage1.time = state.time + dt;
  stage1.field = state.field;
  stage1.lambda_max = state.lambda_max;
  for (std::size_t i = 0; i < len; ++i) {
    stage1.field.values[i] += dt * k1.values[i];
  }
  verify_admissible(config, stage1.field,
                    fmt::format("stage 1 of step from t={:.12g}", state.time));

  if (config.integrator == Integrator::ForwardEuler) {
    out.field = std::move(stage1.field);
  } else {
    const Field k2 = rhs_fn(stage1);
    out.field = state.field;
    for (std::size_t i = 0; i < len; ++i) {
      out.field.values[i] =
          0.5 * (state.field.values[i] + stage1.field.values[i] + dt * k2.values[i]);
    }
    verify_admissible(config, out.field,
                      fmt::format("stage 2 of step from t={:.12g}", state.time));
  }

  out.lambda_max = global_wave_speed(config, out.field);
  return out;
}

State step(const SchemeConfig& config, const State& state, double dt) {
  if (!(dt > 0.0)) {
    throw error(errc::runtime, fmt::format("non-positive step size {:.17g}", dt));
  }
  return advance(config, state, dt, [&config](const State& s) { return rhs(config, s); });
}

State run(const SchemeConfig& config, const GridSpec& grid, const PointSampler& initial,
          std::span<RunObserver* const> observers, std::span<const double> snapshot_times) {
  State current = init(config, grid, initial);
  for (RunObserver* o : observers) {
    o->on_init(config, current);
  }

  // Event times: requested snapshots within (0, t_end), then t_end itself.
  std::vector<double> events(snapshot_times.begin(), snapshot_times.end());
  std::erase_if(events, [&](double t) { return t <= 0.0 || t >= config.t_end; });
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  events.push_back(config.t_end);

  if (config.t_end <= 0.0) {
    for (RunObserver* o : observers) {
      o->on_snapshot(config, current);
      o->on_finish(config, current);
    }
    return current;
  }

  std::size_t next_event = 0;
  std::int64_t step_index = 0;
  while (current.time < config.t_end) {
    const double target = events[next_event];
    double dt = cfl_dt(config, current);
    bool lands = false;
    if (current.time + dt >= target - 1e-14 * std::max(1.0, std::abs(target))) {
      dt = target - current.time;
      lands = true;
    }
    State next;
    try {
      next = step(config, current, dt);
    } catch (const error& e) {
      throw error(e.code(), fmt::format("step {} from t={:.12g}: {}", step_index, current.time,
                                        e.what()));
    }
    if (lands) {
      next.time = target;
    }
    for (RunObserver* o : observers) {
      o->on_step(config, current, next, dt);
    }
    current = std::move(next);
    if (lands) {
      for (RunObserver* o : observers) {
        o->on_snapshot(config, current);
      }
      ++next_event;
    }
    ++step_index;
  }
  for (RunObserver* o : observers) {
    o->on_finish(config, current);
  }
  return current;
}

}  // namespace esfv
