#include "core/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

namespace esfv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double min_specific_entropy(const EulerModel& model, const Field& field) {
  double s_min = std::numeric_limits<double>::infinity();
  const std::int64_t cells = field.grid.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    const ConsState u = cell_state(model, field, k);
    s_min = std::min(s_min, specific_entropy_arg(model.ideal, u, model.dim).S);
  }
  return s_min;
}

double max_specific_entropy(const EulerModel& model, const Field& field) {
  double s_max = -std::numeric_limits<double>::infinity();
  const std::int64_t cells = field.grid.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    const ConsState u = cell_state(model, field, k);
    s_max = std::max(s_max, specific_entropy_arg(model.ideal, u, model.dim).S);
  }
  return s_max;
}

// Face fluxes of the scheme at `state`, then Q per face from the Tadmor form.
// Returns div_h Q as a one-component field.
Field entropy_flux_divergence(const SchemeConfig& config, const ChiSpec& chi, const State& state) {
  const EulerModel& model = config.model;
  const GridSpec& g = state.field.grid;
  const int m = model.components();
  const double h = g.cell_width();
  const std::int64_t cells = g.cell_count();

  const bool local = config.flux.variant == FluxVariant::LocalLF;
  std::vector<double> speed;
  if (local) {
    speed.resize(cells);
    for (std::int64_t k = 0; k < cells; ++k) {
      speed[k] = max_wave_speed(model, cell_state(model, state.field, k));
    }
  }

  Field divq = Field::zeros(g, 1);
  std::vector<double> qplus(cells);
  std::vector<double> face_flux(m);
  for (int axis = 0; axis < g.dim; ++axis) {
    for (std::int64_t k = 0; k < cells; ++k) {
      const std::int64_t l = g.neighbor(k, axis, +1);
      const ConsState uk = cell_state(model, state.field, k);
      const ConsState ul = cell_state(model, state.field, l);
      const double lambda = local ? std::max(speed[k], speed[l]) : state.lambda_max;
      numerical_flux(config.flux, model, uk, ul, axis, lambda, face_flux);
      qplus[k] = numerical_entropy_flux(model, chi, uk, ul, axis, face_flux);
    }
    for (std::int64_t k = 0; k < cells; ++k) {
      const std::int64_t j = g.neighbor(k, axis, -1);
      divq.at(k, 0) += (qplus[k] - qplus[j]) / h;
    }
  }
  return divq;
}

double integrand_row(const SchemeConfig& config, const Field& field, double global_lambda) {
  const EulerModel& model = config.model;
  const GridSpec& g = field.grid;
  const double h = g.cell_width();
  const std::int64_t cells = g.cell_count();
  const int m = model.components();
  const bool local = config.flux.variant == FluxVariant::LocalLF;

  std::vector<double> speed;
  if (local) {
    speed.resize(cells);
    for (std::int64_t k = 0; k < cells; ++k) {
      speed[k] = max_wave_speed(model, cell_state(model, field, k));
    }
  }

  double total = 0.0;
  for (int axis = 0; axis < g.dim; ++axis) {
    for (std::int64_t k = 0; k < cells; ++k) {
      const std::int64_t l = g.neighbor(k, axis, +1);
      const double lambda = local ? std::max(speed[k], speed[l]) : global_lambda;
      double jump1 = 0.0;
      for (int c = 0; c < m; ++c) {
        jump1 += std::abs(field.at(l, c) - field.at(k, c));
      }
      total += lambda * jump1;
    }
  }
  double vol = 1.0;
  for (int a = 0; a < g.dim; ++a) {
    vol *= h;
  }
  return vol * total;
}

}  // namespace

ChiSpec default_cutoff_chi(const EulerModel& model, const Field& initial) {
  return ChiSpec::cutoff(min_specific_entropy(model, initial));
}

ChiSpec default_capped_chi(const EulerModel& model, const Field& initial) {
  return ChiSpec::capped(max_specific_entropy(model, initial) + 1.0);
}

Field entropy_residual(const SchemeConfig& config, const ChiSpec& chi, const State& before,
                       const State& after, double dt) {
  const EulerModel& model = config.model;
  const Field divq = entropy_flux_divergence(config, chi, before);
  Field out = Field::zeros(before.field.grid, 1);
  const std::int64_t cells = before.field.grid.cell_count();
  // Energy is the convex entropy of the barotropic system; its inequality
  // runs the other way.
  const double orient = model.system == System::Barotropic ? -1.0 : 1.0;
  for (std::int64_t k = 0; k < cells; ++k) {
    const double eta0 = model.entropy_pair(cell_state(model, before.field, k), chi).eta;
    const double eta1 = model.entropy_pair(cell_state(model, after.field, k), chi).eta;
    out.at(k, 0) = orient * ((eta1 - eta0) / dt + divq.at(k, 0));
  }
  return out;
}

double entropy_residual_tol(const SchemeConfig& config, const ChiSpec& chi, const State& before,
                            double dt) {
  const EulerModel& model = config.model;
  double scale = 1.0;
  const std::int64_t cells = before.field.grid.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    scale = std::max(scale,
                     std::abs(model.entropy_pair(cell_state(model, before.field, k), chi).eta));
  }
  return kResidualTolCoeff * dt * scale / before.field.grid.cell_width();
}

double weak_bv_integrand(const SchemeConfig& config, const Field& field) {
  const double lambda = config.flux.variant == FluxVariant::GlobalLF
                            ? global_wave_speed(config, field)
                            : 0.0;
  return integrand_row(config, field, lambda);
}

double weak_bv_statistic(const SchemeConfig& config, std::span<const State> trajectory) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < trajectory.size(); ++k) {
    const State& a = trajectory[k];
    const State& b = trajectory[k + 1];
    const double dt = b.time - a.time;
    Field mid = a.field;
    for (std::size_t i = 0; i < mid.values.size(); ++i) {
      mid.values[i] = 0.5 * (a.field.values[i] + b.field.values[i]);
    }
    total += weak_bv_integrand(config, mid) * dt;
  }
  return total;
}

double min_entropy_ratio(const EulerModel& model, const Field& field) {
  if (model.system != System::Complete) {
    throw std::logic_error("min_entropy_ratio applies to the complete system");
  }
  const double expo = 1.0 / (model.ideal.gamma - 1.0);
  double ratio = 0.0;
  const std::int64_t cells = field.grid.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    const ConsState u = cell_state(model, field, k);
    const double theta = temperature(model.ideal, u, model.dim);
    ratio = std::max(ratio, u.rho / std::pow(theta, expo));
  }
  return ratio;
}

PositivityExtrema positivity_monitor(const EulerModel& model, const Field& field) {
  PositivityExtrema out;
  out.rho_min = std::numeric_limits<double>::infinity();
  out.rho_max = -std::numeric_limits<double>::infinity();
  out.p_min = std::numeric_limits<double>::infinity();
  const bool complete = model.system == System::Complete;
  out.e_int_min = complete ? std::numeric_limits<double>::infinity() : kNaN;
  out.E_min = complete ? std::numeric_limits<double>::infinity() : kNaN;
  const std::int64_t cells = field.grid.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    const ConsState u = cell_state(model, field, k);
    out.rho_min = std::min(out.rho_min, u.rho);
    out.rho_max = std::max(out.rho_max, u.rho);
    out.p_min = std::min(out.p_min, model.pressure_of(u));
    if (complete) {
      out.e_int_min = std::min(out.e_int_min, internal_energy(u, model.dim));
      out.E_min = std::min(out.E_min, u.E);
    }
  }
  return out;
}

std::vector<TestFunction> shipped_test_functions(int dim, double t_final) {
  const double pi = std::numbers::pi;
  // Temporal bump (1 - (t/T)^2)^2: positive on [0, T), vanishing at T.
  auto bump = [t_final](double t) {
    const double s = t / t_final;
    const double w = 1.0 - s * s;
    return w * w;
  };
  auto dbump = [t_final](double t) {
    const double s = t / t_final;
    return -4.0 * s * (1.0 - s * s) / t_final;
  };

  std::vector<TestFunction> out;

  {
    TestFunction f;
    f.name = "bump*(1+sin/2)";
    f.t_final = t_final;
    f.nonnegative = true;
    f.phi = [bump, pi](double t, const std::array<double, 3>& x) {
      return bump(t) * (1.0 + 0.5 * std::sin(2.0 * pi * x[0]));
    };
    f.dphi_dt = [dbump, pi](double t, const std::array<double, 3>& x) {
      return dbump(t) * (1.0 + 0.5 * std::sin(2.0 * pi * x[0]));
    };
    f.grad = [bump, pi, dim](double t, const std::array<double, 3>& x, std::span<double> g) {
      g[0] = bump(t) * pi * std::cos(2.0 * pi * x[0]);
      for (int a = 1; a < dim; ++a) {
        g[a] = 0.0;
      }
    };
    out.push_back(std::move(f));
  }

  {
    TestFunction f;
    f.name = "bump*cos";
    f.t_final = t_final;
    f.nonnegative = false;
    f.phi = [bump, pi](double t, const std::array<double, 3>& x) {
      return bump(t) * std::cos(2.0 * pi * x[0]);
    };
    f.dphi_dt = [dbump, pi](double t, const std::array<double, 3>& x) {
      return dbump(t) * std::cos(2.0 * pi * x[0]);
    };
    f.grad = [bump, pi, dim](double t, const std::array<double, 3>& x, std::span<double> g) {
      g[0] = -bump(t) * 2.0 * pi * std::sin(2.0 * pi * x[0]);
      for (int a = 1; a < dim; ++a) {
        g[a] = 0.0;
      }
    };
    out.push_back(std::move(f));
  }

  if (dim == 1) {
    TestFunction f;
    f.name = "bump*sin4";
    f.t_final = t_final;
    f.nonnegative = false;
    f.phi = [bump, pi](double t, const std::array<double, 3>& x) {
      return bump(t) * std::sin(4.0 * pi * x[0]);
    };
    f.dphi_dt = [dbump, pi](double t, const std::array<double, 3>& x) {
      return dbump(t) * std::sin(4.0 * pi * x[0]);
    };
    f.grad = [bump, pi](double t, const std::array<double, 3>& x, std::span<double> g) {
      g[0] = bump(t) * 4.0 * pi * std::cos(4.0 * pi * x[0]);
    };
    out.push_back(std::move(f));
  } else {
    TestFunction f;
    f.name = "bump*(1+sinx*cosy/2)";
    f.t_final = t_final;
    f.nonnegative = true;
    f.phi = [bump, pi](double t, const std::array<double, 3>& x) {
      return bump(t) * (1.0 + 0.5 * std::sin(2.0 * pi * x[0]) * std::cos(2.0 * pi * x[1]));
    };
    f.dphi_dt = [dbump, pi](double t, const std::array<double, 3>& x) {
      return dbump(t) * (1.0 + 0.5 * std::sin(2.0 * pi * x[0]) * std::cos(2.0 * pi * x[1]));
    };
    f.grad = [bump, pi, dim](double t, const std::array<double, 3>& x, std::span<double> g) {
      g[0] = bump(t) * pi * std::cos(2.0 * pi * x[0]) * std::cos(2.0 * pi * x[1]);
      g[1] = -bump(t) * pi * std::sin(2.0 * pi * x[0]) * std::sin(2.0 * pi * x[1]);
      for (int a = 2; a < dim; ++a) {
        g[a] = 0.0;
      }
    };
    out.push_back(std::move(f));
  }

  return out;
}

double consistency_residual(const SchemeConfig& config, const ChiSpec& chi,
                            std::span<const State> trajectory, const TestFunction& test,
                            WeakForm which, int momentum_axis) {
  if (trajectory.size() < 2) {
    throw error(errc::runtime, "consistency residual needs at least two recorded states");
  }
  const EulerModel& model = config.model;
  const GridSpec& g = trajectory.front().field.grid;
  const double t_final = trajectory.back().time;

  // Compact support in time: phi must vanish at the end of the window.
  const std::int64_t cells = g.cell_count();
  for (std::int64_t k = 0; k < cells; k += std::max<std::int64_t>(1, cells / 7)) {
    if (std::abs(test.phi(t_final, g.center(k))) > 1e-12) {
      throw error(errc::runtime,
                  fmt::format("test function '{}' does not vanish at t={}", test.name, t_final));
    }
  }
  if (which == WeakForm::Entropy && !test.nonnegative) {
    throw error(errc::runtime, "entropy consistency requires a nonnegative test function");
  }

  double vol = 1.0;
  for (int a = 0; a < g.dim; ++a) {
    vol *= g.cell_width();
  }

  auto space_integral = [&](const State& s) {
    double acc = 0.0;
    std::array<double, 3> grad = {0.0, 0.0, 0.0};
    for (std::int64_t k = 0; k < cells; ++k) {
      const std::array<double, 3> x = g.center(k);
      const ConsState u = cell_state(model, s.field, k);
      const double dphi = test.dphi_dt(s.time, x);
      test.grad(s.time, x, std::span<double>(grad.data(), g.dim));
      switch (which) {
        case WeakForm::Continuity: {
          double conv = 0.0;
          for (int a = 0; a < g.dim; ++a) {
            conv += u.m[a] * grad[a];
          }
          acc += u.rho * dphi + conv;
          break;
        }
        case WeakForm::Momentum: {
          const double p = model.pressure_of(u);
          double conv = 0.0;
          for (int a = 0; a < g.dim; ++a) {
            conv += (u.m[a] * u.m[momentum_axis] / u.rho + (a == momentum_axis ? p : 0.0)) *
                    grad[a];
          }
          acc += u.m[momentum_axis] * dphi + conv;
          break;
        }
        case WeakForm::Entropy: {
          const EntropyPair pair = model.entropy_pair(u, chi);
          double conv = 0.0;
          for (int a = 0; a < g.dim; ++a) {
            conv += pair.q[a] * grad[a];
          }
          acc += pair.eta * dphi + conv;
          break;
        }
      }
    }
    return vol * acc;
  };

  double time_integral = 0.0;
  double prev = space_integral(trajectory[0]);
  for (std::size_t k = 1; k < trajectory.size(); ++k) {
    const double cur = space_integral(trajectory[k]);
    time_integral += 0.5 * (prev + cur) * (trajectory[k].time - trajectory[k - 1].time);
    prev = cur;
  }

  // Initial-data boundary term of the weak identity.
  double boundary = 0.0;
  {
    const State& s0 = trajectory.front();
    for (std::int64_t k = 0; k < cells; ++k) {
      const std::array<double, 3> x = g.center(k);
      const ConsState u = cell_state(model, s0.field, k);
      switch (which) {
        case WeakForm::Continuity:
          boundary += u.rho * test.phi(s0.time, x);
          break;
        case WeakForm::Momentum:
          boundary += u.m[momentum_axis] * test.phi(s0.time, x);
          break;
        case WeakForm::Entropy:
          boundary += model.entropy_pair(u, chi).eta * test.phi(s0.time, x);
          break;
      }
    }
    boundary *= vol;
  }

  if (which == WeakForm::Entropy) {
    // Complete system: -int eta(0) phi(0) >= int [eta phi_t + q . grad phi];
    // barotropic energy entropy reverses the inequality. Both orient to a
    // nonnegative defect.
    const double defect = model.system == System::Barotropic ? time_integral + boundary
                                                             : -boundary - time_integral;
    return defect;
  }
  return std::abs(time_integral + boundary);
}

Norms error_norms(const Field& a, const Field& b) {
  if (a.components != b.components || a.grid.cell_count() != b.grid.cell_count()) {
    throw std::logic_error("error_norms: mismatched fields");
  }
  Norms out;
  out.l1.assign(a.components, 0.0);
  out.linf.assign(a.components, 0.0);
  const std::int64_t cells = a.grid.cell_count();
  for (std::int64_t k = 0; k < cells; ++k) {
    for (int c = 0; c < a.components; ++c) {
      const double d = std::abs(a.at(k, c) - b.at(k, c));
      out.l1[c] += d;
      out.linf[c] = std::max(out.linf[c], d);
    }
  }
  double vol = 1.0;
  for (int x = 0; x < a.grid.dim; ++x) {
    vol *= a.grid.cell_width();
  }
  for (double& v : out.l1) {
    v *= vol;
  }
  return out;
}

ConservationDrifts conservation_ledger(std::span<const SeriesRow> rows) {
  if (rows.size() < 2) {
    throw error(errc::runtime, "conservation ledger needs at least two recorded rows");
  }
  constexpr double eps = 1e-300;
  ConservationDrifts out;
  const double m0 = rows.front().mass;
  const double e0 = rows.front().energy;
  out.mass.reserve(rows.size());
  out.energy.reserve(rows.size());
  for (const SeriesRow& r : rows) {
    const double dm = std::abs(r.mass - m0) / std::max(std::abs(m0), eps);
    const double de = std::abs(r.energy - e0) / std::max(std::abs(e0), eps);
    out.mass.push_back(dm);
    out.energy.push_back(de);
    out.mass_max = std::max(out.mass_max, dm);
    out.energy_max = std::max(out.energy_max, de);
  }
  return out;
}

SeriesRow DiagnosticsObserver::totals_row(const SchemeConfig& config, const State& s) const {
  const EulerModel& model = config.model;
  SeriesRow row;
  row.time = s.time;
  const std::int64_t cells = s.field.grid.cell_count();
  double vol = 1.0;
  for (int a = 0; a < model.dim; ++a) {
    vol *= s.field.grid.cell_width();
  }
  double mass = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  for (std::int64_t k = 0; k < cells; ++k) {
    const ConsState u = cell_state(model, s.field, k);
    mass += u.rho;
    if (model.system == System::Complete) {
      energy += u.E;
      entropy += u.rho * specific_entropy_arg(model.ideal, u, model.dim).S;
    } else {
      energy += energy_entropy_baro(model.baro, u, model.dim).eta;
    }
  }
  row.mass = vol * mass;
  row.energy = vol * energy;
  row.entropy = model.system == System::Complete ? vol * entropy : row.energy;

  const PositivityExtrema ext = positivity_monitor(model, s.field);
  row.rho_min = ext.rho_min;
  row.rho_max = ext.rho_max;
  row.p_min = ext.p_min;
  row.min_entropy_ratio =
      model.system == System::Complete ? min_entropy_ratio(model, s.field) : kNaN;
  row.entropy_residual_min = kNaN;
  row.weak_bv_integrand = kNaN;
  return row;
}

void DiagnosticsObserver::on_init(const SchemeConfig& config, const State& s0) {
  if (!chi_.has_value()) {
    chi_ = config.model.system == System::Complete ? default_cutoff_chi(config.model, s0.field)
                                                   : ChiSpec::cutoff(0.0);
  }
  rows_.clear();
  rows_.push_back(totals_row(config, s0));
  initial_ratio_ = rows_.front().min_entropy_ratio;
}

void DiagnosticsObserver::on_step(const SchemeConfig& config, const State& before,
                                  const State& after, double dt) {
  SeriesRow row = totals_row(config, after);

  const Field residual = entropy_residual(config, *chi_, before, after, dt);
  double rmin = std::numeric_limits<double>::infinity();
  for (double v : residual.values) {
    rmin = std::min(rmin, v);
  }
  row.entropy_residual_min = rmin;

  Field mid = before.field;
  for (std::size_t i = 0; i < mid.values.size(); ++i) {
    mid.values[i] = 0.5 * (before.field.values[i] + after.field.values[i]);
  }
  row.weak_bv_integrand = weak_bv_integrand(config, mid);

  rows_.push_back(row);
}

}  // namespace esfv
