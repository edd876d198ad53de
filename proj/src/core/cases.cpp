#include "core/cases.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace esfv {

namespace {

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void write_state(const EulerModel& model, const ConsState& u, std::span<double> out) {
  u.to_cell(out, model.system, model.dim);
}

}  // namespace

ConsState to_conservative(const EulerModel& model, const PrimState& w) {
  ConsState u;
  u.rho = w.rho;
  double usq = 0.0;
  for (int i = 0; i < model.dim; ++i) {
    u.m[i] = w.rho * w.u[i];
    usq += w.u[i] * w.u[i];
  }
  if (model.system == System::Complete) {
    u.E = w.p / (model.ideal.gamma - 1.0) + 0.5 * w.rho * usq;
  }
  return u;
}

CaseSpec constant_state(const EulerModel& model, const PrimState& w) {
  if (!(w.rho > 0.0) || (model.system == System::Complete && !(w.p > 0.0))) {
    throw error(errc::config,
                fmt::format("constant case requires rho > 0 and p > 0, got rho={} p={}", w.rho,
                            w.p));
  }
  const ConsState u = to_conservative(model, w);
  CaseSpec spec;
  spec.name = "constant";
  spec.initial = [model, u](const std::array<double, 3>&, std::span<double> out) {
    write_state(model, u, out);
  };
  spec.exact = [model, u](double, const std::array<double, 3>&, std::span<double> out) {
    write_state(model, u, out);
  };
  return spec;
}

CaseSpec smooth_wave_1d(const EulerModel& model, double amplitude, double background) {
  if (model.dim != 1) {
    throw error(errc::config, "smooth-wave case is one-dimensional");
  }
  if (!(std::abs(amplitude) < background)) {
    throw error(errc::config,
                fmt::format("smooth-wave requires |amplitude| < background, got {} vs {}",
                            amplitude, background));
  }
  CaseSpec spec;
  spec.name = "smooth-wave";
  const double gamma = model.gamma();
  spec.initial = [model, amplitude, background, gamma](const std::array<double, 3>& x,
                                                       std::span<double> out) {
    ConsState u;
    u.rho = background + amplitude * std::sin(2.0 * std::numbers::pi * x[0]);
    if (model.system == System::Complete) {
      u.E = std::pow(u.rho, gamma) / (gamma - 1.0);
    }
    write_state(model, u, out);
  };
  return spec;
}

CaseSpec isentropic_vortex_2d(const EulerModel& model, double beta, double radius,
                              const std::array<double, 2>& velocity) {
  if (model.system != System::Complete || model.dim != 2) {
    throw error(errc::config, "vortex case requires the complete system in two dimensions");
  }
  const double gamma = model.ideal.gamma;
  // Temperature dip coefficient of the classical vortex; positivity of the
  // temperature bounds the admissible strength.
  const double pi = std::numbers::pi;
  const double t_coeff = (gamma - 1.0) * beta * beta / (8.0 * gamma * pi * pi);
  if (!(1.0 - t_coeff * std::exp(1.0) > 0.0)) {
    throw error(errc::config,
                fmt::format("vortex strength beta={} drives the temperature non-positive", beta));
  }
  if (!(radius > 0.0)) {
    throw error(errc::config, "vortex radius must be positive");
  }

  auto evaluate = [model, beta, radius, velocity, gamma, pi, t_coeff](
                      double t, const std::array<double, 3>& x, std::span<double> out) {
    // Vortex center advected by the mean flow, wrapped onto the torus.
    std::array<double, 2> c = {0.5 + velocity[0] * t, 0.5 + velocity[1] * t};
    for (double& ci : c) {
      ci -= std::floor(ci);
    }
    double du0 = 0.0;
    double du1 = 0.0;
    double dT = 0.0;
    for (int kx = -1; kx <= 1; ++kx) {
      for (int ky = -1; ky <= 1; ++ky) {
        const double x0 = (x[0] - c[0] + kx) / radius;
        const double x1 = (x[1] - c[1] + ky) / radius;
        const double r2 = x0 * x0 + x1 * x1;
        const double g = std::exp(0.5 * (1.0 - r2));
        du0 += -(beta / (2.0 * pi)) * g * x1;
        du1 += (beta / (2.0 * pi)) * g * x0;
        dT += -t_coeff * g * g;
      }
    }
    const double temp = 1.0 + dT;
    const double rho = std::pow(temp, 1.0 / (gamma - 1.0));
    const double p = rho * temp;
    const std::array<double, 2> u = {velocity[0] + du0, velocity[1] + du1};
    ConsState state;
    state.rho = rho;
    state.m[0] = rho * u[0];
    state.m[1] = rho * u[1];
    state.E = p / (gamma - 1.0) + 0.5 * rho * (u[0] * u[0] + u[1] * u[1]);
    write_state(model, state, out);
  };

  CaseSpec spec;
  spec.name = "vortex";
  spec.initial = [evaluate](const std::array<double, 3>& x, std::span<double> out) {
    evaluate(0.0, x, out);
  };
  spec.exact = evaluate;
  return spec;
}

CaseSpec riemann_1d(const EulerModel& model, const PrimState& left, const PrimState& right) {
  if (model.dim != 1) {
    throw error(errc::config, "riemann case is one-dimensional");
  }
  for (const PrimState* w : {&left, &right}) {
    if (!(w->rho > 0.0) || (model.system == System::Complete && !(w->p > 0.0))) {
      throw error(errc::config, "riemann states must have rho > 0 and p > 0");
    }
  }
  const ConsState ul = to_conservative(model, left);
  const ConsState ur = to_conservative(model, right);
  CaseSpec spec;
  spec.name = "riemann";
  spec.initial = [model, ul, ur](const std::array<double, 3>& x, std::span<double> out) {
    write_state(model, x[0] < 0.5 ? ul : ur, out);
  };
  return spec;
}

CaseSpec make_case(const EulerModel& model, const std::string& name,
                   const std::map<std::string, double>& params) {
  if (name == "constant") {
    PrimState w;
    w.rho = param_or(params, "rho", 1.0);
    w.u = {param_or(params, "u.x", 0.0), param_or(params, "u.y", 0.0),
           param_or(params, "u.z", 0.0)};
    w.p = param_or(params, "p", 1.0);
    return constant_state(model, w);
  }
  if (name == "smooth-wave") {
    return smooth_wave_1d(model, param_or(params, "amplitude", 0.2),
                          param_or(params, "background", 1.0));
  }
  if (name == "vortex") {
    return isentropic_vortex_2d(
        model, param_or(params, "beta", 0.5), param_or(params, "radius", 0.1),
        {param_or(params, "u.x", 1.0), param_or(params, "u.y", 1.0)});
  }
  if (name == "riemann") {
    PrimState l;
    l.rho = param_or(params, "rho_l", 1.0);
    l.u[0] = param_or(params, "u_l", 0.0);
    l.p = param_or(params, "p_l", 1.0);
    PrimState r;
    r.rho = param_or(params, "rho_r", 0.125);
    r.u[0] = param_or(params, "u_r", 0.0);
    r.p = param_or(params, "p_r", 0.1);
    return riemann_1d(model, l, r);
  }
  throw error(errc::config, fmt::format("unknown case '{}'", name));
}

}  // namespace esfv
