#include "core/eos.hpp"

#include <cmath>
#include <fmt/format.h>

namespace esfv {

namespace {

[[noreturn]] void inadmissible(const std::string& what, const ConsState& u, int dim,
                               const std::string& context) {
  std::string msg = what + fmt::format(" (rho={:.17g}", u.rho);
  for (int i = 0; i < dim; ++i) {
    msg += fmt::format(", m{}={:.17g}", i + 1, u.m[i]);
  }
  msg += fmt::format(", E={:.17g})", u.E);
  if (!context.empty()) {
    msg += " at " + context;
  }
  throw error(errc::runtime, msg);
}

// Physical flux along axis s, used only to realize the potential identity
// psi_s = V . f_s - q_s. The production flux lives in the flux module and is
// checked against this route by the consistency properties.
void flux_component(System system, double p, const ConsState& u, int dim, int s,
                    std::span<double> f) {
  f[0] = u.m[s];
  for (int i = 0; i < dim; ++i) {
    f[1 + i] = u.m[i] * u.m[s] / u.rho;
  }
  f[1 + s] += p;
  if (system == System::Complete) {
    f[1 + dim] = (u.E + p) * u.m[s] / u.rho;
  }
}

}  // namespace

double ChiSpec::value(double z) const {
  switch (kind) {
    case Kind::Cutoff:
      return std::min(z - param, 0.0);
    case Kind::Capped:
      return std::min(z, param);
  }
  return 0.0;
}

double ChiSpec::slope(double z) const {
  switch (kind) {
    case Kind::Cutoff:
      return z < param ? 1.0 : 0.0;
    case Kind::Capped:
      return z < param ? 1.0 : 0.0;
  }
  return 0.0;
}

ConsState ConsState::from_cell(std::span<const double> cell, System system, int dim) {
  ConsState u;
  u.rho = cell[0];
  for (int i = 0; i < dim; ++i) {
    u.m[i] = cell[1 + i];
  }
  if (system == System::Complete) {
    u.E = cell[1 + dim];
  }
  return u;
}

void ConsState::to_cell(std::span<double> cell, System system, int dim) const {
  cell[0] = rho;
  for (int i = 0; i < dim; ++i) {
    cell[1 + i] = m[i];
  }
  if (system == System::Complete) {
    cell[1 + dim] = E;
  }
}

double internal_energy(const ConsState& u, int dim) {
  return u.E - 0.5 * u.momentum_sq(dim) / u.rho;
}

double pressure(const BarotropicEos& eos, const ConsState& u) {
  if (!(u.rho > 0.0)) {
    inadmissible("non-positive density in pressure", u, 3, {});
  }
  return eos.a * std::pow(u.rho, eos.gamma);
}

double pressure(const IdealGasEos& eos, const ConsState& u, int dim) {
  if (!(u.rho > 0.0)) {
    inadmissible("non-positive density in pressure", u, dim, {});
  }
  const double e = internal_energy(u, dim);
  if (!(e > 0.0)) {
    inadmissible("non-positive internal energy in pressure", u, dim, {});
  }
  return (eos.gamma - 1.0) * e;
}

double temperature(const IdealGasEos& eos, const ConsState& u, int dim) {
  return pressure(eos, u, dim) / u.rho;
}

double pressure_potential(const BarotropicEos& eos, double rho, PpotMode mode) {
  if (!(rho > 0.0)) {
    throw error(errc::runtime, fmt::format("non-positive density {:.17g} in pressure potential", rho));
  }
  const double g = eos.gamma;
  switch (mode) {
    case PpotMode::Exact:
      return eos.a * rho * (std::pow(rho, g - 1.0) - 1.0) / (g - 1.0);
    case PpotMode::Isentropic:
      return eos.a * std::pow(rho, g) / (g - 1.0);
  }
  return 0.0;
}

double sound_speed(const BarotropicEos& eos, const ConsState& u) {
  const double p = pressure(eos, u);
  // c^2 = p'(rho) = a gamma rho^{gamma-1}
  return std::sqrt(eos.gamma * p / u.rho);
}

double sound_speed(const IdealGasEos& eos, const ConsState& u, int dim) {
  const double p = pressure(eos, u, dim);
  return std::sqrt(eos.gamma * p / u.rho);
}

EntropyArg specific_entropy_arg(const IdealGasEos& eos, const ConsState& u, int dim) {
  const double p = pressure(eos, u, dim);
  EntropyArg out;
  out.Z = p / std::pow(u.rho, eos.gamma);
  out.S = std::log(out.Z) / (eos.gamma - 1.0);
  return out;
}

EntropyPair renorm_entropy(const IdealGasEos& eos, const ChiSpec& chi, const ConsState& u,
                           int dim) {
  const double s = specific_entropy_arg(eos, u, dim).S;
  const double cs = chi.value(s);
  EntropyPair out;
  out.eta = u.rho * cs;
  for (int i = 0; i < dim; ++i) {
    out.q[i] = u.m[i] * cs;
  }
  return out;
}

EntropyPair energy_entropy_baro(const BarotropicEos& eos, const ConsState& u, int dim,
                                PpotMode mode) {
  const double p = pressure(eos, u);
  EntropyPair out;
  out.eta = 0.5 * u.momentum_sq(dim) / u.rho + pressure_potential(eos, u.rho, mode);
  for (int i = 0; i < dim; ++i) {
    out.q[i] = (out.eta + p) * u.m[i] / u.rho;
  }
  return out;
}

EntropyVars entropy_vars(const BarotropicEos& eos, const ConsState& u, int dim) {
  if (!(u.rho > 0.0)) {
    inadmissible("non-positive density in entropy variables", u, dim, {});
  }
  const double g = eos.gamma;
  const double p = pressure(eos, u);

  EntropyVars out;
  out.v[0] = eos.a * g / (g - 1.0) * std::pow(u.rho, g - 1.0) -
             0.5 * u.momentum_sq(dim) / (u.rho * u.rho);
  for (int i = 0; i < dim; ++i) {
    out.v[1 + i] = u.m[i] / u.rho;
  }

  const EntropyPair pair = energy_entropy_baro(eos, u, dim);
  std::array<double, 5> f = {0, 0, 0, 0, 0};
  for (int s = 0; s < dim; ++s) {
    flux_component(System::Barotropic, p, u, dim, s, f);
    double vf = 0.0;
    for (int c = 0; c < dim + 1; ++c) {
      vf += out.v[c] * f[c];
    }
    out.psi[s] = vf - pair.q[s];
  }
  return out;
}

EntropyVars entropy_vars(const IdealGasEos& eos, const ChiSpec& chi, const ConsState& u, int dim) {
  const double g = eos.gamma;
  const double p = pressure(eos, u, dim);
  const double s_arg = specific_entropy_arg(eos, u, dim).S;
  const double cs = chi.value(s_arg);
  const double csp = chi.slope(s_arg);

  // grad_U (rho chi(S)) written out in conservative variables.
  EntropyVars out;
  out.v[0] = cs + csp * (0.5 * u.momentum_sq(dim) / u.rho / p - g / (g - 1.0));
  for (int i = 0; i < dim; ++i) {
    out.v[1 + i] = -csp * u.m[i] / p;
  }
  out.v[1 + dim] = csp * u.rho / p;

  std::array<double, 5> f = {0, 0, 0, 0, 0};
  for (int s = 0; s < dim; ++s) {
    flux_component(System::Complete, p, u, dim, s, f);
    double vf = 0.0;
    for (int c = 0; c < dim + 2; ++c) {
      vf += out.v[c] * f[c];
    }
    out.psi[s] = vf - u.m[s] * cs;
  }
  return out;
}

std::array<std::array<double, 2>, 2> entropy_hessian_baro(const BarotropicEos& eos, double rho,
                                                          double m_scalar) {
  if (!(rho > 0.0)) {
    throw error(errc::runtime, fmt::format("non-positive density {:.17g} in entropy Hessian", rho));
  }
  const double g = eos.gamma;
  std::array<std::array<double, 2>, 2> hess;
  hess[0][0] = eos.a * g * std::pow(rho, g - 2.0) + m_scalar * m_scalar / (rho * rho * rho);
  hess[0][1] = -m_scalar / (rho * rho);
  hess[1][0] = hess[0][1];
  hess[1][1] = 1.0 / rho;
  return hess;
}

void check_admissible(System system, const ConsState& u, int dim, double rho_floor, double e_floor,
                      const std::string& context) {
  if (!std::isfinite(u.rho) || u.rho < rho_floor) {
    inadmissible(fmt::format("density below floor {:.3g}", rho_floor), u, dim, context);
  }
  for (int i = 0; i < dim; ++i) {
    if (!std::isfinite(u.m[i])) {
      inadmissible("non-finite momentum", u, dim, context);
    }
  }
  if (system == System::Complete) {
    if (!std::isfinite(u.E)) {
      inadmissible("non-finite energy", u, dim, context);
    }
    const double e = internal_energy(u, dim);
    if (!(e >= e_floor)) {
      inadmissible(fmt::format("internal energy below floor {:.3g}", e_floor), u, dim, context);
    }
  }
}

}  // namespace esfv
