#include "core/flux.hpp"

#include <algorithm>
#include <cmath>

namespace esfv {

void physical_flux(const EulerModel& model, const ConsState& u, int axis, std::span<double> out) {
  const double p = model.pressure_of(u);
  const int dim = model.dim;
  out[0] = u.m[axis];
  for (int i = 0; i < dim; ++i) {
    out[1 + i] = u.m[i] * u.m[axis] / u.rho;
  }
  out[1 + axis] += p;
  if (model.system == System::Complete) {
    out[1 + dim] = (u.E + p) * u.m[axis] / u.rho;
  }
}

double max_wave_speed(const EulerModel& model, const ConsState& u) {
  const double c = model.sound_speed_of(u);
  double umax = 0.0;
  for (int i = 0; i < model.dim; ++i) {
    umax = std::max(umax, std::abs(u.m[i] / u.rho));
  }
  return umax + c;
}

double face_lambda(const FluxKind& kind, const EulerModel& model, const ConsState& left,
                   const ConsState& right, double global_max) {
  if (kind.variant == FluxVariant::GlobalLF) {
    return global_max;
  }
  return std::max(max_wave_speed(model, left), max_wave_speed(model, right));
}

void numerical_flux(const FluxKind& kind, const EulerModel& model, const ConsState& left,
                    const ConsState& right, int axis, double lambda_sigma, std::span<double> out) {
  const int m = model.components();
  std::array<double, 5> fl{};
  std::array<double, 5> fr{};
  physical_flux(model, left, axis, fl);
  physical_flux(model, right, axis, fr);

  std::array<double, 5> ul{};
  std::array<double, 5> ur{};
  left.to_cell(ul, model.system, model.dim);
  right.to_cell(ur, model.system, model.dim);

  const double d = kind.jump_factor() * lambda_sigma;
  for (int c = 0; c < m; ++c) {
    out[c] = 0.5 * (fl[c] + fr[c]) - d * (ur[c] - ul[c]);
  }
}

double numerical_entropy_flux(const EulerModel& model, const ChiSpec& chi, const ConsState& left,
                              const ConsState& right, int axis,
                              std::span<const double> face_flux) {
  const EntropyVars vl = model.entropy_vars_of(left, chi);
  const EntropyVars vr = model.entropy_vars_of(right, chi);
  const int m = model.components();
  double q = 0.0;
  for (int c = 0; c < m; ++c) {
    q += 0.5 * (vl.v[c] + vr.v[c]) * face_flux[c];
  }
  q -= 0.5 * (vl.psi[axis] + vr.psi[axis]);
  return q;
}

}  // namespace esfv
