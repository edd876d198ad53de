#pragma once

#include <array>
#include <span>

#include "core/eos.hpp"

namespace esfv {

// Lax-Friedrichs-type flux family:
//   F_sigma = {{f(U)}} - factor * lambda_sigma * [[U]]
// GlobalLF freezes lambda at the mesh-wide maximal wave speed, LocalLF takes
// the face-local maximum (the Rusanov choice). The jump factor is 1 in the
// convention analyzed here; the classical Rusanov convention carries 1/2.
enum class FluxVariant { GlobalLF, LocalLF };
enum class JumpScaling { Paper, Classical };

struct FluxKind {
  FluxVariant variant = FluxVariant::LocalLF;
  JumpScaling jump_scaling = JumpScaling::Paper;

  double jump_factor() const { return jump_scaling == JumpScaling::Paper ? 1.0 : 0.5; }
};

// f_s(U); writes model.components() entries into `out`.
void physical_flux(const EulerModel& model, const ConsState& u, int axis, std::span<double> out);

// Per-cell wave-speed bound max_s |u_s| + c, an upper bound for the spectral
// radius of every directional Jacobian.
double max_wave_speed(const EulerModel& model, const ConsState& u);

// Diffusion coefficient on a face.
double face_lambda(const FluxKind& kind, const EulerModel& model, const ConsState& left,
                   const ConsState& right, double global_max);

// F_sigma for the face (left | right) along `axis`.
void numerical_flux(const FluxKind& kind, const EulerModel& model, const ConsState& left,
                    const ConsState& right, int axis, double lambda_sigma, std::span<double> out);

// Tadmor numerical entropy flux Q_sigma = {{V}} . F_sigma - {{psi_s}} for the
// provided face flux. `chi` selects the renormalized entropy of the complete
// system and is ignored for barotropic flow.
double numerical_entropy_flux(const EulerModel& model, const ChiSpec& chi, const ConsState& left,
                              const ConsState& right, int axis, std::span<const double> face_flux);

}  // namespace esfv
