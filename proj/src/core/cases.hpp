#pragma once

#include <array>
#include <functional>
#include <map>
#include <span>
#include <string>

#include "core/eos.hpp"
#include "core/grid.hpp"

namespace esfv {

// Evaluator of a reference solution at (t, x) on the torus.
using ExactSolution =
    std::function<void(double t, const std::array<double, 3>& x, std::span<double> out)>;

struct CaseSpec {
  std::string name;
  PointSampler initial;
  ExactSolution exact;  // empty when no closed-form reference is shipped
  bool has_exact() const { return static_cast<bool>(exact); }
};

// Primitive description of a constant state; p is ignored for barotropic.
struct PrimState {
  double rho = 1.0;
  std::array<double, 3> u = {0.0, 0.0, 0.0};
  double p = 1.0;
};

ConsState to_conservative(const EulerModel& model, const PrimState& w);

// The trivial exact solution: the constant state, frozen in time.
CaseSpec constant_state(const EulerModel& model, const PrimState& w);

// rho0 = background + amplitude sin(2 pi x), u0 = 0; the complete system
// carries the matching isentropic pressure p0 = rho0^gamma. No exact
// evaluator; refinement studies self-converge against the finest level.
CaseSpec smooth_wave_1d(const EulerModel& model, double amplitude, double background);

// Classical isentropic vortex advected by a uniform flow, complete Euler on
// the 2-torus. The exponentially localized profile is made periodic by
// wrap-summation over the nearest image in each direction.
CaseSpec isentropic_vortex_2d(const EulerModel& model, double beta, double radius,
                              const std::array<double, 2>& velocity);

// Piecewise-constant data with the jump at x = 1/2 and the periodic wrap
// providing the second jump. Defaults are the Sod states.
CaseSpec riemann_1d(const EulerModel& model, const PrimState& left, const PrimState& right);

// Case registry addressable by name with parameters from the run
// configuration (keys under case.*); unknown names raise errc::config.
CaseSpec make_case(const EulerModel& model, const std::string& name,
                   const std::map<std::string, double>& params);

}  // namespace esfv
