#pragma once

#include <array>
#include <span>
#include <string>

#include "core/errors.hpp"

namespace esfv {

enum class System { Barotropic, Complete };

// p(rho) = a * rho^gamma.
struct BarotropicEos {
  double a = 1.0;
  double gamma = 2.0;
};

// Perfect gas: p = (gamma-1)(E - |m|^2/(2 rho)), theta = p/rho, e = c_v theta.
struct IdealGasEos {
  double gamma = 1.4;
  double c_v() const { return 1.0 / (gamma - 1.0); }
};

// Increasing, concave, bounded-above renormalization function.
//   cutoff(z0): chi(z) = min(z - z0, 0)
//   capped(zbar): chi(z) = min(z, zbar)
// The slope at the kink uses the flat (right) branch.
struct ChiSpec {
  enum class Kind { Cutoff, Capped };
  Kind kind = Kind::Cutoff;
  double param = 0.0;

  double value(double z) const;
  double slope(double z) const;

  static ChiSpec cutoff(double z0) { return {Kind::Cutoff, z0}; }
  static ChiSpec capped(double zbar) { return {Kind::Capped, zbar}; }
};

// Conservative state of one cell. E is ignored for the barotropic system.
struct ConsState {
  double rho = 0.0;
  std::array<double, 3> m = {0.0, 0.0, 0.0};
  double E = 0.0;

  static ConsState from_cell(std::span<const double> cell, System system, int dim);
  void to_cell(std::span<double> cell, System system, int dim) const;

  double momentum_sq(int dim) const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      s += m[i] * m[i];
    }
    return s;
  }
};

// Admissibility floors; violations raise errors rather than being clipped.
constexpr double kRhoFloor = 1e-10;
constexpr double kEnergyFloor = 1e-12;

// E - |m|^2/(2 rho); requires rho > 0.
double internal_energy(const ConsState& u, int dim);

double pressure(const BarotropicEos& eos, const ConsState& u);
double pressure(const IdealGasEos& eos, const ConsState& u, int dim);

// theta = p / rho.
double temperature(const IdealGasEos& eos, const ConsState& u, int dim);

enum class PpotMode { Exact, Isentropic };

// Pressure potential: exact = a rho (rho^{gamma-1} - 1)/(gamma-1),
// isentropic = a rho^gamma / (gamma-1). Diagnostics default to isentropic;
// the two differ by a mass-conserved linear term.
double pressure_potential(const BarotropicEos& eos, double rho, PpotMode mode = PpotMode::Isentropic);

double sound_speed(const BarotropicEos& eos, const ConsState& u);
double sound_speed(const IdealGasEos& eos, const ConsState& u, int dim);

struct EntropyArg {
  double Z = 0.0;  // (gamma-1)(E - |m|^2/(2 rho)) / rho^gamma = p / rho^gamma
  double S = 0.0;  // log(Z) / (gamma-1)
};

EntropyArg specific_entropy_arg(const IdealGasEos& eos, const ConsState& u, int dim);

struct EntropyPair {
  double eta = 0.0;
  std::array<double, 3> q = {0.0, 0.0, 0.0};
};

// eta = rho chi(S), q = m chi(S).
EntropyPair renorm_entropy(const IdealGasEos& eos, const ChiSpec& chi, const ConsState& u, int dim);

// eta = |m|^2/(2 rho) + P(rho); for barotropic flow the energy plays the
// role of the entropy and q = (eta + p) m / rho.
EntropyPair energy_entropy_baro(const BarotropicEos& eos, const ConsState& u, int dim,
                                PpotMode mode = PpotMode::Isentropic);

// Entropy variables V = grad_U eta and the entropy potential, defined
// through the compatibility identity psi_s = V . f_s(U) - q_s(U).
struct EntropyVars {
  std::array<double, 5> v = {0, 0, 0, 0, 0};  // dim + 1 or dim + 2 entries used
  std::array<double, 3> psi = {0, 0, 0};
};

EntropyVars entropy_vars(const BarotropicEos& eos, const ConsState& u, int dim);
EntropyVars entropy_vars(const IdealGasEos& eos, const ChiSpec& chi, const ConsState& u, int dim);

// 1D-section Hessian of the barotropic energy entropy in (rho, m); positive
// definite whenever rho > 0.
std::array<std::array<double, 2>, 2> entropy_hessian_baro(const BarotropicEos& eos, double rho,
                                                          double m_scalar);

// Raises errc::runtime if the state violates the floors for the system.
void check_admissible(System system, const ConsState& u, int dim, double rho_floor = kRhoFloor,
                      double e_floor = kEnergyFloor, const std::string& context = {});

// Dispatching aggregate for one of the two Euler systems on a dim-torus.
struct EulerModel {
  System system = System::Barotropic;
  int dim = 1;
  BarotropicEos baro;
  IdealGasEos ideal;

  int components() const { return system == System::Barotropic ? dim + 1 : dim + 2; }
  double gamma() const { return system == System::Barotropic ? baro.gamma : ideal.gamma; }

  double pressure_of(const ConsState& u) const {
    return system == System::Barotropic ? pressure(baro, u) : pressure(ideal, u, dim);
  }
  double sound_speed_of(const ConsState& u) const {
    return system == System::Barotropic ? sound_speed(baro, u) : sound_speed(ideal, u, dim);
  }
  // Entropy pair used in the discrete entropy inequality: the (convex)
  // energy for barotropic flow, rho chi(S) for the complete system.
  EntropyPair entropy_pair(const ConsState& u, const ChiSpec& chi) const {
    return system == System::Barotropic ? energy_entropy_baro(baro, u, dim)
                                        : renorm_entropy(ideal, chi, u, dim);
  }
  EntropyVars entropy_vars_of(const ConsState& u, const ChiSpec& chi) const {
    return system == System::Barotropic ? entropy_vars(baro, u, dim)
                                        : entropy_vars(ideal, chi, u, dim);
  }
};

}  // namespace esfv
