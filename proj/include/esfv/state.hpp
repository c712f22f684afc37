#pragma once

#include "esfv/linalg.hpp"

namespace esfv {

/// Densities or pressures below this floor are treated as loss of
/// admissibility and reported, never clipped.
inline constexpr double kAdmissibilityFloor = 1e-12;

/// Calorically perfect ideal gas.
struct GasModel {
  double gamma = 1.4;
  double gas_constant = 1.0;

  /// Throws Error(InvalidArgument) unless gamma > 1 and gas_constant > 0.
  void validate() const;
};

/// Cell state (rho, rho*u, rho*v, E).
struct Conserved {
  double rho = 0.0;
  double mom_x = 0.0;
  double mom_y = 0.0;
  double energy = 0.0;

  Vec4 as_vec() const { return {rho, mom_x, mom_y, energy}; }
  static Conserved from_vec(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

  Conserved& operator+=(const Conserved& o) {
    rho += o.rho;
    mom_x += o.mom_x;
    mom_y += o.mom_y;
    energy += o.energy;
    return *this;
  }
  friend Conserved operator+(Conserved a, const Conserved& b) { return a += b; }
  friend Conserved operator-(const Conserved& a, const Conserved& b) {
    return {a.rho - b.rho, a.mom_x - b.mom_x, a.mom_y - b.mom_y, a.energy - b.energy};
  }
  friend Conserved operator*(double s, const Conserved& a) {
    return {s * a.rho, s * a.mom_x, s * a.mom_y, s * a.energy};
  }
  friend bool operator==(const Conserved&, const Conserved&) = default;
};

/// (rho, u, v, p).
struct Primitive {
  double rho = 0.0;
  double vel_x = 0.0;
  double vel_y = 0.0;
  double pressure = 0.0;

  double speed_squared() const { return vel_x * vel_x + vel_y * vel_y; }
  /// beta = rho / (2 p) = 1 / (2 R T).
  double beta() const { return rho / (2.0 * pressure); }

  friend bool operator==(const Primitive&, const Primitive&) = default;
};

/// Gradient of the mathematical entropy U with respect to the conserved state.
struct EntropyVars {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double r4 = 0.0;

  Vec4 as_vec() const { return {r1, r2, r3, r4}; }
  static EntropyVars from_vec(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
};

/// Mathematical entropy U and its fluxes.
struct EntropyPair {
  double entropy = 0.0;
  double flux_x = 0.0;
  double flux_y = 0.0;
};

Conserved primitive_to_conserved(const Primitive& w, const GasModel& gas);

/// Throws Error(NonPositiveDensity / NonPositivePressure) when the state has
/// left the admissible set.
Primitive conserved_to_primitive(const Conserved& q, const GasModel& gas);

double sound_speed(const Primitive& w, const GasModel& gas);

/// s = ln(p rho^-gamma).
double physical_entropy(const Primitive& w, const GasModel& gas);

/// U = -rho s / (gamma - 1), phi = U * velocity.
EntropyPair entropy_pair(const Conserved& q, const GasModel& gas);

/// Same quantity as entropy_pair(...).entropy, evaluated from primitives.
double entropy_density(const Primitive& w, const GasModel& gas);

EntropyVars primitive_to_entropy_vars(const Primitive& w, const GasModel& gas);
EntropyVars conserved_to_entropy_vars(const Conserved& q, const GasModel& gas);

/// Inverse of conserved_to_entropy_vars. Throws Error(InvalidEntropyState)
/// if r4 >= 0.
Conserved entropy_vars_to_conserved(const EntropyVars& r, const GasModel& gas);

/// psi = rho * v, the potential of the entropy flux.
struct FluxPotential {
  double x = 0.0;
  double y = 0.0;
};
FluxPotential entropy_flux_potential(const Conserved& q);

/// Jacobian d(conserved)/d(primitive) at w.
Mat4 conserved_wrt_primitive(const Primitive& w, const GasModel& gas);
/// Jacobian d(primitive)/d(conserved) at w.
Mat4 primitive_wrt_conserved(const Primitive& w, const GasModel& gas);
/// Jacobian d(entropy vars)/d(primitive) at w.
Mat4 entropy_vars_wrt_primitive(const Primitive& w, const GasModel& gas);

}  // namespace esfv
