#include "esfv/state.hpp"

#include <cmath>
#include <string>

#include "esfv/error.hpp"

namespace esfv {

void GasModel::validate() const {
  if (!(gamma > 1.0)) throw Error(ErrorCode::InvalidArgument, "gamma must exceed 1");
  if (!(gas_constant > 0.0))
    throw Error(ErrorCode::InvalidArgument, "gas constant must be positive");
}

Conserved primitive_to_conserved(const Primitive& w, const GasModel& gas) {
  const double kinetic = 0.5 * w.rho * w.speed_squared();
  return {w.rho, w.rho * w.vel_x, w.rho * w.vel_y, w.pressure / (gas.gamma - 1.0) + kinetic};
}

Primitive conserved_to_primitive(const Conserved& q, const GasModel& gas) {
  if (!(q.rho >= kAdmissibilityFloor))
    throw Error(ErrorCode::NonPositiveDensity, "density " + std::to_string(q.rho));
  const double u = q.mom_x / q.rho;
  const double v = q.mom_y / q.rho;
  const double p = (gas.gamma - 1.0) * (q.energy - 0.5 * (q.mom_x * u + q.mom_y * v));
  if (!(p >= kAdmissibilityFloor))
    throw Error(ErrorCode::NonPositivePressure, "pressure " + std::to_string(p));
  return {q.rho, u, v, p};
}

double sound_speed(const Primitive& w, const GasModel& gas) {
  return std::sqrt(gas.gamma * w.pressure / w.rho);
}

double physical_entropy(const Primitive& w, const GasModel& gas) {
  return std::log(w.pressure) - gas.gamma * std::log(w.rho);
}

double entropy_density(const Primitive& w, const GasModel& gas) {
  return -w.rho * physical_entropy(w, gas) / (gas.gamma - 1.0);
}

EntropyPair entropy_pair(const Conserved& q, const GasModel& gas) {
  const Primitive w = conserved_to_primitive(q, gas);
  const double u_ent = entropy_density(w, gas);
  return {u_ent, u_ent * w.vel_x, u_ent * w.vel_y};
}

EntropyVars primitive_to_entropy_vars(const Primitive& w, const GasModel& gas) {
  const double s = physical_entropy(w, gas);
  const double beta = w.beta();
  return {(gas.gamma - s) / (gas.gamma - 1.0) - beta * w.speed_squared(), 2.0 * beta * w.vel_x,
          2.0 * beta * w.vel_y, -2.0 * beta};
}

EntropyVars conserved_to_entropy_vars(const Conserved& q, const GasModel& gas) {
  return primitive_to_entropy_vars(conserved_to_primitive(q, gas), gas);
}

Conserved entropy_vars_to_conserved(const EntropyVars& r, const GasModel& gas) {
  if (!(r.r4 < 0.0))
    throw Error(ErrorCode::InvalidEntropyState, "r4 must be negative, got " + std::to_string(r.r4));
  const double beta = -0.5 * r.r4;
  const double u = r.r2 / (2.0 * beta);
  const double v = r.r3 / (2.0 * beta);
  const double s = gas.gamma - (gas.gamma - 1.0) * (r.r1 + beta * (u * u + v * v));
  // p rho^-gamma = e^s together with p = rho / (2 beta).
  const double log_rho = (std::log(2.0 * beta) + s) / (1.0 - gas.gamma);
  const double rho = std::exp(log_rho);
  return primitive_to_conserved({rho, u, v, rho / (2.0 * beta)}, gas);
}

FluxPotential entropy_flux_potential(const Conserved& q) { return {q.mom_x, q.mom_y}; }

Mat4 conserved_wrt_primitive(const Primitive& w, const GasModel& gas) {
  const double rho = w.rho, u = w.vel_x, v = w.vel_y;
  return Mat4{{{1.0, 0.0, 0.0, 0.0},
               {u, rho, 0.0, 0.0},
               {v, 0.0, rho, 0.0},
               {0.5 * (u * u + v * v), rho * u, rho * v, 1.0 / (gas.gamma - 1.0)}}};
}

Mat4 primitive_wrt_conserved(const Primitive& w, const GasModel& gas) {
  const double rho = w.rho, u = w.vel_x, v = w.vel_y;
  const double gm1 = gas.gamma - 1.0;
  return Mat4{{{1.0, 0.0, 0.0, 0.0},
               {-u / rho, 1.0 / rho, 0.0, 0.0},
               {-v / rho, 0.0, 1.0 / rho, 0.0},
               {0.5 * gm1 * (u * u + v * v), -gm1 * u, -gm1 * v, gm1}}};
}

Mat4 entropy_vars_wrt_primitive(const Primitive& w, const GasModel& gas) {
  const double rho = w.rho, u = w.vel_x, v = w.vel_y, p = w.pressure;
  const double gm1 = gas.gamma - 1.0;
  const double q2 = u * u + v * v;
  return Mat4{{{gas.gamma / (gm1 * rho) - q2 / (2.0 * p), -rho * u / p, -rho * v / p,
                -1.0 / (gm1 * p) + rho * q2 / (2.0 * p * p)},
               {u / p, rho / p, 0.0, -rho * u / (p * p)},
               {v / p, 0.0, rho / p, -rho * v / (p * p)},
               {-1.0 / p, 0.0, 0.0, rho / (p * p)}}};
}

}  // namespace esfv
