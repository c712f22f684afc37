#pragma once

#include <optional>
#include <string_view>

#include "esfv/averages.hpp"
#include "esfv/linalg.hpp"
#include "esfv/state.hpp"

namespace esfv {

/// Numerical flux families. EC is the bare entropy-conservative central
/// flux (no diffusion), used by the kinetic-energy diagnostics.
enum class FluxTag { Roe, RoeLM, ES, ESKES, ESLM, ESKESLM, LLF, EC };

std::string_view to_string(FluxTag tag);
std::optional<FluxTag> parse_flux_tag(std::string_view name);

struct FluxKind {
  FluxTag tag = FluxTag::ESLM;
  /// Cut-off Mach number for the low-Mach variants, in [0, 1].
  double m_cut = 0.0;

  void validate() const;
  bool entropy_stable() const;
  bool low_mach() const;
  bool kinetic_energy_stable() const;
};

enum class Direction { X, Y };

/// State at which the entropy diffusion matrix is evaluated. Chosen so that
/// c^2 = gamma / (2 beta_log), which makes stationary contacts exact.
struct IntermediateState {
  double rho = 0.0;
  double vel_x = 0.0;
  double vel_y = 0.0;
  double pressure = 0.0;
  double sound_speed = 0.0;
  double enthalpy = 0.0;

  double speed() const;
};

/// Q = R |Lambda| S R^T, stored factorised.
struct DiffusionOperator {
  Mat4 eigvecs{};
  Vec4 scaling{};
  Vec4 eigvals{};

  Mat4 assemble() const;
  /// Q * dr without forming Q.
  Vec4 apply(const Vec4& dr) const;
};

Vec4 physical_flux_x(const Primitive& w, const GasModel& gas);
Vec4 physical_flux_x(const Conserved& q, const GasModel& gas);

/// Entropy-conservative, kinetic-energy-preserving two-point flux built from
/// arithmetic and logarithmic averages of rho and beta.
Vec4 entropy_conservative_flux(const StatePair& pair, const GasModel& gas);

IntermediateState intermediate_state(const StatePair& pair, const GasModel& gas);
/// Intermediate state of a single (left == right) state.
IntermediateState intermediate_state(const Primitive& w, const GasModel& gas);

/// Right eigenvectors of the x-flux Jacobian, one per column, ordered
/// (u - c, u, u, u + c).
Mat4 eigenvector_matrix(const IntermediateState& w);
/// Diagonal of S with d(q)/d(r) = R S R^T.
Vec4 scaling_matrix(const IntermediateState& w, const GasModel& gas);

/// c * max(min(|v|/c, 1), m_cut).
double rescaled_sound_speed(double c, double speed, double m_cut);

/// Diagonal of |Lambda| for the entropy-stable family.
Vec4 lambda_matrix(const FluxKind& kind, const IntermediateState& w);

DiffusionOperator diffusion_operator(const FluxKind& kind, const IntermediateState& w,
                                     const GasModel& gas);

/// -1/2 Q (r(right) - r(left)).
Vec4 entropy_diffusion(const StatePair& pair, const FluxKind& kind, const GasModel& gas);

/// Roe's approximate Riemann solver (no entropy fix). With low_mach the
/// acoustic eigenvalues use the rescaled sound speed.
Vec4 roe_flux(const StatePair& pair, bool low_mach, double m_cut, const GasModel& gas);
Vec4 roe_flux(const Conserved& left, const Conserved& right, bool low_mach, double m_cut,
              const GasModel& gas);

/// Local Lax-Friedrichs with alpha = max(|u| + c) over both sides.
Vec4 llf_flux(const StatePair& pair, const GasModel& gas);

/// x-direction flux between primitive interface states.
Vec4 numerical_flux_x(const StatePair& pair, const FluxKind& kind, const GasModel& gas);

/// Flux through an interface normal to the given direction. The y flux is
/// obtained by exchanging the velocity components before and after the x flux.
Vec4 numerical_flux(const StatePair& pair, const FluxKind& kind, Direction dir,
                    const GasModel& gas);
Vec4 numerical_flux(const Conserved& left, const Conserved& right, const FluxKind& kind,
                    Direction dir, const GasModel& gas);

/// Exchange the two velocity (or momentum) components.
inline Primitive swap_velocity(const Primitive& w) { return {w.rho, w.vel_y, w.vel_x, w.pressure}; }
inline Vec4 swap_momentum(const Vec4& f) { return {f[0], f[2], f[1], f[3]}; }

}  // namespace esfv
