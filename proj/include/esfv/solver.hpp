#pragma once

#include <functional>
#include <span>
#include <vector>

#include "esfv/fluxes.hpp"
#include "esfv/grid.hpp"

namespace esfv {

enum class Reconstruction { Constant, LimitedLinear };

/// Everything that defines the semi-discrete operator apart from the gas.
struct SpatialScheme {
  FluxKind flux;
  Reconstruction reconstruction = Reconstruction::Constant;
  Boundaries boundaries;
};

/// Reconstructed states on one family of interfaces.
///
/// Axis X: (nx + 1) faces per row, index j * (nx + 1) + k, face k sits
/// between cells k - 1 and k. Axis Y: (ny + 1) faces per column, index
/// i * (ny + 1) + k. Velocities are stored in the original frame.
struct InterfaceStates {
  Direction axis = Direction::X;
  int faces_per_line = 0;
  int lines = 0;
  std::vector<Primitive> left;
  std::vector<Primitive> right;
};

/// Number of ghost cells on each side of a padded line.
inline constexpr int kGhostCells = 2;

double minmod(double a, double b);

/// Interface states of one grid line. `padded` holds n interior cells
/// surrounded by kGhostCells ghost cells on each side; `left` and `right`
/// receive n + 1 face states.
void reconstruct_line(std::span<const Primitive> padded, Reconstruction scheme,
                      std::span<Primitive> left, std::span<Primitive> right);

/// Cell primitives; admissibility failures are reported with the cell index.
CellArray<Primitive> field_primitives(const Field2D& field, const GasModel& gas);

InterfaceStates reconstruct(const Field2D& field, Reconstruction scheme, Direction axis,
                            const Boundaries& boundaries, const GasModel& gas);

/// Numerical fluxes on every face of the interface family.
std::vector<Vec4> face_fluxes(const InterfaceStates& states, const FluxKind& kind,
                              const GasModel& gas);

/// Semi-discrete operator: -(F_{i+1/2} - F_{i-1/2})/dx - (G_{j+1/2} - G_{j-1/2})/dy.
CellArray<Conserved> compute_rhs(const Field2D& field, const SpatialScheme& scheme,
                                 const GasModel& gas);

/// cfl / max over cells of ((|u| + c)/dx + (|v| + c)/dy).
double cfl_dt(const Field2D& field, double cfl, const GasModel& gas);

/// Four-stage, third-order strong-stability-preserving Runge-Kutta step for
/// any state type with vector-space operators.
template <typename State, typename Rhs>
State ssprk43(const State& q, double dt, Rhs&& rhs) {
  const double h = 0.5 * dt;
  const State q1 = q + h * rhs(q);
  const State q2 = q1 + h * rhs(q1);
  const State q3 = (2.0 / 3.0) * q + (1.0 / 3.0) * (q2 + h * rhs(q2));
  return q3 + h * rhs(q3);
}

using RhsEvaluator = std::function<CellArray<Conserved>(const Field2D&)>;

/// ssprk43 specialised to fields; advances field.time by dt.
Field2D ssprk43_step(const Field2D& field, double dt, const RhsEvaluator& rhs);

struct EvolveOptions {
  double cfl = 0.4;
  /// Stop after this many steps even if t_end is not reached (0 = no limit).
  long max_steps = 0;
  /// Invoked after every completed step with the new field, step count and dt.
  std::function<void(const Field2D&, long, double)> on_step;
};

/// Advances to t_end (the last step is shortened to land on it exactly).
/// Throws Error(NonFiniteState) if any value stops being finite.
Field2D evolve(Field2D field, double t_end, const SpatialScheme& scheme, const GasModel& gas,
               const EvolveOptions& options = {});

}  // namespace esfv
