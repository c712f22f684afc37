#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "esfv/fluxes.hpp"
#include "esfv/grid.hpp"
#include "esfv/solver.hpp"

namespace esfv {

struct DiagnosticsRecord {
  double time = 0.0;
  double total_entropy = 0.0;
  double total_kinetic_energy = 0.0;
  double max_mach = 0.0;
  double ke_balance_residual = 0.0;
};

/// Physical entropy s = ln(p rho^-gamma) per cell.
CellArray<double> entropy_field(const Field2D& field, const GasModel& gas);
/// Mathematical entropy U = -rho s / (gamma - 1) per cell.
CellArray<double> entropy_density_field(const Field2D& field, const GasModel& gas);
/// Sum of U * dx * dy.
double total_entropy(const Field2D& field, const GasModel& gas);
/// Sum of 1/2 rho |v|^2 * dx * dy.
double total_kinetic_energy(const Field2D& field);
/// |v| / c per cell.
CellArray<double> mach_field(const Field2D& field, const GasModel& gas);
double max_mach(const Field2D& field, const GasModel& gas);

/// Terms of the semi-discrete kinetic-energy balance with first-order
/// (constant) reconstruction:
///
///   rate          = sum_ij (-1/2 |v|^2 drho/dt + v . d(rho v)/dt) dx dy
///   pressure_work = sum_faces <p> (jump of normal velocity) / h * dx dy
///
/// where <p> is the pressure of the entropy-conservative central flux at the
/// face. residual = rate - pressure_work is the kinetic energy produced by
/// the flux diffusion; it vanishes for the central flux and is non-positive
/// for the kinetic-energy-stable fluxes. Exact for periodic boundaries.
struct KineticEnergyBalance {
  double rate = 0.0;
  double pressure_work = 0.0;
  double residual = 0.0;
  /// Sum of the absolute values of the per-cell rate contributions.
  double scale = 0.0;
};

KineticEnergyBalance kinetic_energy_balance(const Field2D& field, const FluxKind& kind,
                                            const Boundaries& boundaries, const GasModel& gas);
double ke_balance_residual(const Field2D& field, const FluxKind& kind,
                           const Boundaries& boundaries, const GasModel& gas);

/// dr . F - dpsi_x for a single x-interface: zero for an entropy-conservative
/// flux, non-positive for an entropy-stable one.
double flux_entropy_dissipation(const StatePair& pair, const FluxKind& kind, const GasModel& gas);

DiagnosticsRecord make_record(const Field2D& field, const SpatialScheme& scheme,
                              const GasModel& gas);

inline constexpr const char* kDiagnosticsHeader =
    "time,total_entropy,total_kinetic_energy,max_mach,ke_balance_residual";

/// Writes the header row followed by one row per record at full precision.
void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records);

// ---------------------------------------------------------------------------
// Mach scaling of the diffusion matrix

/// Formal order of a diffusion-matrix entry in the reference Mach number.
/// Zero entries may still carry an O(M) remainder.
enum class ScalingOrder { Zero, One, InverseMach };
using ScalingTable = std::array<std::array<ScalingOrder, 4>, 4>;

/// Per-entry log-log slopes of the non-dimensional diffusion matrix.
struct ScalingReport {
  FluxKind kind;
  std::vector<double> mach_levels;
  /// Slope of log|D_ij| against log M; NaN where the entry is identically
  /// zero (below the zero threshold at every level).
  Mat4 fitted_exponents{};
  /// Largest |D_ij| over all levels.
  Mat4 max_magnitude{};
  std::vector<Mat4> matrices;
};

inline constexpr double kScalingZeroThreshold = 1e-10;

/// Diffusion matrix of the flux mapped to primitive variables,
/// (du/dq) Q (dr/du), at a single state (dimensional).
Mat4 primitive_diffusion_matrix(const FluxKind& kind, const Primitive& w, const GasModel& gas);

/// Primitive diffusion matrix at rho = 1, p = 1/gamma (c = 1), v = (M, 0),
/// expressed in units with reference velocity M and reference pressure
/// rho c^2 so that the momentum flux carries p / M^2.
Mat4 nondimensional_diffusion_matrix(const FluxKind& kind, double mach, const GasModel& gas);

/// Needs >= 3 strictly decreasing levels spanning >= 2 decades, otherwise
/// throws Error(DegenerateFit).
ScalingReport diffusion_scaling_probe(const FluxKind& kind, std::span<const double> mach_levels,
                                      const GasModel& gas);

/// Formal orders of the (low-Mach) entropy diffusion matrix.
ScalingTable expected_diffusion_scaling(const FluxKind& kind);

enum class ScalingCheckMode {
  /// O(1/M) entries must actually grow like 1/M.
  Attained,
  /// Every entry only has to stay within its formal order.
  Bound,
};

struct ScalingCheck {
  bool passed = true;
  std::vector<std::string> failures;
};

ScalingCheck check_scaling(const ScalingReport& report, const ScalingTable& table,
                           ScalingCheckMode mode, double slope_tolerance = 0.15);

void write_scaling_csv(std::ostream& out, const ScalingReport& report);

}  // namespace esfv
