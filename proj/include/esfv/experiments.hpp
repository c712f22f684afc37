#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "esfv/diagnostics.hpp"
#include "esfv/solver.hpp"

namespace esfv {

enum class Experiment { SoundWave, Contact, PureContact, Gresho };

std::string_view to_string(Experiment e);
std::string_view to_string(Reconstruction r);

/// Fully resolved description of one run.
struct RunConfig {
  Experiment experiment = Experiment::SoundWave;
  FluxKind flux{FluxTag::ESLM, 0.0};
  int nx = 100;
  int ny = 1;
  Reconstruction reconstruction = Reconstruction::Constant;
  double cfl = 0.4;
  double t_end = 0.2;
  double gamma = 1.4;
  double gas_constant = 1.0;
  /// Gresho vortex Mach parameter (ignored by the Riemann problems).
  double mach_ref = 0.1;
  /// Empty: nothing is written.
  std::string output_dir;
  /// Steps between diagnostics rows.
  long output_stride = 10;
  /// 0 = run to t_end.
  long max_steps = 0;

  GasModel gas() const { return {gamma, gas_constant}; }
  Boundaries boundaries() const;
  SpatialScheme scheme() const { return {flux, reconstruction, boundaries()}; }
  /// Throws Error(ConfigError) describing the first violated constraint.
  void validate() const;
};

/// Standard setup of an experiment: grid, reconstruction and end time.
RunConfig default_config(Experiment e);

/// Time of 0.1 revolutions of the Gresho vortex (core angular velocity 5).
double gresho_end_time(double revolutions = 0.1);

using ConfigMap = std::map<std::string, std::string>;

/// Parses `key = value` lines; blank lines and '#' comments are skipped.
ConfigMap parse_config_text(std::string_view text);
ConfigMap read_config_file(const std::string& path);
/// Starts from default_config(experiment) and applies every key. Unknown keys
/// and malformed values throw Error(ConfigError).
RunConfig resolve_config(const ConfigMap& values);
/// One `key=value` line per field, parseable by parse_config_text.
std::string describe(const RunConfig& config);

// Initial data -------------------------------------------------------------

Field2D setup_sound_wave(int nx, const GasModel& gas, int ny = 1);
/// Same Riemann data as setup_sound_wave.
Field2D setup_contact(int nx, const GasModel& gas, int ny = 1);
/// Stationary contact: (1, 0, 0, 1) | (0.5, 0, 0, 1) at x = 0.5.
Field2D setup_pure_contact(int nx, const GasModel& gas, int ny = 1);

/// Gresho vortex pressure at radius r with central pressure p_c.
double gresho_pressure(double r, double p_center);
double gresho_azimuthal_velocity(double r);
/// p_c = 1 / (2 gamma M^2).
double gresho_center_pressure(double mach_ref, const GasModel& gas);
Field2D setup_gresho(int nx, int ny, double mach_ref, const GasModel& gas);

Field2D initial_field(const RunConfig& config);

// Runs ---------------------------------------------------------------------

struct ExperimentResult {
  RunConfig config;
  Field2D initial_field;
  Field2D final_field;
  std::vector<DiagnosticsRecord> records;
  long steps = 0;
  double wall_time = 0.0;
};

/// Evolves the configured experiment. When config.output_dir is set, writes
/// field.csv and diagnostics.csv there.
ExperimentResult run(const RunConfig& config);

/// LLF, constant reconstruction, sound-wave data, t = 0.2.
RunConfig reference_config(int nx = 100000);
ExperimentResult run_reference(int nx = 100000, const std::string& output_dir = {});

inline constexpr const char* kFieldHeader = "x,y,rho,u,v,p,mach,entropy";

/// Field CSV: '#' comment block with the config, header row, one row per
/// cell (y outer, x inner). The entropy column holds U = -rho s/(gamma-1).
void write_field_csv(std::ostream& out, const Field2D& field, const RunConfig& config);
void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records,
                           const RunConfig& config);
void write_outputs(const ExperimentResult& result);

/// Cell averages of a fine 1-D field over groups of `factor` cells.
std::vector<double> downsample_density(const Field2D& fine, int factor);
/// sum |a - b| * dx over the cells of a 1-D field.
double l1_density_error(const Field2D& field, const std::vector<double>& reference);

struct SweepEntry {
  FluxTag flux;
  double mach_ref;
  ExperimentResult result;
};

/// Gresho runs over every flux and Mach parameter; each run writes into
/// `<output_dir>/<flux>_M<mach>` when output_dir is non-empty.
std::vector<SweepEntry> run_gresho_sweep(const RunConfig& base, const std::vector<FluxTag>& fluxes,
                                         const std::vector<double>& mach_levels);

}  // namespace esfv
