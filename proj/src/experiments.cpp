#include "esfv/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "esfv/error.hpp"

namespace esfv {

namespace {

Field2D riemann_field(int nx, int ny, const Primitive& left, const Primitive& right,
                      const GasModel& gas) {
  Field2D f(build_grid({0.0, 1.0, 0.0, 1.0}, nx, ny));
  const Conserved ql = primitive_to_conserved(left, gas);
  const Conserved qr = primitive_to_conserved(right, gas);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) f.at(i, j) = f.grid.x_center(i) < 0.5 ? ql : qr;
  return f;
}

void write_comment_block(std::ostream& out, const RunConfig& config) {
  std::istringstream lines(describe(config));
  std::string line;
  while (std::getline(lines, line)) out << "# " << line << '\n';
}

}  // namespace

Field2D setup_sound_wave(int nx, const GasModel& gas, int ny) {
  return riemann_field(nx, ny, {1.0, 0.75, 0.0, 1.0}, {0.125, 0.0, 0.0, 0.1}, gas);
}

Field2D setup_contact(int nx, const GasModel& gas, int ny) { return setup_sound_wave(nx, gas, ny); }

Field2D setup_pure_contact(int nx, const GasModel& gas, int ny) {
  return riemann_field(nx, ny, {1.0, 0.0, 0.0, 1.0}, {0.5, 0.0, 0.0, 1.0}, gas);
}

double gresho_azimuthal_velocity(double r) {
  if (r < 0.2) return 5.0 * r;
  if (r < 0.4) return 2.0 - 5.0 * r;
  return 0.0;
}

double gresho_pressure(double r, double p_center) {
  if (r < 0.2) return p_center + 12.5 * r * r;
  if (r < 0.4) return p_center + 4.0 * std::log(5.0 * r) + 4.0 - 20.0 * r + 12.5 * r * r;
  return p_center + 4.0 * std::numbers::ln2 - 2.0;
}

double gresho_center_pressure(double mach_ref, const GasModel& gas) {
  return 1.0 / (2.0 * gas.gamma * mach_ref * mach_ref);
}

Field2D setup_gresho(int nx, int ny, double mach_ref, const GasModel& gas) {
  Field2D f(build_grid({0.0, 1.0, 0.0, 1.0}, nx, ny));
  const double pc = gresho_center_pressure(mach_ref, gas);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double dx = f.grid.x_center(i) - 0.5;
      const double dy = f.grid.y_center(j) - 0.5;
      const double r = std::hypot(dx, dy);
      const double vphi = gresho_azimuthal_velocity(r);
      // e_phi = (-sin phi, cos phi) = (-dy, dx) / r
      const double u = r > 0.0 ? -vphi * dy / r : 0.0;
      const double v = r > 0.0 ? vphi * dx / r : 0.0;
      f.at(i, j) = primitive_to_conserved({1.0, u, v, gresho_pressure(r, pc)}, gas);
    }
  return f;
}

Field2D initial_field(const RunConfig& c) {
  const GasModel gas = c.gas();
  switch (c.experiment) {
    case Experiment::SoundWave: return setup_sound_wave(c.nx, gas, c.ny);
    case Experiment::Contact: return setup_contact(c.nx, gas, c.ny);
    case Experiment::PureContact: return setup_pure_contact(c.nx, gas, c.ny);
    case Experiment::Gresho: return setup_gresho(c.nx, c.ny, c.mach_ref, gas);
  }
  throw Error(ErrorCode::ConfigError, "unknown experiment");
}

ExperimentResult run(const RunConfig& config) {
  config.validate();
  const GasModel gas = config.gas();
  const SpatialScheme scheme = config.scheme();

  ExperimentResult result;
  result.config = config;
  result.initial_field = initial_field(config);

  if (config.experiment == Experiment::Gresho && config.mach_ref <= 0.1) {
    const double m0 = max_mach(result.initial_field, gas);
    const double target = std::numbers::sqrt2 * config.mach_ref;
    if (std::fabs(m0 - target) > 0.1 * target)
      throw Error(ErrorCode::ConfigError,
                  fmt::format("initial max Mach {:.4g} not within 10% of {:.4g}; grid too coarse",
                              m0, target));
  }

  const auto start = std::chrono::steady_clock::now();
  result.records.push_back(make_record(result.initial_field, scheme, gas));
  EvolveOptions options;
  options.cfl = config.cfl;
  options.max_steps = config.max_steps;
  options.on_step = [&](const Field2D& f, long step, double) {
    if (step % config.output_stride == 0) result.records.push_back(make_record(f, scheme, gas));
    result.steps = step;
  };
  result.final_field = evolve(result.initial_field, config.t_end, scheme, gas, options);
  if (result.records.back().time < result.final_field.time)
    result.records.push_back(make_record(result.final_field, scheme, gas));
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!config.output_dir.empty()) write_outputs(result);
  return result;
}

RunConfig reference_config(int nx) {
  RunConfig c = default_config(Experiment::SoundWave);
  c.flux = {FluxTag::LLF, 0.0};
  c.nx = nx;
  c.output_stride = 1000;
  return c;
}

ExperimentResult run_reference(int nx, const std::string& output_dir) {
  RunConfig c = reference_config(nx);
  c.output_dir = output_dir;
  return run(c);
}

void write_field_csv(std::ostream& out, const Field2D& field, const RunConfig& config) {
  const GasModel gas = config.gas();
  write_comment_block(out, config);
  out << fmt::format("# time={:.17g}\n", field.time);
  out << kFieldHeader << '\n';
  const CellArray<Primitive> w = field_primitives(field, gas);
  for (int j = 0; j < field.grid.ny; ++j)
    for (int i = 0; i < field.grid.nx; ++i) {
      const Primitive& p = w.at(i, j);
      const double mach = std::sqrt(p.speed_squared()) / sound_speed(p, gas);
      out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                         field.grid.x_center(i), field.grid.y_center(j), p.rho, p.vel_x, p.vel_y,
                         p.pressure, mach, entropy_density(p, gas));
    }
}

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records,
                           const RunConfig& config) {
  write_comment_block(out, config);
  write_diagnostics_csv(out, std::span<const DiagnosticsRecord>(records));
}

void write_outputs(const ExperimentResult& result) {
  const std::filesystem::path dir(result.config.output_dir);
  std::filesystem::create_directories(dir);
  std::ofstream field(dir / "field.csv");
  write_field_csv(field, result.final_field, result.config);
  std::ofstream diag(dir / "diagnostics.csv");
  write_diagnostics_csv(diag, result.records, result.config);
  if (!field || !diag)
    throw Error(ErrorCode::ConfigError, "failed to write output in " + dir.string());
}

std::vector<double> downsample_density(const Field2D& fine, int factor) {
  if (factor < 1 || fine.grid.nx % factor != 0)
    throw Error(ErrorCode::InvalidArgument, "downsampling factor must divide nx");
  std::vector<double> out(static_cast<std::size_t>(fine.grid.nx / factor), 0.0);
  for (int i = 0; i < fine.grid.nx; ++i) out[static_cast<std::size_t>(i / factor)] += fine.at(i, 0).rho;
  for (double& x : out) x /= factor;
  return out;
}

double l1_density_error(const Field2D& field, const std::vector<double>& reference) {
  if (reference.size() != static_cast<std::size_t>(field.grid.nx))
    throw Error(ErrorCode::InvalidArgument, "reference size does not match the grid");
  double sum = 0.0;
  for (int i = 0; i < field.grid.nx; ++i)
    sum += std::fabs(field.at(i, 0).rho - reference[static_cast<std::size_t>(i)]);
  return sum * field.grid.dx;
}

std::vector<SweepEntry> run_gresho_sweep(const RunConfig& base, const std::vector<FluxTag>& fluxes,
                                         const std::vector<double>& mach_levels) {
  std::vector<SweepEntry> out;
  for (double m : mach_levels)
    for (FluxTag tag : fluxes) {
      RunConfig c = base;
      c.experiment = Experiment::Gresho;
      c.flux.tag = tag;
      c.mach_ref = m;
      if (!base.output_dir.empty())
        c.output_dir = (std::filesystem::path(base.output_dir) /
                        fmt::format("{}_M{:g}", to_string(tag), m))
                           .string();
      out.push_back({tag, m, run(c)});
    }
  return out;
}

}  // namespace esfv
