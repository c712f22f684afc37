// Command-line driver for the entropy-stable finite-volume experiments.
//
//   esfv run --config run.cfg --flux ES-KES-LM --nx 200
//   esfv reference --cells 100000 --output-dir ref
//   esfv sweep --output-dir gresho
//   esfv probe-scaling --flux ES-LM --output scaling.csv
//
// Exit codes: 0 success, 2 configuration error, 3 solver failure.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "esfv/diagnostics.hpp"
#include "esfv/error.hpp"
#include "esfv/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct RunOverrides {
  std::string config_path;
  std::map<std::string, std::string> values;
};

void add_override(CLI::App* cmd, RunOverrides& o, const std::string& flag, const std::string& key,
                  const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&o, key](const std::string& v) { o.values[key] = v; }, help);
}

void print_summary(const esfv::ExperimentResult& r) {
  const auto& last = r.records.back();
  std::cout << fmt::format(
      "{} {} nx={} ny={} t={:.6g} steps={} wall={:.3f}s entropy={:.10g} kinetic={:.10g} "
      "max_mach={:.6g}\n",
      esfv::to_string(r.config.experiment), esfv::to_string(r.config.flux.tag), r.config.nx,
      r.config.ny, r.final_field.time, r.steps, r.wall_time, last.total_entropy,
      last.total_kinetic_energy, last.max_mach);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find(',', pos);
    const std::string item = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    try {
      out.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw esfv::Error(esfv::ErrorCode::ConfigError, "invalid number '" + item + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-stable, low-Mach finite-volume solver for the 2-D Euler equations"};
  app.require_subcommand(1);

  RunOverrides run_opts;
  auto* run_cmd = app.add_subcommand("run", "Run one experiment");
  run_cmd->add_option("--config", run_opts.config_path, "key=value config file");
  add_override(run_cmd, run_opts, "--experiment", "experiment", "SoundWave|Contact|PureContact|Gresho");
  add_override(run_cmd, run_opts, "--flux", "flux", "Roe|Roe-LM|ES|ES-KES|ES-LM|ES-KES-LM|LLF|EC");
  add_override(run_cmd, run_opts, "--m-cut", "m_cut", "cut-off Mach number");
  add_override(run_cmd, run_opts, "--nx", "nx", "cells in x");
  add_override(run_cmd, run_opts, "--ny", "ny", "cells in y");
  add_override(run_cmd, run_opts, "--reconstruction", "reconstruction", "Constant|LimitedLinear");
  add_override(run_cmd, run_opts, "--cfl", "cfl", "CFL number");
  add_override(run_cmd, run_opts, "--t-end", "t_end", "final time");
  add_override(run_cmd, run_opts, "--gamma", "gamma", "ratio of specific heats");
  add_override(run_cmd, run_opts, "--gas-constant", "gas_constant", "specific gas constant");
  add_override(run_cmd, run_opts, "--mach-ref", "mach_ref", "Gresho Mach parameter");
  add_override(run_cmd, run_opts, "--output-dir", "output_dir", "output directory");
  add_override(run_cmd, run_opts, "--output-stride", "output_stride", "steps between diagnostics rows");
  add_override(run_cmd, run_opts, "--max-steps", "max_steps", "stop after this many steps");

  int ref_cells = 100000;
  std::string ref_dir = "reference";
  auto* ref_cmd = app.add_subcommand("reference", "LLF reference solution of the sound-wave problem");
  ref_cmd->add_option("--cells", ref_cells, "number of cells");
  ref_cmd->add_option("--output-dir", ref_dir, "output directory");

  RunOverrides sweep_opts;
  std::string sweep_fluxes = "Roe,Roe-LM,ES,ES-KES,ES-LM,ES-KES-LM";
  std::string sweep_machs = "1,0.1,0.01";
  auto* sweep_cmd = app.add_subcommand("sweep", "Gresho vortex over fluxes and Mach numbers");
  sweep_cmd->add_option("--config", sweep_opts.config_path, "key=value config file");
  sweep_cmd->add_option("--fluxes", sweep_fluxes, "comma-separated flux names");
  sweep_cmd->add_option("--mach", sweep_machs, "comma-separated Mach parameters");
  add_override(sweep_cmd, sweep_opts, "--nx", "nx", "cells in x");
  add_override(sweep_cmd, sweep_opts, "--ny", "ny", "cells in y");
  add_override(sweep_cmd, sweep_opts, "--m-cut", "m_cut", "cut-off Mach number");
  add_override(sweep_cmd, sweep_opts, "--cfl", "cfl", "CFL number");
  add_override(sweep_cmd, sweep_opts, "--output-dir", "output_dir", "output directory");

  std::string probe_flux = "ES";
  double probe_mcut = 0.0;
  std::string probe_levels = "1e-1,1e-2,1e-3,1e-4";
  std::string probe_out;
  double probe_gamma = 1.4;
  auto* probe_cmd = app.add_subcommand("probe-scaling", "Mach scaling of the diffusion matrix");
  probe_cmd->add_option("--flux", probe_flux, "ES-family flux name");
  probe_cmd->add_option("--m-cut", probe_mcut, "cut-off Mach number");
  probe_cmd->add_option("--levels", probe_levels, "comma-separated, decreasing Mach levels");
  probe_cmd->add_option("--gamma", probe_gamma, "ratio of specific heats");
  probe_cmd->add_option("--output", probe_out, "CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) {
      esfv::ConfigMap values;
      if (!run_opts.config_path.empty()) values = esfv::read_config_file(run_opts.config_path);
      for (const auto& [k, v] : run_opts.values) values[k] = v;
      if (!values.contains("output_dir")) values["output_dir"] = "output";
      print_summary(esfv::run(esfv::resolve_config(values)));
    } else if (*ref_cmd) {
      if (ref_cells < 2) throw esfv::Error(esfv::ErrorCode::ConfigError, "--cells must be >= 2");
      print_summary(esfv::run_reference(ref_cells, ref_dir));
    } else if (*sweep_cmd) {
      esfv::ConfigMap values;
      if (!sweep_opts.config_path.empty()) values = esfv::read_config_file(sweep_opts.config_path);
      for (const auto& [k, v] : sweep_opts.values) values[k] = v;
      values["experiment"] = "Gresho";
      if (!values.contains("output_dir")) values["output_dir"] = "sweep";
      const esfv::RunConfig base = esfv::resolve_config(values);
      std::vector<esfv::FluxTag> fluxes;
      for (std::size_t pos = 0; pos <= sweep_fluxes.size();) {
        const auto next = sweep_fluxes.find(',', pos);
        const std::string name = sweep_fluxes.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        const auto tag = esfv::parse_flux_tag(name);
        if (!tag) throw esfv::Error(esfv::ErrorCode::ConfigError, "unknown flux '" + name + "'");
        fluxes.push_back(*tag);
        if (next == std::string::npos) break;
        pos = next + 1;
      }
      for (const auto& entry : esfv::run_gresho_sweep(base, fluxes, parse_list(sweep_machs))) {
        const auto& first = entry.result.records.front();
        const auto& last = entry.result.records.back();
        std::cout << fmt::format("{:<10} M={:<5g} kinetic {:.6g} -> {:.6g} (loss {:.3f}%) max_mach {:.4g}\n",
                                 esfv::to_string(entry.flux), entry.mach_ref, first.total_kinetic_energy,
                                 last.total_kinetic_energy,
                                 100.0 * (1.0 - last.total_kinetic_energy / first.total_kinetic_energy),
                                 last.max_mach);
      }
    } else if (*probe_cmd) {
      const auto tag = esfv::parse_flux_tag(probe_flux);
      if (!tag) throw esfv::Error(esfv::ErrorCode::ConfigError, "unknown flux '" + probe_flux + "'");
      const esfv::FluxKind kind{*tag, probe_mcut};
      if (!kind.entropy_stable())
        throw esfv::Error(esfv::ErrorCode::ConfigError, "probe-scaling needs an ES-family flux");
      kind.validate();
      const esfv::GasModel gas{probe_gamma, 1.0};
      gas.validate();
      const auto levels = parse_list(probe_levels);
      const auto report = esfv::diffusion_scaling_probe(kind, levels, gas);
      if (probe_out.empty()) {
        esfv::write_scaling_csv(std::cout, report);
      } else {
        std::ofstream out(probe_out);
        esfv::write_scaling_csv(out, report);
        if (!out) throw esfv::Error(esfv::ErrorCode::ConfigError, "cannot write " + probe_out);
      }
    }
  } catch (const esfv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const bool config = e.code() == esfv::ErrorCode::ConfigError ||
                        e.code() == esfv::ErrorCode::InvalidArgument ||
                        e.code() == esfv::ErrorCode::InvalidGrid ||
                        e.code() == esfv::ErrorCode::DegenerateFit;
    return config ? kExitConfig : kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return 0;
}
