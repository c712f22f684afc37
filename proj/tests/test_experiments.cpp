#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "esfv/error.hpp"
#include "esfv/experiments.hpp"

using namespace esfv;

namespace {

const GasModel kAir{1.4, 1.0};

Vec4 totals(const Field2D& f) {
  Vec4 t{};
  for (const auto& c : f.cells) t = t + f.grid.cell_area() * c.as_vec();
  return t;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("Riemann setups") {
  const auto f = setup_sound_wave(100, kAir);
  CHECK(f.grid.nx == 100);
  const auto wl = conserved_to_primitive(f.at(49, 0), kAir);
  const auto wr = conserved_to_primitive(f.at(50, 0), kAir);
  CHECK(wl.rho == 1.0);
  CHECK(wl.vel_x == doctest::Approx(0.75));
  CHECK(wl.pressure == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(wr.rho == 0.125);
  CHECK(wr.vel_x == 0.0);
  CHECK(wr.pressure == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(totals(f)[0] == doctest::Approx(0.5625).epsilon(1e-15));
  for (const auto& c : f.cells) CHECK(c.mom_y == 0.0);

  const auto c = setup_contact(100, kAir);
  for (std::size_t k = 0; k < c.cells.size(); ++k) CHECK(max_abs(c.cells[k].as_vec() - f.cells[k].as_vec()) == 0.0);

  const auto pc = setup_pure_contact(100, kAir);
  CHECK(totals(pc)[1] == 0.0);
  CHECK(pc.at(0, 0).rho == 1.0);
  CHECK(pc.at(99, 0).rho == 0.5);
}

TEST_CASE("Gresho vortex profile") {
  const double pc = gresho_center_pressure(0.1, kAir);
  CHECK(pc == doctest::Approx(35.714285714285714).epsilon(1e-14));
  CHECK(gresho_pressure(0.0, pc) == pc);
  CHECK(gresho_azimuthal_velocity(0.0) == 0.0);
  CHECK(gresho_azimuthal_velocity(0.2) == doctest::Approx(1.0));
  CHECK(gresho_pressure(0.2, pc) == doctest::Approx(pc + 0.5).epsilon(1e-15));
  const double outer = 4.0 * std::log(2.0) - 2.0;
  CHECK(outer == doctest::Approx(0.772588722239781).epsilon(1e-14));
  CHECK(gresho_pressure(0.4, pc) == doctest::Approx(pc + outer).epsilon(1e-14));
  CHECK(gresho_pressure(0.7, pc) == doctest::Approx(pc + outer).epsilon(1e-14));
  CHECK(gresho_azimuthal_velocity(0.5) == 0.0);
  // Pressure is continuous at both branch switches.
  CHECK(gresho_pressure(0.4 - 1e-12, pc) == doctest::Approx(gresho_pressure(0.4, pc)).epsilon(1e-10));
  CHECK(gresho_pressure(0.2 - 1e-12, pc) == doctest::Approx(gresho_pressure(0.2, pc)).epsilon(1e-10));

  // Local Mach number at the core edge.
  const double c_edge = std::sqrt(1.4 * (pc + 0.5));
  CHECK(1.0 / c_edge == doctest::Approx(0.1 * std::sqrt(2.0)).epsilon(0.01));

  for (double m : {0.1, 0.01}) {
    const auto g = setup_gresho(32, 32, m, kAir);
    CHECK(max_mach(g, kAir) == doctest::Approx(std::sqrt(2.0) * m).epsilon(0.1));
  }
  CHECK(gresho_end_time() == doctest::Approx(0.1 * 2.0 * std::numbers::pi / 5.0).epsilon(1e-15));
}

TEST_CASE("config parsing and resolution") {
  const auto map = parse_config_text("# comment\nexperiment = gresho\n\nflux=ES-KES-LM\nm_cut = 0.05\nnx=16\nny=16\n");
  CHECK(map.at("experiment") == "gresho");
  const auto cfg = resolve_config(map);
  CHECK(cfg.experiment == Experiment::Gresho);
  CHECK(cfg.flux.tag == FluxTag::ESKESLM);
  CHECK(cfg.flux.m_cut == 0.05);
  CHECK(cfg.reconstruction == Reconstruction::LimitedLinear);
  CHECK(cfg.t_end == doctest::Approx(gresho_end_time()));
  CHECK(cfg.boundaries().x == BoundaryPolicy::Periodic);

  const auto back = resolve_config(parse_config_text(describe(cfg)));
  CHECK(describe(back) == describe(cfg));

  const auto sw = resolve_config({});
  CHECK(sw.experiment == Experiment::SoundWave);
  CHECK(sw.nx == 100);
  CHECK(sw.reconstruction == Reconstruction::Constant);
  CHECK(sw.boundaries().x == BoundaryPolicy::Transmissive);

  for (const char* bad : {"colour = red\n", "nx = ten\n", "flux = hllc\n", "gamma = 1.0\n", "cfl = 0\n",
                          "m_cut = 2\n", "nx = -3\n", "experiment = sod\n", "no equals sign\n"}) {
    CAPTURE(bad);
    try {
      resolve_config(parse_config_text(bad));
      FAIL("expected ConfigError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConfigError);
    }
  }
}

TEST_CASE("run writes deterministic CSVs with the config embedded") {
  const auto dir = std::filesystem::temp_directory_path() / "esfv_test_run";
  std::filesystem::remove_all(dir);
  RunConfig cfg;
  cfg.flux = {FluxTag::ESKESLM, 0.0};
  cfg.nx = 50;
  cfg.t_end = 0.05;
  cfg.output_stride = 3;
  cfg.output_dir = (dir / "a").string();
  const auto a = run(cfg);
  cfg.output_dir = (dir / "b").string();
  const auto b = run(cfg);

  for (const char* name : {"field.csv", "diagnostics.csv"}) {
    const std::string ta = slurp(dir / "a" / name), tb = slurp(dir / "b" / name);
    CHECK_FALSE(ta.empty());
    // Identical apart from the output_dir line of the config block.
    auto strip = [](std::string s) {
      std::istringstream in(s);
      std::string line, outs;
      while (std::getline(in, line))
        if (line.find("output_dir") == std::string::npos) outs += line + "\n";
      return outs;
    };
    CHECK(strip(ta) == strip(tb));
    CHECK(ta.rfind("# ", 0) == 0);
  }
  const std::string field = slurp(dir / "a" / "field.csv");
  CHECK(field.find(std::string("\n") + kFieldHeader + "\n") != std::string::npos);
  CHECK(slurp(dir / "a" / "diagnostics.csv").find(kDiagnosticsHeader) != std::string::npos);

  REQUIRE(a.records.size() >= 2);
  for (std::size_t k = 1; k < a.records.size(); ++k) CHECK(a.records[k].time > a.records[k - 1].time);
  CHECK(a.records.back().time == 0.05);
  CHECK(a.final_field.time == 0.05);
  CHECK(a.steps == b.steps);
  std::filesystem::remove_all(dir);
}

TEST_CASE("pure contact is preserved by the entropy-stable fluxes") {
  for (FluxTag t : {FluxTag::ESLM, FluxTag::ESKESLM, FluxTag::ES}) {
    RunConfig cfg;
    cfg.experiment = Experiment::PureContact;
    cfg.flux = {t, 0.0};
    cfg.t_end = 10.0;
    cfg.max_steps = 100;
    const auto r = run(cfg);
    CHECK(r.steps == 100);
    double worst = 0.0;
    for (std::size_t k = 0; k < r.final_field.cells.size(); ++k)
      worst = std::fmax(worst, std::fabs(r.final_field.cells[k].rho - r.initial_field.cells[k].rho));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("downsampling and L1 error") {
  const auto fine = setup_sound_wave(1000, kAir);
  const auto coarse_ref = downsample_density(fine, 10);
  REQUIRE(coarse_ref.size() == 100);
  CHECK(coarse_ref[0] == doctest::Approx(1.0));
  CHECK(coarse_ref[99] == doctest::Approx(0.125));
  const auto coarse = setup_sound_wave(100, kAir);
  CHECK(l1_density_error(coarse, coarse_ref) <= 1e-14);
  CHECK_THROWS_AS(downsample_density(fine, 7), Error);
}
