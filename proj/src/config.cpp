#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "esfv/error.hpp"
#include "esfv/experiments.hpp"

namespace esfv {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '-' || c == '_'; }), s.end());
  return s;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw Error(ErrorCode::ConfigError, fmt::format("invalid value '{}' for key '{}'", value, key));
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size() || !std::isfinite(x)) bad_value(key, value);
    return x;
  } catch (const std::logic_error&) {
    bad_value(key, value);
  }
}

long parse_long(const std::string& key, const std::string& value) {
  long x = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc{} || ptr != value.data() + value.size()) bad_value(key, value);
  return x;
}

int parse_int(const std::string& key, const std::string& value) {
  const long x = parse_long(key, value);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) bad_value(key, value);
  return static_cast<int>(x);
}

Experiment parse_experiment(const std::string& value) {
  const std::string v = lower(value);
  if (v == "soundwave") return Experiment::SoundWave;
  if (v == "contact") return Experiment::Contact;
  if (v == "purecontact") return Experiment::PureContact;
  if (v == "gresho") return Experiment::Gresho;
  bad_value("experiment", value);
}

Reconstruction parse_reconstruction(const std::string& value) {
  const std::string v = lower(value);
  if (v == "constant") return Reconstruction::Constant;
  if (v == "limitedlinear" || v == "linear") return Reconstruction::LimitedLinear;
  bad_value("reconstruction", value);
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::SoundWave: return "SoundWave";
    case Experiment::Contact: return "Contact";
    case Experiment::PureContact: return "PureContact";
    case Experiment::Gresho: return "Gresho";
  }
  return "unknown";
}

std::string_view to_string(Reconstruction r) {
  return r == Reconstruction::Constant ? "Constant" : "LimitedLinear";
}

double gresho_end_time(double revolutions) { return revolutions * 2.0 * std::numbers::pi / 5.0; }

RunConfig default_config(Experiment e) {
  RunConfig c;
  c.experiment = e;
  if (e == Experiment::Gresho) {
    c.nx = 32;
    c.ny = 32;
    c.reconstruction = Reconstruction::LimitedLinear;
    c.t_end = gresho_end_time();
  }
  return c;
}

Boundaries RunConfig::boundaries() const {
  if (experiment == Experiment::Gresho) return {BoundaryPolicy::Periodic, BoundaryPolicy::Periodic};
  return {BoundaryPolicy::Transmissive, BoundaryPolicy::Periodic};
}

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::ConfigError, what); };
  if (!(gamma > 1.0)) fail("gamma must exceed 1");
  if (!(gas_constant > 0.0)) fail("gas_constant must be positive");
  if (!(flux.m_cut >= 0.0 && flux.m_cut <= 1.0)) fail("m_cut must lie in [0, 1]");
  if (!(cfl > 0.0 && cfl <= 1.0)) fail("cfl must lie in (0, 1]");
  if (!(t_end >= 0.0)) fail("t_end must be non-negative");
  if (nx < 1 || ny < 1) fail("nx and ny must be at least 1");
  if (experiment != Experiment::Gresho && nx < 2) fail("Riemann problems need nx >= 2");
  if (experiment == Experiment::Gresho && !(mach_ref > 0.0)) fail("mach_ref must be positive");
  if (output_stride < 1) fail("output_stride must be at least 1");
  if (max_steps < 0) fail("max_steps must be non-negative");
}

ConfigMap parse_config_text(std::string_view text) {
  ConfigMap out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ConfigError, fmt::format("line {}: expected key=value", lineno));
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) throw Error(ErrorCode::ConfigError, fmt::format("line {}: empty key", lineno));
    out[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

ConfigMap read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

RunConfig resolve_config(const ConfigMap& values) {
  Experiment e = Experiment::SoundWave;
  if (auto it = values.find("experiment"); it != values.end()) e = parse_experiment(it->second);
  RunConfig c = default_config(e);
  for (const auto& [key, value] : values) {
    if (key == "experiment") continue;
    if (key == "flux") {
      const auto tag = parse_flux_tag(value);
      if (!tag) bad_value(key, value);
      c.flux.tag = *tag;
    } else if (key == "m_cut") {
      c.flux.m_cut = parse_double(key, value);
    } else if (key == "nx") {
      c.nx = parse_int(key, value);
    } else if (key == "ny") {
      c.ny = parse_int(key, value);
    } else if (key == "reconstruction") {
      c.reconstruction = parse_reconstruction(value);
    } else if (key == "cfl") {
      c.cfl = parse_double(key, value);
    } else if (key == "t_end") {
      c.t_end = parse_double(key, value);
    } else if (key == "gamma") {
      c.gamma = parse_double(key, value);
    } else if (key == "gas_constant") {
      c.gas_constant = parse_double(key, value);
    } else if (key == "mach_ref") {
      c.mach_ref = parse_double(key, value);
    } else if (key == "output_dir") {
      c.output_dir = value;
    } else if (key == "output_stride") {
      c.output_stride = parse_long(key, value);
    } else if (key == "max_steps") {
      c.max_steps = parse_long(key, value);
    } else {
      throw Error(ErrorCode::ConfigError, "unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

std::string describe(const RunConfig& c) {
  std::string s;
  s += fmt::format("experiment={}\n", to_string(c.experiment));
  s += fmt::format("flux={}\n", to_string(c.flux.tag));
  s += fmt::format("m_cut={:.17g}\n", c.flux.m_cut);
  s += fmt::format("nx={}\n", c.nx);
  s += fmt::format("ny={}\n", c.ny);
  s += fmt::format("reconstruction={}\n", to_string(c.reconstruction));
  s += fmt::format("cfl={:.17g}\n", c.cfl);
  s += fmt::format("t_end={:.17g}\n", c.t_end);
  s += fmt::format("gamma={:.17g}\n", c.gamma);
  s += fmt::format("gas_constant={:.17g}\n", c.gas_constant);
  s += fmt::format("mach_ref={:.17g}\n", c.mach_ref);
  s += fmt::format("output_dir={}\n", c.output_dir);
  s += fmt::format("output_stride={}\n", c.output_stride);
  s += fmt::format("max_steps={}\n", c.max_steps);
  return s;
}

}  // namespace esfv
