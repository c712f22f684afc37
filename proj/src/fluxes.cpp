#include "esfv/fluxes.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "esfv/error.hpp"

namespace esfv {

namespace {

constexpr std::array<std::pair<FluxTag, std::string_view>, 8> kFluxNames{{
    {FluxTag::Roe, "Roe"},
    {FluxTag::RoeLM, "Roe-LM"},
    {FluxTag::ES, "ES"},
    {FluxTag::ESKES, "ES-KES"},
    {FluxTag::ESLM, "ES-LM"},
    {FluxTag::ESKESLM, "ES-KES-LM"},
    {FluxTag::LLF, "LLF"},
    {FluxTag::EC, "EC"},
}};

std::string normalise(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '-' || c == '_') continue;
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

std::string_view to_string(FluxTag tag) {
  for (const auto& [t, name] : kFluxNames)
    if (t == tag) return name;
  return "unknown";
}

std::optional<FluxTag> parse_flux_tag(std::string_view name) {
  const std::string key = normalise(name);
  for (const auto& [t, n] : kFluxNames)
    if (normalise(n) == key) return t;
  return std::nullopt;
}

void FluxKind::validate() const {
  if (!(m_cut >= 0.0 && m_cut <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "m_cut must lie in [0, 1]");
}

bool FluxKind::entropy_stable() const {
  return tag == FluxTag::ES || tag == FluxTag::ESKES || tag == FluxTag::ESLM ||
         tag == FluxTag::ESKESLM;
}

bool FluxKind::low_mach() const {
  return tag == FluxTag::RoeLM || tag == FluxTag::ESLM || tag == FluxTag::ESKESLM;
}

bool FluxKind::kinetic_energy_stable() const {
  return tag == FluxTag::ESKES || tag == FluxTag::ESKESLM;
}

double IntermediateState::speed() const { return std::sqrt(vel_x * vel_x + vel_y * vel_y); }

Mat4 DiffusionOperator::assemble() const {
  Mat4 q{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 4; ++k)
        s += eigvecs[i][k] * eigvals[k] * scaling[k] * eigvecs[j][k];
      q[i][j] = s;
    }
  return q;
}

Vec4 DiffusionOperator::apply(const Vec4& dr) const {
  Vec4 out{};
  for (std::size_t k = 0; k < 4; ++k) {
    double proj = 0.0;
    for (std::size_t i = 0; i < 4; ++i) proj += eigvecs[i][k] * dr[i];
    const double w = eigvals[k] * scaling[k] * proj;
    for (std::size_t i = 0; i < 4; ++i) out[i] += eigvecs[i][k] * w;
  }
  return out;
}

Vec4 physical_flux_x(const Primitive& w, const GasModel& gas) {
  const double mass = w.rho * w.vel_x;
  const double energy = w.pressure / (gas.gamma - 1.0) + 0.5 * w.rho * w.speed_squared();
  return {mass, mass * w.vel_x + w.pressure, mass * w.vel_y, (energy + w.pressure) * w.vel_x};
}

Vec4 physical_flux_x(const Conserved& q, const GasModel& gas) {
  const Primitive w = conserved_to_primitive(q, gas);
  return {q.mom_x, q.mom_x * w.vel_x + w.pressure, q.mom_x * w.vel_y,
          (q.energy + w.pressure) * w.vel_x};
}

Vec4 entropy_conservative_flux(const StatePair& pair, const GasModel& gas) {
  const Primitive& l = pair.left;
  const Primitive& r = pair.right;
  const double rho_log = logarithmic_mean(l.rho, r.rho);
  const double beta_log = logarithmic_mean(l.beta(), r.beta());
  const double u_bar = arithmetic_mean(l.vel_x, r.vel_x);
  const double v_bar = arithmetic_mean(l.vel_y, r.vel_y);
  const double q2_bar = arithmetic_mean(l.speed_squared(), r.speed_squared());
  const double p_tilde = average_pressure(pair);

  const double mass = rho_log * u_bar;
  const double mom_x = u_bar * mass + p_tilde;
  const double mom_y = v_bar * mass;
  const double energy = (1.0 / (2.0 * (gas.gamma - 1.0) * beta_log) - 0.5 * q2_bar) * mass +
                        u_bar * mom_x + v_bar * mom_y;
  return {mass, mom_x, mom_y, energy};
}

IntermediateState intermediate_state(const StatePair& pair, const GasModel& gas) {
  const double beta_log = logarithmic_mean(pair.left.beta(), pair.right.beta());
  IntermediateState w;
  w.vel_x = arithmetic_mean(pair.left.vel_x, pair.right.vel_x);
  w.vel_y = arithmetic_mean(pair.left.vel_y, pair.right.vel_y);
  w.pressure = arithmetic_mean(pair.left.pressure, pair.right.pressure);
  w.rho = 2.0 * w.pressure * beta_log;
  w.sound_speed = std::sqrt(gas.gamma * w.pressure / w.rho);
  w.enthalpy = w.sound_speed * w.sound_speed / (gas.gamma - 1.0) +
               0.5 * (w.vel_x * w.vel_x + w.vel_y * w.vel_y);
  return w;
}

IntermediateState intermediate_state(const Primitive& w, const GasModel& gas) {
  return intermediate_state(StatePair{w, w}, gas);
}

Mat4 eigenvector_matrix(const IntermediateState& w) {
  const double u = w.vel_x, v = w.vel_y, c = w.sound_speed, h = w.enthalpy;
  const double half_q2 = 0.5 * (u * u + v * v);
  return Mat4{{{1.0, 1.0, 0.0, 1.0},
               {u - c, u, 0.0, u + c},
               {v, v, -1.0, v},
               {h - c * u, half_q2, -v, h + c * u}}};
}

Vec4 scaling_matrix(const IntermediateState& w, const GasModel& gas) {
  const double g = gas.gamma;
  return {w.rho / (2.0 * g), (g - 1.0) * w.rho / g, w.pressure, w.rho / (2.0 * g)};
}

double rescaled_sound_speed(double c, double speed, double m_cut) {
  const double mach = speed / c;
  return c * std::max(std::min(mach, 1.0), m_cut);
}

Vec4 lambda_matrix(const FluxKind& kind, const IntermediateState& w) {
  const double u = w.vel_x;
  const double c = kind.low_mach() ? rescaled_sound_speed(w.sound_speed, w.speed(), kind.m_cut)
                                   : w.sound_speed;
  const double au = std::fabs(u);
  if (kind.kinetic_energy_stable()) return {au + c, au, au, au + c};
  return {std::fabs(u - c), au, au, std::fabs(u + c)};
}

DiffusionOperator diffusion_operator(const FluxKind& kind, const IntermediateState& w,
                                     const GasModel& gas) {
  return {eigenvector_matrix(w), scaling_matrix(w, gas), lambda_matrix(kind, w)};
}

Vec4 entropy_diffusion(const StatePair& pair, const FluxKind& kind, const GasModel& gas) {
  const Vec4 dr = primitive_to_entropy_vars(pair.right, gas).as_vec() -
                  primitive_to_entropy_vars(pair.left, gas).as_vec();
  const DiffusionOperator op = diffusion_operator(kind, intermediate_state(pair, gas), gas);
  return -0.5 * op.apply(dr);
}

Vec4 roe_flux(const StatePair& pair, bool low_mach, double m_cut, const GasModel& gas) {
  const Primitive& l = pair.left;
  const Primitive& r = pair.right;
  const GasModel& g = gas;
  const Conserved ql = primitive_to_conserved(l, g);
  const Conserved qr = primitive_to_conserved(r, g);

  const double sl = std::sqrt(l.rho);
  const double sr = std::sqrt(r.rho);
  const double wsum = sl + sr;
  const double u = (sl * l.vel_x + sr * r.vel_x) / wsum;
  const double v = (sl * l.vel_y + sr * r.vel_y) / wsum;
  const double hl = (ql.energy + l.pressure) / l.rho;
  const double hr = (qr.energy + r.pressure) / r.rho;
  const double h = (sl * hl + sr * hr) / wsum;
  const double q2 = u * u + v * v;
  const double c2 = (g.gamma - 1.0) * (h - 0.5 * q2);
  if (!(c2 > 1e-28))
    throw Error(ErrorCode::DegenerateEigensystem, "Roe state sound speed vanishes");
  const double c = std::sqrt(c2);

  const Vec4 dq = qr.as_vec() - ql.as_vec();
  // Wave strengths alpha = R^-1 dq for the eigenvector ordering of
  // eigenvector_matrix (shear column (0, 0, -1, -v)).
  const double a3 = v * dq[0] - dq[2];
  const double e_bar = dq[3] - (dq[2] - v * dq[0]) * v;
  const double a2 = (g.gamma - 1.0) / c2 * (dq[0] * (h - u * u) + u * dq[1] - e_bar);
  const double acoustic = (dq[1] - u * dq[0]) / c;
  const double a1 = 0.5 * (dq[0] - a2 - acoustic);
  const double a4 = 0.5 * (dq[0] - a2 + acoustic);

  const double c_ac = low_mach ? rescaled_sound_speed(c, std::sqrt(q2), m_cut) : c;
  const Vec4 lam{std::fabs(u - c_ac), std::fabs(u), std::fabs(u), std::fabs(u + c_ac)};
  const Vec4 alpha{a1, a2, a3, a4};
  const double rho_roe = sl * sr;
  const IntermediateState roe{rho_roe, u, v, rho_roe * c2 / g.gamma, c, h};
  const Mat4 rm = eigenvector_matrix(roe);

  const Vec4 fl = physical_flux_x(l, g);
  const Vec4 fr = physical_flux_x(r, g);
  Vec4 flux = 0.5 * (fl + fr);
  for (std::size_t k = 0; k < 4; ++k) {
    const double w = 0.5 * lam[k] * alpha[k];
    for (std::size_t i = 0; i < 4; ++i) flux[i] -= w * rm[i][k];
  }
  return flux;
}

Vec4 roe_flux(const Conserved& left, const Conserved& right, bool low_mach, double m_cut,
              const GasModel& gas) {
  return roe_flux(StatePair{conserved_to_primitive(left, gas), conserved_to_primitive(right, gas)},
                  low_mach, m_cut, gas);
}

Vec4 llf_flux(const StatePair& pair, const GasModel& gas) {
  const double alpha = std::max(std::fabs(pair.left.vel_x) + sound_speed(pair.left, gas),
                                std::fabs(pair.right.vel_x) + sound_speed(pair.right, gas));
  const Vec4 dq = primitive_to_conserved(pair.right, gas).as_vec() -
                  primitive_to_conserved(pair.left, gas).as_vec();
  return 0.5 * (physical_flux_x(pair.left, gas) + physical_flux_x(pair.right, gas)) -
         (0.5 * alpha) * dq;
}

Vec4 numerical_flux_x(const StatePair& pair, const FluxKind& kind, const GasModel& gas) {
  switch (kind.tag) {
    case FluxTag::Roe: return roe_flux(pair, false, kind.m_cut, gas);
    case FluxTag::RoeLM: return roe_flux(pair, true, kind.m_cut, gas);
    case FluxTag::LLF: return llf_flux(pair, gas);
    case FluxTag::EC: return entropy_conservative_flux(pair, gas);
    case FluxTag::ES:
    case FluxTag::ESKES:
    case FluxTag::ESLM:
    case FluxTag::ESKESLM:
      return entropy_conservative_flux(pair, gas) + entropy_diffusion(pair, kind, gas);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown flux kind");
}

Vec4 numerical_flux(const StatePair& pair, const FluxKind& kind, Direction dir,
                    const GasModel& gas) {
  if (dir == Direction::X) return numerical_flux_x(pair, kind, gas);
  const StatePair rotated{swap_velocity(pair.left), swap_velocity(pair.right)};
  return swap_momentum(numerical_flux_x(rotated, kind, gas));
}

Vec4 numerical_flux(const Conserved& left, const Conserved& right, const FluxKind& kind,
                    Direction dir, const GasModel& gas) {
  return numerical_flux(StatePair{conserved_to_primitive(left, gas), conserved_to_primitive(right, gas)},
                        kind, dir, gas);
}

}  // namespace esfv
