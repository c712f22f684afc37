#include "esfv/diagnostics.hpp"

#include <array>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <ostream>

#include "esfv/error.hpp"

namespace esfv {

CellArray<double> entropy_field(const Field2D& field, const GasModel& gas) {
  const CellArray<Primitive> w = field_primitives(field, gas);
  CellArray<double> s(w.nx, w.ny);
  for (std::size_t k = 0; k < w.values.size(); ++k) s.values[k] = physical_entropy(w.values[k], gas);
  return s;
}

CellArray<double> entropy_density_field(const Field2D& field, const GasModel& gas) {
  const CellArray<Primitive> w = field_primitives(field, gas);
  CellArray<double> u(w.nx, w.ny);
  for (std::size_t k = 0; k < w.values.size(); ++k) u.values[k] = entropy_density(w.values[k], gas);
  return u;
}

double total_entropy(const Field2D& field, const GasModel& gas) {
  double sum = 0.0;
  for (double u : entropy_density_field(field, gas).values) sum += u;
  return sum * field.grid.cell_area();
}

double total_kinetic_energy(const Field2D& field) {
  double sum = 0.0;
  for (const Conserved& q : field.cells)
    sum += 0.5 * (q.mom_x * q.mom_x + q.mom_y * q.mom_y) / q.rho;
  return sum * field.grid.cell_area();
}

CellArray<double> mach_field(const Field2D& field, const GasModel& gas) {
  const CellArray<Primitive> w = field_primitives(field, gas);
  CellArray<double> m(w.nx, w.ny);
  for (std::size_t k = 0; k < w.values.size(); ++k)
    m.values[k] = std::sqrt(w.values[k].speed_squared()) / sound_speed(w.values[k], gas);
  return m;
}

double max_mach(const Field2D& field, const GasModel& gas) {
  double m = 0.0;
  for (double x : mach_field(field, gas).values) m = std::fmax(m, x);
  return m;
}

KineticEnergyBalance kinetic_energy_balance(const Field2D& field, const FluxKind& kind,
                                            const Boundaries& boundaries, const GasModel& gas) {
  const Grid2D& g = field.grid;
  const SpatialScheme scheme{kind, Reconstruction::Constant, boundaries};
  const CellArray<Conserved> rate = compute_rhs(field, scheme, gas);
  const CellArray<Primitive> w = field_primitives(field, gas);
  const double area = g.cell_area();

  KineticEnergyBalance out;
  for (std::size_t k = 0; k < w.values.size(); ++k) {
    const Primitive& p = w.values[k];
    const Conserved& r = rate.values[k];
    const double term = -0.5 * p.speed_squared() * r.rho + p.vel_x * r.mom_x + p.vel_y * r.mom_y;
    out.rate += term * area;
    out.scale += std::fabs(term) * area;
  }

  const FluxKind central{FluxTag::EC, 0.0};
  auto add_axis = [&](Direction axis) {
    const InterfaceStates states = reconstruct(field, Reconstruction::Constant, axis, boundaries, gas);
    const bool along_x = axis == Direction::X;
    const bool periodic = (along_x ? boundaries.x : boundaries.y) == BoundaryPolicy::Periodic;
    const double inv_h = 1.0 / (along_x ? g.dx : g.dy);
    const int n = states.faces_per_line - 1;
    // With periodic boundaries face n duplicates face 0.
    const int first = periodic ? 0 : 1;
    for (int line = 0; line < states.lines; ++line)
      for (int k = first; k < n; ++k) {
        const std::size_t f = static_cast<std::size_t>(line) * states.faces_per_line + k;
        const StatePair pair{states.left[f], states.right[f]};
        const Vec4 fc = numerical_flux(pair, central, axis, gas);
        double jump, pressure;
        if (along_x) {
          pressure = fc[1] - arithmetic_mean(pair.left.vel_x, pair.right.vel_x) * fc[0];
          jump = pair.right.vel_x - pair.left.vel_x;
        } else {
          pressure = fc[2] - arithmetic_mean(pair.left.vel_y, pair.right.vel_y) * fc[0];
          jump = pair.right.vel_y - pair.left.vel_y;
        }
        out.pressure_work += pressure * jump * inv_h * area;
      }
  };
  if (g.nx > 1) add_axis(Direction::X);
  if (g.ny > 1) add_axis(Direction::Y);
  out.residual = out.rate - out.pressure_work;
  return out;
}

double ke_balance_residual(const Field2D& field, const FluxKind& kind,
                           const Boundaries& boundaries, const GasModel& gas) {
  return kinetic_energy_balance(field, kind, boundaries, gas).residual;
}

double flux_entropy_dissipation(const StatePair& pair, const FluxKind& kind, const GasModel& gas) {
  const Vec4 dr = primitive_to_entropy_vars(pair.right, gas).as_vec() -
                  primitive_to_entropy_vars(pair.left, gas).as_vec();
  const double dpsi = pair.right.rho * pair.right.vel_x - pair.left.rho * pair.left.vel_x;
  return dot(dr, numerical_flux_x(pair, kind, gas)) - dpsi;
}

DiagnosticsRecord make_record(const Field2D& field, const SpatialScheme& scheme,
                              const GasModel& gas) {
  DiagnosticsRecord r;
  r.time = field.time;
  r.total_entropy = total_entropy(field, gas);
  r.total_kinetic_energy = total_kinetic_energy(field);
  r.max_mach = max_mach(field, gas);
  r.ke_balance_residual = ke_balance_residual(field, scheme.flux, scheme.boundaries, gas);
  return r;
}

void write_diagnostics_csv(std::ostream& out, std::span<const DiagnosticsRecord> records) {
  out << kDiagnosticsHeader << '\n';
  for (const DiagnosticsRecord& r : records)
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.time, r.total_entropy,
                       r.total_kinetic_energy, r.max_mach, r.ke_balance_residual);
}

Mat4 primitive_diffusion_matrix(const FluxKind& kind, const Primitive& w, const GasModel& gas) {
  const Mat4 q = diffusion_operator(kind, intermediate_state(w, gas), gas).assemble();
  return primitive_wrt_conserved(w, gas) * q * entropy_vars_wrt_primitive(w, gas);
}

namespace {

// Extended-precision assembly of (du/dq) R |Lambda| S R^T (dr/du). The
// structural zeros of the primitive matrix come from exact cancellations that
// the 1/M^2 non-dimensionalisation would otherwise amplify out of rounding.
using Real = long double;
using RVec = std::array<Real, 4>;
using RMat = std::array<RVec, 4>;

RMat multiply(const RMat& a, const RMat& b) {
  RMat c{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t j = 0; j < 4; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

RMat extended_primitive_diffusion(const Vec4& lambda, Real rho, Real u, Real v, Real p, Real gamma) {
  const Real g1 = gamma - 1;
  const Real q2 = u * u + v * v;
  const Real c = std::sqrt(gamma * p / rho);
  const Real h = c * c / g1 + q2 / 2;

  const RMat du_dq{{{1, 0, 0, 0},
                    {-u / rho, 1 / rho, 0, 0},
                    {-v / rho, 0, 1 / rho, 0},
                    {g1 * q2 / 2, -g1 * u, -g1 * v, g1}}};
  const RMat eig{{{1, 1, 0, 1},
                  {u - c, u, 0, u + c},
                  {v, v, -1, v},
                  {h - c * u, q2 / 2, -v, h + c * u}}};
  const RVec scaling{rho / (2 * gamma), g1 * rho / gamma, p, rho / (2 * gamma)};
  const RMat dr_du{{{gamma / (g1 * rho) - q2 / (2 * p), -rho * u / p, -rho * v / p,
                     -1 / (g1 * p) + rho * q2 / (2 * p * p)},
                    {u / p, rho / p, 0, -rho * u / (p * p)},
                    {v / p, 0, rho / p, -rho * v / (p * p)},
                    {-1 / p, 0, 0, rho / (p * p)}}};

  const RMat left = multiply(du_dq, eig);
  RMat right_t{};  // |Lambda| S R^T
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t j = 0; j < 4; ++j)
      right_t[k][j] = static_cast<Real>(lambda[k]) * scaling[k] * eig[j][k];
  return multiply(multiply(left, right_t), dr_du);
}

}  // namespace

Mat4 nondimensional_diffusion_matrix(const FluxKind& kind, double mach, const GasModel& gas) {
  const Primitive w{1.0, mach, 0.0, 1.0 / gas.gamma};
  const Vec4 lambda = lambda_matrix(kind, intermediate_state(w, gas));
  const Real gamma = gas.gamma;
  const RMat d = extended_primitive_diffusion(lambda, 1, mach, 0, 1 / gamma, gamma);
  // Reference scales: density 1, velocity M, pressure rho c^2 = 1, time 1/M.
  const Real m = mach;
  const RVec scale{1, 1 / m, 1 / m, 1};
  Mat4 out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      out[i][j] = static_cast<double>(scale[i] * d[i][j] / (scale[j] * m));
  return out;
}

ScalingReport diffusion_scaling_probe(const FluxKind& kind, std::span<const double> mach_levels,
                                      const GasModel& gas) {
  if (mach_levels.size() < 3) throw Error(ErrorCode::DegenerateFit, "need at least 3 Mach levels");
  for (std::size_t k = 0; k < mach_levels.size(); ++k) {
    if (!(mach_levels[k] > 0.0)) throw Error(ErrorCode::DegenerateFit, "Mach levels must be positive");
    if (k > 0 && !(mach_levels[k] < mach_levels[k - 1]))
      throw Error(ErrorCode::DegenerateFit, "Mach levels must be strictly decreasing");
  }
  if (mach_levels.front() / mach_levels.back() < 100.0 * (1.0 - 1e-12))
    throw Error(ErrorCode::DegenerateFit, "Mach levels must span at least two decades");

  ScalingReport report;
  report.kind = kind;
  report.mach_levels.assign(mach_levels.begin(), mach_levels.end());
  for (double m : mach_levels) report.matrices.push_back(nondimensional_diffusion_matrix(kind, m, gas));

  const std::size_t n = mach_levels.size();
  double mean_x = 0.0;
  for (double m : mach_levels) mean_x += std::log(m);
  mean_x /= static_cast<double>(n);
  double sxx = 0.0;
  for (double m : mach_levels) sxx += (std::log(m) - mean_x) * (std::log(m) - mean_x);

  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double peak = 0.0;
      for (const Mat4& d : report.matrices) peak = std::fmax(peak, std::fabs(d[i][j]));
      report.max_magnitude[i][j] = peak;
      if (peak < kScalingZeroThreshold) {
        report.fitted_exponents[i][j] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      std::vector<double> y(n);
      double mean_y = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        y[k] = std::log(std::fmax(std::fabs(report.matrices[k][i][j]), 1e-300));
        mean_y += y[k];
      }
      mean_y /= static_cast<double>(n);
      double sxy = 0.0;
      for (std::size_t k = 0; k < n; ++k) sxy += (std::log(mach_levels[k]) - mean_x) * (y[k] - mean_y);
      report.fitted_exponents[i][j] = sxy / sxx;
    }
  return report;
}

ScalingTable expected_diffusion_scaling(const FluxKind& kind) {
  using enum ScalingOrder;
  if (kind.low_mach())
    return {{{One, Zero, Zero, One},
             {Zero, One, Zero, InverseMach},
             {Zero, Zero, One, Zero},
             {Zero, Zero, Zero, One}}};
  return {{{One, Zero, Zero, InverseMach},
           {Zero, InverseMach, Zero, InverseMach},
           {Zero, Zero, One, One},
           {Zero, Zero, Zero, InverseMach}}};
}

ScalingCheck check_scaling(const ScalingReport& report, const ScalingTable& table,
                           ScalingCheckMode mode, double tol) {
  ScalingCheck out;
  auto fail = [&](std::size_t i, std::size_t j, const std::string& why) {
    out.passed = false;
    out.failures.push_back(fmt::format("entry ({},{}): {}", i + 1, j + 1, why));
  };
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double slope = report.fitted_exponents[i][j];
      const bool zero = std::isnan(slope);
      switch (table[i][j]) {
        case ScalingOrder::Zero:
          // Leading term vanishes; any remainder must be O(M).
          if (!zero && slope < 1.0 - tol) fail(i, j, fmt::format("expected 0 + O(M), slope {:.3f}", slope));
          break;
        case ScalingOrder::One:
          if (!zero && slope < -tol) fail(i, j, fmt::format("expected O(1), slope {:.3f}", slope));
          break;
        case ScalingOrder::InverseMach:
          if (mode == ScalingCheckMode::Attained) {
            if (zero || std::fabs(slope + 1.0) > tol)
              fail(i, j, fmt::format("expected slope -1, got {:.3f}", slope));
          } else if (!zero && slope < -1.0 - tol) {
            fail(i, j, fmt::format("expected at most O(1/M), slope {:.3f}", slope));
          }
          break;
      }
    }
  return out;
}

void write_scaling_csv(std::ostream& out, const ScalingReport& report) {
  out << "# flux=" << to_string(report.kind.tag) << " m_cut=" << fmt::format("{:.17g}", report.kind.m_cut)
      << '\n';
  out << "# mach_levels=";
  for (std::size_t k = 0; k < report.mach_levels.size(); ++k)
    out << (k ? ";" : "") << fmt::format("{:.17g}", report.mach_levels[k]);
  out << '\n';
  out << "row,col,slope,max_magnitude\n";
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      out << fmt::format("{},{},{:.17g},{:.17g}\n", i + 1, j + 1, report.fitted_exponents[i][j],
                         report.max_magnitude[i][j]);
}

}  // namespace esfv
