#include "esfv/solver.hpp"

#include <algorithm>
#include <cmath>

#include "esfv/error.hpp"

namespace esfv {

namespace {

int ghost_index(int g, int n, BoundaryPolicy policy) {
  if (g >= 0 && g < n) return g;
  if (policy == BoundaryPolicy::Periodic) return ((g % n) + n) % n;
  return std::clamp(g, 0, n - 1);
}

bool admissible(const Primitive& w) {
  return w.rho >= kAdmissibilityFloor && w.pressure >= kAdmissibilityFloor;
}

Primitive offset(const Primitive& w, const Primitive& slope, double s) {
  return {w.rho + s * slope.rho, w.vel_x + s * slope.vel_x, w.vel_y + s * slope.vel_y,
          w.pressure + s * slope.pressure};
}

[[noreturn]] void rethrow_at(const Error& e, int i, int j, double time) {
  if (e.where()) throw e;
  throw Error(e.code(), e.detail(), CellLocation{i, j, time});
}

}  // namespace

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return a > 0.0 ? std::min(a, b) : std::max(a, b);
}

void reconstruct_line(std::span<const Primitive> padded, Reconstruction scheme,
                      std::span<Primitive> left, std::span<Primitive> right) {
  const int n = static_cast<int>(padded.size()) - 2 * kGhostCells;
  auto cell = [&](int i) -> const Primitive& { return padded[i + kGhostCells]; };

  if (scheme == Reconstruction::Constant) {
    for (int k = 0; k <= n; ++k) {
      left[k] = cell(k - 1);
      right[k] = cell(k);
    }
    return;
  }

  // Slopes for cells -1 .. n; the outermost ghost layer only feeds differences.
  std::vector<Primitive> slope(static_cast<std::size_t>(n) + 2);
  for (int i = -1; i <= n; ++i) {
    const Primitive& wm = cell(i - 1);
    const Primitive& w = cell(i);
    const Primitive& wp = cell(i + 1);
    Primitive s{minmod(w.rho - wm.rho, wp.rho - w.rho),
                minmod(w.vel_x - wm.vel_x, wp.vel_x - w.vel_x),
                minmod(w.vel_y - wm.vel_y, wp.vel_y - w.vel_y),
                minmod(w.pressure - wm.pressure, wp.pressure - w.pressure)};
    if (!admissible(offset(w, s, 0.5)) || !admissible(offset(w, s, -0.5))) s = Primitive{};
    slope[static_cast<std::size_t>(i + 1)] = s;
  }
  for (int k = 0; k <= n; ++k) {
    left[k] = offset(cell(k - 1), slope[static_cast<std::size_t>(k)], 0.5);
    right[k] = offset(cell(k), slope[static_cast<std::size_t>(k + 1)], -0.5);
  }
}

CellArray<Primitive> field_primitives(const Field2D& field, const GasModel& gas) {
  const Grid2D& g = field.grid;
  CellArray<Primitive> w(g.nx, g.ny);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      try {
        w.at(i, j) = conserved_to_primitive(field.at(i, j), gas);
      } catch (const Error& e) {
        rethrow_at(e, i, j, field.time);
      }
    }
  return w;
}

namespace {

InterfaceStates reconstruct_from(const CellArray<Primitive>& w, Reconstruction scheme,
                                 Direction axis, const Boundaries& boundaries) {
  const bool along_x = axis == Direction::X;
  const int n = along_x ? w.nx : w.ny;
  const int lines = along_x ? w.ny : w.nx;
  const BoundaryPolicy policy = along_x ? boundaries.x : boundaries.y;

  InterfaceStates out;
  out.axis = axis;
  out.faces_per_line = n + 1;
  out.lines = lines;
  out.left.resize(static_cast<std::size_t>(n + 1) * lines);
  out.right.resize(out.left.size());

  std::vector<Primitive> padded(static_cast<std::size_t>(n) + 2 * kGhostCells);
  for (int line = 0; line < lines; ++line) {
    for (int g = -kGhostCells; g < n + kGhostCells; ++g) {
      const int c = ghost_index(g, n, policy);
      padded[static_cast<std::size_t>(g + kGhostCells)] = along_x ? w.at(c, line) : w.at(line, c);
    }
    const std::size_t base = static_cast<std::size_t>(line) * (n + 1);
    reconstruct_line(padded, scheme, std::span(out.left).subspan(base, n + 1),
                     std::span(out.right).subspan(base, n + 1));
  }
  return out;
}

}  // namespace

InterfaceStates reconstruct(const Field2D& field, Reconstruction scheme, Direction axis,
                            const Boundaries& boundaries, const GasModel& gas) {
  return reconstruct_from(field_primitives(field, gas), scheme, axis, boundaries);
}

std::vector<Vec4> face_fluxes(const InterfaceStates& states, const FluxKind& kind,
                              const GasModel& gas) {
  std::vector<Vec4> flux(states.left.size());
  for (int line = 0; line < states.lines; ++line)
    for (int k = 0; k < states.faces_per_line; ++k) {
      const std::size_t f = static_cast<std::size_t>(line) * states.faces_per_line + k;
      try {
        flux[f] = numerical_flux(StatePair{states.left[f], states.right[f]}, kind, states.axis, gas);
      } catch (const Error& e) {
        const int cell = std::min(k, states.faces_per_line - 2);
        if (states.axis == Direction::X) rethrow_at(e, cell, line, 0.0);
        rethrow_at(e, line, cell, 0.0);
      }
    }
  return flux;
}

CellArray<Conserved> compute_rhs(const Field2D& field, const SpatialScheme& scheme,
                                 const GasModel& gas) {
  const Grid2D& g = field.grid;
  const CellArray<Primitive> w = field_primitives(field, gas);
  CellArray<Conserved> rate(g.nx, g.ny);

  auto add_axis = [&](Direction axis) {
    const InterfaceStates states = reconstruct_from(w, scheme.reconstruction, axis, scheme.boundaries);
    std::vector<Vec4> flux;
    try {
      flux = face_fluxes(states, scheme.flux, gas);
    } catch (const Error& e) {
      if (e.where()) {
        throw Error(e.code(), e.detail(), CellLocation{e.where()->i, e.where()->j, field.time});
      }
      throw;
    }
    const bool along_x = axis == Direction::X;
    const double inv_h = 1.0 / (along_x ? g.dx : g.dy);
    const int stride = states.faces_per_line;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const std::size_t f = along_x ? static_cast<std::size_t>(j) * stride + i
                                      : static_cast<std::size_t>(i) * stride + j;
        const Vec4 d = flux[f + 1] - flux[f];
        rate.at(i, j) += Conserved::from_vec(-inv_h * d);
      }
  };

  // A single cell along an axis sees identical states on both faces, so the
  // flux difference vanishes identically.
  if (g.nx > 1) add_axis(Direction::X);
  if (g.ny > 1) add_axis(Direction::Y);
  return rate;
}

double cfl_dt(const Field2D& field, double cfl, const GasModel& gas) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw Error(ErrorCode::InvalidArgument, "cfl must lie in (0, 1]");
  const Grid2D& g = field.grid;
  const CellArray<Primitive> w = field_primitives(field, gas);
  double rate = 0.0;
  for (const Primitive& p : w.values) {
    const double c = sound_speed(p, gas);
    rate = std::max(rate, (std::fabs(p.vel_x) + c) / g.dx + (std::fabs(p.vel_y) + c) / g.dy);
  }
  return cfl / rate;
}

namespace {

Field2D axpy(const Field2D& base, double h, const CellArray<Conserved>& rate) {
  Field2D out = base;
  for (std::size_t k = 0; k < out.cells.size(); ++k) out.cells[k] += h * rate.values[k];
  return out;
}

}  // namespace

Field2D ssprk43_step(const Field2D& field, double dt, const RhsEvaluator& rhs) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time step must be positive");
  const double h = 0.5 * dt;
  const double t0 = field.time;

  Field2D q1 = axpy(field, h, rhs(field));
  q1.time = t0 + h;
  Field2D q2 = axpy(q1, h, rhs(q1));
  q2.time = t0 + dt;
  const Field2D q2s = axpy(q2, h, rhs(q2));
  Field2D q3 = field;
  for (std::size_t k = 0; k < q3.cells.size(); ++k)
    q3.cells[k] = (2.0 / 3.0) * field.cells[k] + (1.0 / 3.0) * q2s.cells[k];
  q3.time = t0 + h;
  Field2D out = axpy(q3, h, rhs(q3));
  out.time = t0 + dt;
  return out;
}

Field2D evolve(Field2D field, double t_end, const SpatialScheme& scheme, const GasModel& gas,
               const EvolveOptions& options) {
  if (t_end < field.time)
    throw Error(ErrorCode::InvalidArgument, "t_end lies before the field time");
  scheme.flux.validate();
  const RhsEvaluator rhs = [&](const Field2D& f) { return compute_rhs(f, scheme, gas); };

  long step = 0;
  while (field.time < t_end) {
    if (options.max_steps > 0 && step >= options.max_steps) break;
    double dt = cfl_dt(field, options.cfl, gas);
    const bool last = field.time + dt >= t_end;
    if (last) dt = t_end - field.time;
    field = ssprk43_step(field, dt, rhs);
    if (last) field.time = t_end;
    ++step;

    for (int j = 0; j < field.grid.ny; ++j)
      for (int i = 0; i < field.grid.nx; ++i) {
        const Conserved& q = field.at(i, j);
        if (!std::isfinite(q.rho) || !std::isfinite(q.mom_x) || !std::isfinite(q.mom_y) ||
            !std::isfinite(q.energy))
          throw Error(ErrorCode::NonFiniteState, "non-finite cell value",
                      CellLocation{i, j, field.time});
      }
    if (options.on_step) options.on_step(field, step, dt);
  }
  return field;
}

}  // namespace esfv
