#pragma once

#include <cstddef>
#include <vector>

#include "esfv/state.hpp"

namespace esfv {

/// Uniform Cartesian grid on [x_min, x_max] x [y_min, y_max].
struct Grid2D {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  int nx = 1;
  int ny = 1;
  double dx = 1.0;
  double dy = 1.0;

  double x_center(int i) const { return x_min + (i + 0.5) * dx; }
  double y_center(int j) const { return y_min + (j + 0.5) * dy; }
  /// Position of the interface between cells i-1 and i.
  double x_face(int i) const { return x_min + i * dx; }
  double y_face(int j) const { return y_min + j * dy; }
  double cell_area() const { return dx * dy; }
  std::size_t cell_count() const { return static_cast<std::size_t>(nx) * ny; }
};

struct Bounds {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
};

/// Throws Error(InvalidGrid) unless the bounds are ordered and nx, ny >= 1.
Grid2D build_grid(const Bounds& bounds, int nx, int ny);

enum class BoundaryPolicy { Periodic, Transmissive };

struct Boundaries {
  BoundaryPolicy x = BoundaryPolicy::Periodic;
  BoundaryPolicy y = BoundaryPolicy::Periodic;
};

/// Cell averages on a grid, stored row-major (j outer, i inner).
struct Field2D {
  Grid2D grid;
  std::vector<Conserved> cells;
  double time = 0.0;

  Field2D() = default;
  explicit Field2D(const Grid2D& g, double t = 0.0)
      : grid(g), cells(g.cell_count()), time(t) {}

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * grid.nx + i; }
  Conserved& at(int i, int j) { return cells[index(i, j)]; }
  const Conserved& at(int i, int j) const { return cells[index(i, j)]; }
};

/// Array of per-cell values with the same layout as Field2D::cells.
template <typename T>
struct CellArray {
  int nx = 0;
  int ny = 0;
  std::vector<T> values;

  CellArray() = default;
  CellArray(int nx_, int ny_) : nx(nx_), ny(ny_), values(static_cast<std::size_t>(nx_) * ny_) {}
  T& at(int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; }
  const T& at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
};

}  // namespace esfv
