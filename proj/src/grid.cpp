#include "esfv/grid.hpp"

#include "esfv/error.hpp"

namespace esfv {

Grid2D build_grid(const Bounds& b, int nx, int ny) {
  if (!(b.x_min < b.x_max) || !(b.y_min < b.y_max))
    throw Error(ErrorCode::InvalidGrid, "domain bounds must be ordered");
  if (nx < 1 || ny < 1) throw Error(ErrorCode::InvalidGrid, "cell counts must be at least 1");
  Grid2D g;
  g.x_min = b.x_min;
  g.x_max = b.x_max;
  g.y_min = b.y_min;
  g.y_max = b.y_max;
  g.nx = nx;
  g.ny = ny;
  g.dx = (b.x_max - b.x_min) / nx;
  g.dy = (b.y_max - b.y_min) / ny;
  return g;
}

}  // namespace esfv
