#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace esfv {

/// Fixed-size 4-vector; used for fluxes and generic state arithmetic.
using Vec4 = std::array<double, 4>;
/// Row-major 4x4 matrix.
using Mat4 = std::array<Vec4, 4>;

inline Vec4 operator+(const Vec4& a, const Vec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline Vec4 operator-(const Vec4& a, const Vec4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline Vec4 operator*(double s, const Vec4& a) {
  return {s * a[0], s * a[1], s * a[2], s * a[3]};
}
inline double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
inline double max_abs(const Vec4& a) {
  double m = 0.0;
  for (double x : a) m = std::fmax(m, std::fabs(x));
  return m;
}

inline Vec4 operator*(const Mat4& m, const Vec4& v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v), dot(m[3], v)};
}

inline Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

inline Mat4 transpose(const Mat4& a) {
  Mat4 t{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t[i][j] = a[j][i];
  return t;
}

inline Mat4 diagonal(const Vec4& d) {
  Mat4 m{};
  for (std::size_t i = 0; i < 4; ++i) m[i][i] = d[i];
  return m;
}

inline double max_abs(const Mat4& a) {
  double m = 0.0;
  for (const auto& row : a) m = std::fmax(m, max_abs(row));
  return m;
}

}  // namespace esfv
