#pragma once

#include "esfv/state.hpp"

namespace esfv {

/// Left and right states at an interface.
struct StatePair {
  Primitive left;
  Primitive right;
};

inline double arithmetic_mean(double a, double b) { return 0.5 * (a + b); }

/// (a - b) / (ln a - ln b), continuous through a == b. Throws
/// Error(NonPositiveInput) for non-positive arguments.
double logarithmic_mean(double a, double b);

namespace detail {
/// Below this value of ((a-b)/(a+b))^2 the series branch is used.
inline constexpr double kLogMeanSwitch = 1e-2;
double logarithmic_mean_series(double a, double b);
double logarithmic_mean_direct(double a, double b);
}  // namespace detail

/// rho_bar / (2 beta_bar): the pressure consistent with a harmonic average
/// of the temperature.
double average_pressure(const StatePair& pair);

}  // namespace esfv
