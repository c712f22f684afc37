#include "esfv/averages.hpp"

#include <cmath>
#include <utility>

#include "esfv/error.hpp"

namespace esfv {

namespace detail {

// With f = (a-b)/(a+b) and u = f^2, ln(a/b) = 2f (1 + u/3 + u^2/5 + ...).
// Terms through u^7/15 keep the truncation error below 1e-17 at the switch.
double logarithmic_mean_series(double a, double b) {
  const double f = (a - b) / (a + b);
  const double u = f * f;
  const double series =
      1.0 + u * (1.0 / 3.0 +
                 u * (1.0 / 5.0 +
                      u * (1.0 / 7.0 +
                           u * (1.0 / 9.0 + u * (1.0 / 11.0 + u * (1.0 / 13.0 + u / 15.0))))));
  return 0.5 * (a + b) / series;
}

double logarithmic_mean_direct(double a, double b) { return (a - b) / std::log(a / b); }

}  // namespace detail

double logarithmic_mean(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw Error(ErrorCode::NonPositiveInput, "logarithmic mean needs positive arguments");
  if (a < b) std::swap(a, b);  // bitwise symmetric in its arguments
  const double f = (a - b) / (a + b);
  if (f * f < detail::kLogMeanSwitch) return detail::logarithmic_mean_series(a, b);
  return detail::logarithmic_mean_direct(a, b);
}

double average_pressure(const StatePair& pair) {
  const double rho_bar = arithmetic_mean(pair.left.rho, pair.right.rho);
  const double beta_bar = arithmetic_mean(pair.left.beta(), pair.right.beta());
  return rho_bar / (2.0 * beta_bar);
}

}  // namespace esfv
