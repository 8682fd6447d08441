#pragma once

#include <cmath>
#include <limits>

namespace epsdelta::fd {

// Central-difference step sizes balancing truncation against rounding:
// cbrt(eps) for first derivatives, eps^(1/4) for second derivatives,
// scaled by the magnitude of the evaluation point.

inline double step_first(double y) {
  return std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::abs(y));
}

inline double step_second(double y) {
  return std::pow(std::numeric_limits<double>::epsilon(), 0.25) * std::max(1.0, std::abs(y));
}

template <class F>
double central_first(F&& f, double y) {
  const double h = step_first(y);
  return (f(y + h) - f(y - h)) / (2.0 * h);
}

template <class F>
double central_second(F&& f, double y) {
  const double h = step_second(y);
  return (f(y + h) - 2.0 * f(y) + f(y - h)) / (h * h);
}

}  // namespace epsdelta::fd
