#pragma once

#include <doctest.h>

#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "epsdelta/errors.hpp"
#include "epsdelta/numerics.hpp"

namespace testutil {

/// Asserts that `fn` throws epsdelta::Error with the given kind.
template <class Fn>
epsdelta::Error expect_error(epsdelta::ErrorKind kind, Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
  } catch (const epsdelta::Error& e) {
    CHECK(e.kind() == kind);
    return e;
  }
  FAIL("expected epsdelta::Error");
  return epsdelta::Error(kind, "unreachable");
}

/// Wraps a callable and records every evaluation point, so tests can
/// reconstruct the search trajectory without touching the implementation.
struct Probe {
  std::function<double(double)> target;
  mutable std::vector<double> calls;

  double operator()(double y) const {
    calls.push_back(y);
    return target(y);
  }

  std::function<double(double)> as_function() const {
    return [this](double y) { return (*this)(y); };
  }
};

/// Interval widths of a ternary-search trajectory: evaluations arrive in
/// (p, q) pairs with q - p = w/3, followed by the two terminating
/// endpoint evaluations.
inline std::vector<double> ternary_widths(const std::vector<double>& calls) {
  std::vector<double> widths;
  const std::size_t pairs = calls.size() >= 2 ? (calls.size() - 2) / 2 : 0;
  for (std::size_t i = 0; i < pairs; ++i)
    widths.push_back(3.0 * (calls[2 * i + 1] - calls[2 * i]));
  return widths;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eed5eedU);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace testutil
