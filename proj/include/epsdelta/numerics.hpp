#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "epsdelta/errors.hpp"

namespace epsdelta {

/// Open interval with a finite set of excluded interior points (poles).
struct Domain {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  std::vector<double> excluded;  // sorted, strictly inside (lower, upper)

  static Domain all() { return Domain{}; }
  static Domain open(double lo, double hi) { return Domain{lo, hi, {}}; }

  bool contains(double y) const;

  /// Distance from x to the nearest bound or excluded point (+inf if none).
  double distance_to_edge(double x) const;

  /// Intersect [lo, hi] with the domain and keep the connected component
  /// containing x; clipped edges are nudged inward so they stay evaluable.
  std::pair<double, double> clip_to_component(double lo, double hi, double x) const;
};

/// An evaluatable f with its domain and optional analytic derivatives.
/// Immutable once built; all library operations are pure, so any number of
/// solves over one RealFunction may run concurrently.
struct RealFunction {
  std::function<double(double)> eval;
  Domain domain;
  std::function<double(double)> d1;  // optional; numeric fallback otherwise
  std::function<double(double)> d2;
  std::string label;

  double operator()(double y) const { return eval(y); }
};

struct Bracket {
  double a = 0.0;
  double b = 0.0;
  double width() const { return b - a; }
};

}  // namespace epsdelta

namespace epsdelta::numerics {

struct SupremumResult {
  double value = 0.0;            // approximate supremum
  double argmax_estimate = 0.0;  // terminating endpoint carrying the max
  int iterations = 0;
  double interval_width_final = 0.0;
};

/// |x - y| below this is treated as numerically coincident.
double coincident_threshold(double x);

/// f'(x) / f''(x), preferring analytic derivatives over central differences.
double derivative1(const RealFunction& f, double x);
double derivative2(const RealFunction& f, double x);

/// |f(x)-f(y)| / |x-y|. Throws for coincident points or points outside
/// the domain.
double leibniz_ratio(const RealFunction& f, double x, double y);

/// Limit of the Leibniz ratio at y = x, i.e. |f'(x)|.
double gamma_at_zero(const RealFunction& f, double x);

/// Lipschitz constant estimate for the Leibniz ratio on K: twice the
/// largest finite-difference slope of g(y) = (f(y)-f(x))/(y-x) over a
/// uniform grid, floored at 1e-12 when g is constant (affine f).
double estimate_lipschitz_M(const RealFunction& f, double x, Bracket K, int samples);

/// Divide-and-conquer maximum of a unimodal M-Lipschitz function on [a, b].
/// Shrinks the interval by at least 1/3 each step (so at most 2/3 of the
/// previous width remains), stops once |a-b| < omega_sup/M, and returns the
/// larger endpoint value. The result sits within omega_sup below the true
/// supremum; when the argmax is interior to the final interval the returned
/// value may undershoot it by up to omega_sup (one-sided error).
SupremumResult ternary_search_sup(const std::function<double(double)>& Lf, double a, double b,
                                  double omega_sup, double M, int max_iters = 200);

/// Gamma(delta): supremum of the Leibniz ratio over the delta-ball around x
/// clipped to the domain, with the removable singularity at y = x filled by
/// |f'(x)|.
SupremumResult gamma_search(const RealFunction& f, double x, double delta, double omega_sup,
                            double M, int max_iters = 200);

double gamma(const RealFunction& f, double x, double delta, double omega_sup, double M);

/// delta * Gamma(delta); accurate to delta * omega_sup.
double delta_map(const RealFunction& f, double x, double delta, double omega_sup, double M);

}  // namespace epsdelta::numerics
