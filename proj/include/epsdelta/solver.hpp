#pragma once

#include <functional>
#include <string>
#include <vector>

#include "epsdelta/numerics.hpp"

namespace epsdelta::solver {

/// Tolerance triple plus the local constants that drive both searches.
/// Invariants: omega_delta <= omega_sol/100, omega_sup < omega_delta *
/// gamma0 / epsilon (built with a factor-2 margin), all fields positive;
/// L may be +inf when |f'| is effectively unbounded on the window.
struct ErrorBudget {
  double omega_sol = 0.0;
  double omega_delta = 0.0;
  double omega_sup = 0.0;
  double M = 0.0;       // Lipschitz constant of the Leibniz ratio
  double L = 0.0;       // sup |f'| over the window (with safety margin)
  double gamma0 = 0.0;  // |f'(x)|
};

struct SolveReport {
  double delta = 0.0;     // computed maximal suitable delta
  double residual = 0.0;  // |delta_map(delta) - epsilon|
  Bracket bracket;        // the (possibly expanded) bracket searched
  int binary_iterations = 0;
  long ternary_iterations_total = 0;
  ErrorBudget budget;
};

struct HypothesisReport {
  double f1_at_x = 0.0;
  double f2_at_x = 0.0;
  bool lagrange_ok = false;     // f'(x) f''(x) != 0 within tolerance
  bool transversal_ok = false;  // finitely many secant-tangent matches (sampled)
  bool unimodal_ok = false;     // single-peak Leibniz ratio (sampled)
  std::vector<std::string> diagnostics;
};

struct RootResult {
  double delta = 0.0;
  int iterations = 0;
  double residual = 0.0;
  double final_width = 0.0;
};

/// Builds the budget for solving at (x, epsilon): gamma0 = |f'(x)|,
/// L = 1.05 * max sampled |f'| over the window (+inf on edge blow-up),
/// M from estimate_lipschitz_M, omega_delta = omega_sol/100 and
/// omega_sup = omega_delta * gamma0 / (2 epsilon).
/// Throws Error{hypothesis} when f'(x) ~ 0.
ErrorBudget make_budget(const RealFunction& f, double x, double epsilon, double omega_sol,
                        Bracket window);

/// Initial bracket [epsilon/L, epsilon/gamma0], sign-checked against
/// delta_fn and expanded (a/2, 2b) at most eight times per failing side.
Bracket bracket_from_bounds(const std::function<double(double)>& delta_fn, double epsilon,
                            const ErrorBudget& budget);

/// Bisection for delta_fn(delta) = epsilon on a sign-changing bracket;
/// halves the interval until its width drops below omega_sol, then returns
/// whichever endpoint has the smaller residual. `cache_endpoints` skips
/// re-evaluating unchanged endpoints; results are bit-identical either way.
RootResult binary_search_root(const std::function<double(double)>& delta_fn, double epsilon,
                              Bracket bracket, double omega_sol, int max_iters = 200,
                              bool cache_endpoints = true);

/// delta * Gamma(delta) under the budget's ternary tolerance.
double delta_map(const RealFunction& f, double x, double delta, const ErrorBudget& budget);

/// Window [x-radius, x+radius] clipped to the domain, keeping 10% clearance
/// from any bound or excluded point.
Bracket default_window(const RealFunction& f, double x, double radius = 1.0);

/// The composed solver: budget, bracket, bisection over delta_map.
SolveReport solve(const RealFunction& f, double x, double epsilon, double omega_sol,
                  Bracket window);

/// Sampled checks of the theoretical (f'(x) f''(x) != 0) and algorithmic
/// (transversality, unimodality) assumptions. Always returns a report;
/// diagnostics explain any false flag.
HypothesisReport check_hypotheses(const RealFunction& f, double x, Bracket window, int samples);

}  // namespace epsdelta::solver
