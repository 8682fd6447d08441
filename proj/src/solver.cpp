#include "epsdelta/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epsdelta/format.hpp"

namespace epsdelta::solver {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDerivativeTolerance = 1e-9;
constexpr double kTinyDelta = 1e-300;  // stand-in for the degenerate L = +inf bound
constexpr int kBudgetSamples = 512;
constexpr int kMaxExpansions = 8;
constexpr double kSafetyL = 1.05;

void validate_window(const RealFunction& f, double x, Bracket window) {
  if (!(window.a < x && x < window.b))
    throw Error(ErrorKind::config, "window must contain x in its interior");
  if (!(window.a > f.domain.lower && window.b < f.domain.upper))
    throw Error(ErrorKind::domain, "window must be compact inside the domain");
  for (double e : f.domain.excluded)
    if (e >= window.a && e <= window.b)
      throw Error(ErrorKind::domain, "window crosses excluded point " + render_double(e));
}

[[noreturn]] void annotate(const char* stage, const Error& err) {
  throw Error(err.kind(), std::string("solve[") + stage + "]: " + err.what(), err.offset());
}

}  // namespace

ErrorBudget make_budget(const RealFunction& f, double x, double epsilon, double omega_sol,
                        Bracket window) {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::config, "epsilon must be positive");
  if (!(omega_sol > 0.0)) throw Error(ErrorKind::config, "omega_sol must be positive");
  validate_window(f, x, window);

  const double g0 = numerics::gamma_at_zero(f, x);
  if (g0 < kDerivativeTolerance)
    throw Error(ErrorKind::hypothesis,
                "f'(x) vanishes at x = " + render_double(x) +
                    "; the upper bracket bound epsilon/Gamma(0) is undefined. "
                    "Try perturbing x.");

  // Sample |f'| over the window. A blow-up at the edge (ratio > 100 over
  // one grid step, or a non-finite sample) marks |f'| as unbounded there.
  const double step = (window.b - window.a) / (kBudgetSamples - 1);
  std::vector<double> speeds(kBudgetSamples);
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    const double t =
        (i + 1 == speeds.size()) ? window.b : window.a + static_cast<double>(i) * step;
    speeds[i] = std::abs(numerics::derivative1(f, t));
  }
  const auto max_it = std::max_element(speeds.begin(), speeds.end());
  double L;
  const std::size_t idx = static_cast<std::size_t>(max_it - speeds.begin());
  const bool at_edge = idx == 0 || idx + 1 == speeds.size();
  const double neighbor = idx == 0 ? speeds[1] : speeds[idx - 1];
  if (!std::isfinite(*max_it) || (at_edge && neighbor > 0.0 && *max_it / neighbor > 100.0)) {
    L = std::numeric_limits<double>::infinity();
  } else {
    L = kSafetyL * *max_it;
  }

  const double M = numerics::estimate_lipschitz_M(f, x, window, kBudgetSamples);

  ErrorBudget b;
  b.omega_sol = omega_sol;
  b.omega_delta = omega_sol / 100.0;
  b.omega_sup = 0.5 * b.omega_delta * g0 / epsilon;
  b.M = M;
  b.L = L;
  b.gamma0 = g0;
  return b;
}

Bracket bracket_from_bounds(const std::function<double(double)>& delta_fn, double epsilon,
                            const ErrorBudget& budget) {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::config, "epsilon must be positive");
  double a = std::isinf(budget.L) ? kTinyDelta : epsilon / budget.L;
  double b = epsilon / budget.gamma0;
  if (a < kTinyDelta) a = kTinyDelta;

  // The bounds hold only for sufficiently small epsilon; recover larger
  // epsilon by doubling outward on whichever side fails its sign check.
  double da = delta_fn(a);
  double db = delta_fn(b);
  for (int attempt = 0; attempt <= kMaxExpansions; ++attempt) {
    const bool lo_ok = da <= epsilon;
    const bool hi_ok = db >= epsilon;
    if (lo_ok && hi_ok) return Bracket{a, b};
    if (attempt == kMaxExpansions) break;
    if (!lo_ok) {
      a /= 2.0;
      da = delta_fn(a);
    }
    if (!hi_ok) {
      b *= 2.0;
      db = delta_fn(b);
    }
  }
  throw Error(ErrorKind::bracket_expansion,
              "no sign change in [" + render_double(a) + ", " + render_double(b) + "] after " +
                  std::to_string(kMaxExpansions) +
                  " expansions; epsilon is outside the locally valid regime");
}

RootResult binary_search_root(const std::function<double(double)>& delta_fn, double epsilon,
                              Bracket bracket, double omega_sol, int max_iters,
                              bool cache_endpoints) {
  double a = bracket.a;
  double b = bracket.b;
  if (!(a < b)) throw Error(ErrorKind::invalid_bracket, "binary_search_root: requires a < b");
  if (!(omega_sol > 0.0)) throw Error(ErrorKind::config, "omega_sol must be positive");

  double ga = delta_fn(a);
  double gb = delta_fn(b);
  if ((ga - epsilon) * (gb - epsilon) > 0.0)
    throw Error(ErrorKind::no_sign_change,
                "binary_search_root: no sign change across [" + render_double(a) + ", " +
                    render_double(b) + "]");

  int iterations = 0;
  while (!(std::abs(a - b) < omega_sol)) {
    if (iterations >= max_iters)
      throw Error(ErrorKind::iteration_limit, "binary_search_root: iteration limit exceeded");
    const double m = (a + b) / 2.0;
    if (m <= a || m >= b) break;  // interval at machine resolution
    if (!cache_endpoints) {
      ga = delta_fn(a);
      gb = delta_fn(b);
    }
    const double gm = delta_fn(m);
    if ((ga - epsilon) * (gm - epsilon) <= 0.0) {
      b = m;
      gb = gm;
    } else {
      a = m;
      ga = gm;
    }
    ++iterations;
  }

  RootResult r;
  r.iterations = iterations;
  r.final_width = std::abs(a - b);
  if (std::abs(ga - epsilon) < std::abs(gb - epsilon)) {
    r.delta = a;
    r.residual = std::abs(ga - epsilon);
  } else {
    r.delta = b;
    r.residual = std::abs(gb - epsilon);
  }
  return r;
}

double delta_map(const RealFunction& f, double x, double delta, const ErrorBudget& budget) {
  return numerics::delta_map(f, x, delta, budget.omega_sup, budget.M);
}

Bracket default_window(const RealFunction& f, double x, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::config, "window radius must be positive");
  if (!f.domain.contains(x)) throw Error(ErrorKind::domain, "x outside domain");
  const double clearance = 0.9 * f.domain.distance_to_edge(x);
  const double r = std::min(radius, clearance);
  if (!(r > 0.0))
    throw Error(ErrorKind::domain,
                "x = " + render_double(x) + " is too close to a domain edge or pole");
  return Bracket{x - r, x + r};
}

SolveReport solve(const RealFunction& f, double x, double epsilon, double omega_sol,
                  Bracket window) {
  SolveReport report;
  try {
    report.budget = make_budget(f, x, epsilon, omega_sol, window);
  } catch (const Error& e) {
    annotate("budget", e);
  }

  long ternary_total = 0;
  const std::function<double(double)> delta_fn = [&](double d) {
    const auto sup = numerics::gamma_search(f, x, d, report.budget.omega_sup, report.budget.M);
    ternary_total += sup.iterations;
    return d * sup.value;
  };

  try {
    report.bracket = bracket_from_bounds(delta_fn, epsilon, report.budget);
  } catch (const Error& e) {
    annotate("bracket", e);
  }

  try {
    const RootResult root = binary_search_root(delta_fn, epsilon, report.bracket, omega_sol);
    report.delta = root.delta;
    report.residual = root.residual;
    report.binary_iterations = root.iterations;
  } catch (const Error& e) {
    annotate("root", e);
  }
  report.ternary_iterations_total = ternary_total;
  return report;
}

HypothesisReport check_hypotheses(const RealFunction& f, double x, Bracket window, int samples) {
  if (samples < 64) throw Error(ErrorKind::config, "check_hypotheses: samples must be >= 64");
  validate_window(f, x, window);

  HypothesisReport report;
  report.f1_at_x = numerics::derivative1(f, x);
  report.f2_at_x = numerics::derivative2(f, x);
  const bool f1_ok = std::abs(report.f1_at_x) > kDerivativeTolerance;
  const bool f2_ok = std::abs(report.f2_at_x) > kDerivativeTolerance;
  report.lagrange_ok = f1_ok && f2_ok;
  if (!f1_ok) report.diagnostics.push_back("f'(x) vanishes; Gamma(0) = 0 breaks the bracket bounds");
  if (!f2_ok)
    report.diagnostics.push_back(
        "f''(x) vanishes (affine-like); outside the sufficient conditions but the "
        "search may still converge");

  const double fx = f.eval(x);
  const double threshold = numerics::coincident_threshold(x);
  const double step = (window.b - window.a) / (samples - 1);
  const std::size_t n = static_cast<std::size_t>(samples);
  auto grid_point = [&](std::size_t i) {
    return (i + 1 == n) ? window.b : window.a + static_cast<double>(i) * step;
  };

  // Transversality: h(y) = f'(y)(y-x) - (f(y)-f(x)) should cross zero at
  // only finitely many grid cells.
  std::vector<double> h(n);
  double h_scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid_point(i);
    h[i] = numerics::derivative1(f, t) * (t - x) - (f.eval(t) - fx);
    h_scale = std::max(h_scale, std::abs(h[i]));
  }
  int flips = 0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (h[i] * h[i + 1] < 0.0) ++flips;
  report.transversal_ok = flips <= samples / 8;
  if (!report.transversal_ok)
    report.diagnostics.push_back("secant-tangent equation changes sign at " +
                                 std::to_string(flips) + " of " + std::to_string(samples - 1) +
                                 " grid cells");
  if (h_scale < kDerivativeTolerance)
    report.diagnostics.push_back(
        "secant-tangent residual is ~0 across the window; transversality is indeterminate");

  // Unimodality: walking away from the grid argmax of the Leibniz ratio,
  // values must never rise again once they have strictly decreased.
  std::vector<double> ratio(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid_point(i);
    ratio[i] = std::abs(t - x) < threshold ? std::abs(report.f1_at_x)
                                           : std::abs(fx - f.eval(t)) / std::abs(x - t);
  }
  const auto peak =
      static_cast<int>(std::max_element(ratio.begin(), ratio.end()) - ratio.begin());
  auto single_peak = [&ratio](int from, int to, int dir) {
    bool decreased = false;
    for (int i = from; i != to; i += dir) {
      const double cur = ratio[static_cast<std::size_t>(i)];
      const double nxt = ratio[static_cast<std::size_t>(i + dir)];
      const double tol = 1e-12 * std::max(1.0, std::abs(cur));
      if (nxt > cur + tol && decreased) return false;
      if (nxt < cur - tol) decreased = true;
    }
    return true;
  };
  report.unimodal_ok =
      single_peak(peak, samples - 1, +1) && single_peak(peak, 0, -1);
  if (!report.unimodal_ok)
    report.diagnostics.push_back("Leibniz ratio rises again after decreasing; not single-peaked "
                                 "on the sampled window");
  return report;
}

}  // namespace epsdelta::solver
