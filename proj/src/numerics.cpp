#include "epsdelta/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "epsdelta/finite_diff.hpp"
#include "epsdelta/format.hpp"

namespace epsdelta {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLipschitzFloor = 1e-12;

double edge_nudge(double v) {
  return 4.0 * kEps * std::max(1.0, std::abs(v));
}

}  // namespace

bool Domain::contains(double y) const {
  if (!(y > lower && y < upper)) return false;
  for (double e : excluded)
    if (y == e) return false;
  return true;
}

double Domain::distance_to_edge(double x) const {
  double d = std::numeric_limits<double>::infinity();
  if (std::isfinite(lower)) d = std::min(d, x - lower);
  if (std::isfinite(upper)) d = std::min(d, upper - x);
  for (double e : excluded) d = std::min(d, std::abs(x - e));
  return d;
}

std::pair<double, double> Domain::clip_to_component(double lo, double hi, double x) const {
  if (lo <= lower) lo = lower + edge_nudge(lower);
  if (hi >= upper) hi = upper - edge_nudge(upper);
  for (double e : excluded) {
    if (e < x && e >= lo) lo = e + edge_nudge(e);
    if (e > x && e <= hi) hi = e - edge_nudge(e);
  }
  return {lo, hi};
}

}  // namespace epsdelta

namespace epsdelta::numerics {

double coincident_threshold(double x) {
  return 4.0 * kEps * std::max(1.0, std::abs(x));
}

double derivative1(const RealFunction& f, double x) {
  if (f.d1) return f.d1(x);
  return fd::central_first(f.eval, x);
}

double derivative2(const RealFunction& f, double x) {
  if (f.d2) return f.d2(x);
  return fd::central_second(f.eval, x);
}

double leibniz_ratio(const RealFunction& f, double x, double y) {
  if (std::abs(x - y) < coincident_threshold(x))
    throw Error(ErrorKind::coincident_points,
                "leibniz_ratio: points coincide at " + render_double(x));
  if (!f.domain.contains(x) || !f.domain.contains(y))
    throw Error(ErrorKind::domain, "leibniz_ratio: point outside domain");
  return std::abs(f.eval(x) - f.eval(y)) / std::abs(x - y);
}

double gamma_at_zero(const RealFunction& f, double x) {
  if (!f.domain.contains(x))
    throw Error(ErrorKind::domain, "gamma_at_zero: point outside domain");
  return std::abs(derivative1(f, x));
}

double estimate_lipschitz_M(const RealFunction& f, double x, Bracket K, int samples) {
  if (samples < 16) throw Error(ErrorKind::config, "estimate_lipschitz_M: samples must be >= 16");
  if (!(K.a < K.b)) throw Error(ErrorKind::invalid_bracket, "estimate_lipschitz_M: empty interval");
  if (!(K.a >= f.domain.lower && K.b <= f.domain.upper) || !(x >= K.a && x <= K.b))
    throw Error(ErrorKind::domain, "estimate_lipschitz_M: K must lie in the domain and contain x");
  for (double e : f.domain.excluded)
    if (e >= K.a && e <= K.b)
      throw Error(ErrorKind::domain,
                  "estimate_lipschitz_M: K crosses excluded point " + render_double(e));

  const double fx = f.eval(x);
  const double threshold = coincident_threshold(x);
  const double step = (K.b - K.a) / (samples - 1);
  const std::size_t n = static_cast<std::size_t>(samples);
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (i == n - 1) ? K.b : K.a + static_cast<double>(i) * step;
    g[i] = std::abs(t - x) < threshold ? derivative1(f, x) : (f.eval(t) - fx) / (t - x);
  }
  double raw = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) raw = std::max(raw, std::abs(g[i + 1] - g[i]) / step);
  const double m = 2.0 * raw;
  return m > kLipschitzFloor ? m : kLipschitzFloor;
}

SupremumResult ternary_search_sup(const std::function<double(double)>& Lf, double a, double b,
                                  double omega_sup, double M, int max_iters) {
  if (!(a < b)) throw Error(ErrorKind::invalid_bracket, "ternary_search_sup: requires a < b");
  if (!(omega_sup > 0.0) || !(M > 0.0))
    throw Error(ErrorKind::config, "ternary_search_sup: omega_sup and M must be positive");

  const double stop = omega_sup / M;
  int iterations = 0;
  while (!(std::abs(a - b) < stop)) {
    const double w = b - a;
    // binary64 cannot resolve the interval further; endpoints are the answer
    if (w <= 4.0 * kEps * std::max({1.0, std::abs(a), std::abs(b)})) break;
    if (iterations >= max_iters) {
      const double best = std::max(Lf(a), Lf(b));
      throw Error(ErrorKind::iteration_limit,
                  "ternary_search_sup: iteration limit " + std::to_string(max_iters) +
                      " exceeded; best-so-far " + render_double(best) + ", final width " +
                      render_double(w));
    }
    const double p = a + w / 3.0;
    const double q = b - w / 3.0;
    const double gp = Lf(p);
    const double gq = Lf(q);
    // Unimodality places the maximum right of p, left of q, or between
    // them; each branch keeps at most 2/3 of the interval.
    if (gp < gq) {
      a = p;
    } else if (gp > gq) {
      b = q;
    } else {
      a = p;
      b = q;
    }
    ++iterations;
  }

  const double fa = Lf(a);
  const double fb = Lf(b);
  SupremumResult r;
  r.value = std::max(fa, fb);
  r.argmax_estimate = fa >= fb ? a : b;
  r.iterations = iterations;
  r.interval_width_final = std::abs(b - a);
  return r;
}

SupremumResult gamma_search(const RealFunction& f, double x, double delta, double omega_sup,
                            double M, int max_iters) {
  if (!(delta > 0.0)) throw Error(ErrorKind::config, "gamma: delta must be positive");
  if (!f.domain.contains(x)) throw Error(ErrorKind::domain, "gamma: x outside domain");

  const double g0 = gamma_at_zero(f, x);
  const auto [lo, hi] = f.domain.clip_to_component(x - delta, x + delta, x);
  if (!(lo < hi)) return SupremumResult{g0, x, 0, 0.0};

  const double fx = f.eval(x);
  const double threshold = coincident_threshold(x);
  auto ratio = [&f, fx, x, g0, threshold](double y) {
    if (std::abs(y - x) < threshold) return g0;  // removable singularity
    return std::abs(fx - f.eval(y)) / std::abs(x - y);
  };
  return ternary_search_sup(ratio, lo, hi, omega_sup, M, max_iters);
}

double gamma(const RealFunction& f, double x, double delta, double omega_sup, double M) {
  return gamma_search(f, x, delta, omega_sup, M).value;
}

double delta_map(const RealFunction& f, double x, double delta, double omega_sup, double M) {
  return delta * gamma(f, x, delta, omega_sup, M);
}

}  // namespace epsdelta::numerics
