#include "epsdelta/catalog.hpp"

#include <cmath>

namespace epsdelta::catalog {

CatalogEntry entry_log() {
  CatalogEntry e;
  e.name = "log";
  e.function.label = "ln(y)";
  e.function.domain = Domain::open(0.0, std::numeric_limits<double>::infinity());
  e.function.eval = [](double y) { return std::log(y); };
  e.function.d1 = [](double y) { return 1.0 / y; };
  e.function.d2 = [](double y) { return -1.0 / (y * y); };
  e.closed_form_pi = [](double x, double eps) { return x * (1.0 - std::exp(-eps)); };
  e.closed_form_valid = [](double x, double eps) { return x > 0.0 && eps > 0.0; };
  e.validity = "x > 0, eps > 0";
  return e;
}

CatalogEntry entry_exponential() {
  CatalogEntry e;
  e.name = "exp1";
  e.function.label = "1-exp(-y)";
  e.function.domain = Domain::all();
  e.function.eval = [](double y) { return 1.0 - std::exp(-y); };
  e.function.d1 = [](double y) { return std::exp(-y); };
  e.function.d2 = [](double y) { return -std::exp(-y); };
  e.closed_form_pi = [](double x, double eps) { return x + std::log(eps + std::exp(-x)); };
  e.closed_form_valid = [](double, double eps) { return eps > 0.0; };
  e.validity = "any x, eps > 0";
  return e;
}

CatalogEntry entry_rational() {
  CatalogEntry e;
  e.name = "rational30";
  e.function.label = "1/(y-30)";
  e.function.domain = Domain{-std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity(),
                             {30.0}};
  e.function.eval = [](double y) { return 1.0 / (y - 30.0); };
  e.function.d1 = [](double y) { return -1.0 / ((y - 30.0) * (y - 30.0)); };
  e.function.d2 = [](double y) { return 2.0 / ((y - 30.0) * (y - 30.0) * (y - 30.0)); };
  e.closed_form_pi = [](double x, double eps) {
    const double s = x - 30.0;
    return x < 30.0 ? eps * s * s / (1.0 - eps * s) : eps * s * s / (1.0 + eps * s);
  };
  // Left of the pole the branch formula is read conservatively: keep the
  // left-excursion denominator 1 - eps(30 - x) positive.
  e.closed_form_valid = [](double x, double eps) {
    if (!(eps > 0.0) || x == 30.0) return false;
    return x > 30.0 || eps < 1.0 / (30.0 - x);
  };
  e.validity = "x != 30; for x < 30 also eps < 1/(30-x)";
  return e;
}

CatalogEntry entry_affine() {
  CatalogEntry e;
  e.name = "affine21";
  e.function.label = "2*y+1";
  e.function.domain = Domain::all();
  e.function.eval = [](double y) { return 2.0 * y + 1.0; };
  e.function.d1 = [](double) { return 2.0; };
  e.function.d2 = [](double) { return 0.0; };
  e.closed_form_pi = [](double, double eps) { return eps / 2.0; };
  e.closed_form_valid = [](double, double eps) { return eps > 0.0; };
  e.validity = "any x, eps > 0 (independent of x)";
  return e;
}

CatalogEntry entry_quadratic() {
  CatalogEntry e;
  e.name = "quad11";
  e.function.label = "y^2+11*y";
  e.function.domain = Domain::all();
  e.function.eval = [](double y) { return y * y + 11.0 * y; };
  e.function.d1 = [](double y) { return 2.0 * y + 11.0; };
  e.function.d2 = [](double) { return 2.0; };
  // No closed form is known; use brute_force_delta as the oracle.
  e.validity = "x in [-5, 5] keeps f'(x) f''(x) != 0";
  return e;
}

const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> all = {
      entry_log(), entry_exponential(), entry_rational(), entry_affine(), entry_quadratic()};
  return all;
}

const CatalogEntry* find(std::string_view name) {
  for (const CatalogEntry& e : entries())
    if (e.name == name) return &e;
  return nullptr;
}

double brute_force_delta(const RealFunction& f, double x, double eps, Bracket window,
                         long grid) {
  if (grid < 10000) throw Error(ErrorKind::config, "brute_force_delta: grid must be >= 10^4");
  if (!(eps > 0.0)) throw Error(ErrorKind::config, "brute_force_delta: eps must be positive");
  if (!(window.a <= x && x <= window.b) || !(window.a > f.domain.lower && window.b < f.domain.upper))
    throw Error(ErrorKind::domain, "brute_force_delta: window must contain x inside the domain");

  const double radius = std::min(x - window.a, window.b - x);
  const double pitch = radius / static_cast<double>(grid);
  const double fx = f.eval(x);

  auto violates = [&](double y) {
    if (!f.domain.contains(y)) return true;
    return !(std::abs(f.eval(y) - fx) < eps);
  };

  // Largest candidate first; scan each ball outside-in so failing
  // candidates are rejected almost immediately.
  for (long i = grid; i >= 1; --i) {
    const double delta = pitch * static_cast<double>(i);
    bool ok = true;
    for (long k = i - 1; k >= 1 && ok; --k) {
      const double d = pitch * static_cast<double>(k);
      if (violates(x + d) || violates(x - d)) ok = false;
    }
    if (ok) return delta;
  }
  return 0.0;
}

}  // namespace epsdelta::catalog
