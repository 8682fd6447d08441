#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "epsdelta/numerics.hpp"

namespace epsdelta::catalog {

/// A built-in function with analytic derivatives and, where known, the
/// closed-form maximal delta as an oracle.
struct CatalogEntry {
  std::string name;
  RealFunction function;
  std::function<double(double, double)> closed_form_pi;   // (x, eps) -> delta; null if unknown
  std::function<bool(double, double)> closed_form_valid;  // region where the closed form holds
  std::string validity;                                   // human-readable description
};

CatalogEntry entry_log();          // ln(y) on (0, inf); pi = x(1 - e^-eps)
CatalogEntry entry_exponential();  // 1 - e^-y; pi = x + ln(eps + e^-x)
CatalogEntry entry_rational();     // 1/(y-30) on R \ {30}; piecewise pi
CatalogEntry entry_affine();       // 2y + 1; pi = eps/2
CatalogEntry entry_quadratic();    // y^2 + 11y; no closed form

const std::vector<CatalogEntry>& entries();
const CatalogEntry* find(std::string_view name);

/// Independent grid-search oracle for the maximal suitable delta: scans
/// delta candidates over the window radius and accepts the largest one whose
/// open ball keeps |f(y)-f(x)| < eps on a grid of the same pitch. Accurate
/// to one grid pitch. Deliberately naive and shares no code with the
/// search-based solver.
double brute_force_delta(const RealFunction& f, double x, double eps, Bracket window, long grid);

}  // namespace epsdelta::catalog
