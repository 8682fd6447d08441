#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "epsdelta/catalog.hpp"
#include "epsdelta/numerics.hpp"

namespace epsdelta::cli {

// Stable exit-code contract.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;      // parse / configuration error
inline constexpr int exit_hypothesis = 3;  // f'(x) ~ 0 abort
inline constexpr int exit_bracket = 4;     // bracket / search failure
inline constexpr int exit_write = 5;       // output write failure
inline constexpr int exit_check = 6;       // hypothesis check found lagrange_ok = false
inline constexpr int exit_validate = 7;    // oracle deviation beyond tolerance

/// Catalog names take precedence over expression parsing; `force_expr`
/// bypasses the catalog lookup.
RealFunction resolve_function_spec(const std::string& spec, bool force_expr);

struct ValidationRow {
  std::string name;
  int cases = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool ok = false;
};

struct ValidationOutcome {
  std::vector<ValidationRow> rows;
  bool ok = false;
};

/// Solver-versus-oracle regression over the catalog fixture matrix.
/// Entries with a closed form are compared against it; entries without one
/// are compared against brute_force_delta.
ValidationOutcome run_validation_matrix(const std::vector<catalog::CatalogEntry>& entries,
                                        double omega_sol);

/// Entry point shared by the binary and the tests. `args` excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epsdelta::cli
