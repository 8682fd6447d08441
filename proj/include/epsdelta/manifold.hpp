#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "epsdelta/numerics.hpp"

namespace epsdelta::manifold {

/// Uniform (x, eps) sampling grid, endpoints included.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  int x_count = 0;
  double eps_min = 0.0;
  double eps_max = 0.0;
  int eps_count = 0;

  void validate() const;
  double x_at(int i) const;
  double eps_at(int j) const;
};

struct ManifoldSample {
  double x = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;  // meaningful only when ok()
  std::string status;  // "ok" or "skipped:<reason>"

  bool ok() const { return status == "ok"; }
};

/// Solve every grid point, row-major in x then eps. Failed points are
/// reported as skipped with a machine-readable reason instead of aborting
/// the sweep. Output order and content are deterministic for any worker
/// count.
std::vector<ManifoldSample> sample_manifold(const RealFunction& f, const GridSpec& grid,
                                            double omega_sol, double window_radius = 1.0,
                                            int workers = 1);

/// Header `x,epsilon,delta,status`; shortest round-trip reals; empty delta
/// on skipped rows; LF line endings.
void write_csv(const std::vector<ManifoldSample>& samples, std::ostream& out);

/// Same content as the CSV, as an array of {x, epsilon, delta, status}
/// objects with identical numeric rendering (delta is null when skipped).
void write_json(const std::vector<ManifoldSample>& samples, std::ostream& out);

}  // namespace epsdelta::manifold
