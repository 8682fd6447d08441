#include "epsdelta/manifold.hpp"

#include <atomic>
#include <ostream>
#include <thread>

#include "epsdelta/format.hpp"
#include "epsdelta/solver.hpp"

namespace epsdelta::manifold {

void GridSpec::validate() const {
  if (!(x_min < x_max)) throw Error(ErrorKind::config, "grid: x_min must be < x_max");
  if (!(eps_min > 0.0)) throw Error(ErrorKind::config, "grid: eps_min must be positive");
  if (!(eps_min < eps_max)) throw Error(ErrorKind::config, "grid: eps_min must be < eps_max");
  if (x_count < 2 || eps_count < 2) throw Error(ErrorKind::config, "grid: counts must be >= 2");
}

double GridSpec::x_at(int i) const {
  return i == x_count - 1 ? x_max : x_min + i * (x_max - x_min) / (x_count - 1);
}

double GridSpec::eps_at(int j) const {
  return j == eps_count - 1 ? eps_max : eps_min + j * (eps_max - eps_min) / (eps_count - 1);
}

namespace {

std::string skip_reason(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::hypothesis: return "skipped:zero-derivative";
    case ErrorKind::bracket_expansion:
    case ErrorKind::no_sign_change: return "skipped:bracket-failure";
    case ErrorKind::iteration_limit: return "skipped:iteration-limit";
    case ErrorKind::domain: return "skipped:domain-error";
    default: return "skipped:error";
  }
}

ManifoldSample solve_cell(const RealFunction& f, double x, double eps, double omega_sol,
                          double window_radius) {
  ManifoldSample s;
  s.x = x;
  s.epsilon = eps;
  if (!(x > f.domain.lower && x < f.domain.upper)) {
    s.status = "skipped:outside-domain";
    return s;
  }
  if (!f.domain.contains(x)) {
    s.status = "skipped:excluded-point";
    return s;
  }
  try {
    // Constants L and M are local; every cell gets its own window.
    const Bracket window = solver::default_window(f, x, window_radius);
    s.delta = solver::solve(f, x, eps, omega_sol, window).delta;
    s.status = "ok";
  } catch (const Error& e) {
    s.status = skip_reason(e);
  }
  return s;
}

}  // namespace

std::vector<ManifoldSample> sample_manifold(const RealFunction& f, const GridSpec& grid,
                                            double omega_sol, double window_radius, int workers) {
  grid.validate();
  if (workers < 1) throw Error(ErrorKind::config, "workers must be >= 1");

  const int total = grid.x_count * grid.eps_count;
  std::vector<ManifoldSample> samples(static_cast<std::size_t>(total));

  auto run_cell = [&](int idx) {
    const int i = idx / grid.eps_count;
    const int j = idx % grid.eps_count;
    samples[static_cast<std::size_t>(idx)] =
        solve_cell(f, grid.x_at(i), grid.eps_at(j), omega_sol, window_radius);
  };

  const int thread_count = std::min(workers, total);
  if (thread_count <= 1) {
    for (int idx = 0; idx < total; ++idx) run_cell(idx);
    return samples;
  }

  // Cells are independent; workers pull indices and write disjoint slots,
  // so the assembled result is identical for any worker count.
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(thread_count));
  for (int t = 0; t < thread_count; ++t) {
    pool.emplace_back([&]() {
      for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) run_cell(idx);
    });
  }
  for (std::thread& t : pool) t.join();
  return samples;
}

void write_csv(const std::vector<ManifoldSample>& samples, std::ostream& out) {
  out << "x,epsilon,delta,status\n";
  for (const ManifoldSample& s : samples) {
    out << render_double(s.x) << ',' << render_double(s.epsilon) << ',';
    if (s.ok()) out << render_double(s.delta);
    out << ',' << s.status << '\n';
  }
  if (!out) throw Error(ErrorKind::io, "write_csv: sink write failure");
}

void write_json(const std::vector<ManifoldSample>& samples, std::ostream& out) {
  out << "[\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const ManifoldSample& s = samples[i];
    out << "  {\"x\": " << render_double(s.x) << ", \"epsilon\": " << render_double(s.epsilon)
        << ", \"delta\": " << (s.ok() ? render_double(s.delta) : "null") << ", \"status\": \""
        << s.status << "\"}";
    if (i + 1 < samples.size()) out << ',';
    out << '\n';
  }
  out << "]\n";
  if (!out) throw Error(ErrorKind::io, "write_json: sink write failure");
}

}  // namespace epsdelta::manifold
