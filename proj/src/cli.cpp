#include "epsdelta/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "epsdelta/expr.hpp"
#include "epsdelta/format.hpp"
#include "epsdelta/manifold.hpp"
#include "epsdelta/solver.hpp"

namespace epsdelta::cli {

namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::hypothesis:
      return exit_hypothesis;
    case ErrorKind::bracket_expansion:
    case ErrorKind::no_sign_change:
    case ErrorKind::iteration_limit:
      return exit_bracket;
    case ErrorKind::io:
      return exit_write;
    default:
      return exit_config;
  }
}

void report_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what();
  if (e.has_offset()) err << " (offset " << e.offset() << ")";
  err << "\n";
}

int default_workers() {
  if (const char* env = std::getenv("EPSDELTA_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<int>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct Options {
  std::string fn;
  bool force_expr = false;
  double x = 0.0;
  double eps = 0.0;
  double omega_sol = 1e-6;
  double window_radius = 1.0;
  int samples = 256;
  std::string output_path;
  std::string format = "csv";
  int workers = 0;  // 0: use --workers/env/hardware default
  manifold::GridSpec grid;
};

int do_solve(const Options& opt, std::ostream& out) {
  const RealFunction f = resolve_function_spec(opt.fn, opt.force_expr);
  const Bracket window = solver::default_window(f, opt.x, opt.window_radius);
  const solver::SolveReport report = solver::solve(f, opt.x, opt.eps, opt.omega_sol, window);
  out << "delta=" << render_double(report.delta) << " residual=" << render_double(report.residual)
      << " iters_binary=" << report.binary_iterations
      << " iters_ternary=" << report.ternary_iterations_total << "\n";
  return exit_ok;
}

int do_check(const Options& opt, std::ostream& out) {
  const RealFunction f = resolve_function_spec(opt.fn, opt.force_expr);
  const Bracket window = solver::default_window(f, opt.x, opt.window_radius);
  const solver::HypothesisReport report = solver::check_hypotheses(f, opt.x, window, opt.samples);
  out << "f1_at_x=" << render_double(report.f1_at_x) << "\n";
  out << "f2_at_x=" << render_double(report.f2_at_x) << "\n";
  out << "lagrange_ok=" << (report.lagrange_ok ? "true" : "false") << "\n";
  out << "transversal_ok=" << (report.transversal_ok ? "true" : "false") << "\n";
  out << "unimodal_ok=" << (report.unimodal_ok ? "true" : "false") << "\n";
  for (const std::string& d : report.diagnostics) out << "diagnostic=" << d << "\n";
  return report.lagrange_ok ? exit_ok : exit_check;
}

int do_manifold(const Options& opt, std::ostream& out, std::ostream& err) {
  const RealFunction f = resolve_function_spec(opt.fn, opt.force_expr);
  const int workers = opt.workers >= 1 ? opt.workers : default_workers();
  const auto samples =
      manifold::sample_manifold(f, opt.grid, opt.omega_sol, opt.window_radius, workers);

  const auto write = [&](std::ostream& sink) {
    if (opt.format == "json")
      manifold::write_json(samples, sink);
    else
      manifold::write_csv(samples, sink);
  };
  try {
    if (opt.output_path.empty()) {
      write(out);
    } else {
      std::ofstream file(opt.output_path, std::ios::binary);
      if (!file) throw Error(ErrorKind::io, "cannot open '" + opt.output_path + "' for writing");
      write(file);
      file.flush();
      if (!file) throw Error(ErrorKind::io, "write to '" + opt.output_path + "' failed");
    }
  } catch (const Error& e) {
    report_error(e, err);
    return exit_write;
  }

  const long skipped =
      std::count_if(samples.begin(), samples.end(), [](const auto& s) { return !s.ok(); });
  if (skipped > 0) err << "skipped " << skipped << " of " << samples.size() << " grid points\n";
  return exit_ok;
}

int do_validate(const Options& opt, std::ostream& out) {
  const ValidationOutcome outcome = run_validation_matrix(catalog::entries(), opt.omega_sol);
  for (const ValidationRow& row : outcome.rows) {
    out << row.name << " cases=" << row.cases << " max_deviation=" << render_double(row.max_deviation)
        << " tolerance=" << render_double(row.tolerance) << " " << (row.ok ? "ok" : "FAIL") << "\n";
  }
  return outcome.ok ? exit_ok : exit_validate;
}

}  // namespace

RealFunction resolve_function_spec(const std::string& spec, bool force_expr) {
  if (!force_expr) {
    if (const catalog::CatalogEntry* entry = catalog::find(spec)) return entry->function;
  }
  const expr::Expression e = expr::parse(spec);
  RealFunction f;
  f.label = spec;
  f.domain = Domain::all();
  f.eval = [e](double y) { return expr::evaluate(e, y); };
  // No analytic derivatives; the numeric central-difference fallback applies.
  return f;
}

ValidationOutcome run_validation_matrix(const std::vector<catalog::CatalogEntry>& entries,
                                        double omega_sol) {
  ValidationOutcome outcome;
  outcome.ok = true;

  const std::vector<double> closed_xs_default = {-1.0, 0.0, 1.0};
  const std::vector<double> closed_eps_default = {0.1, 0.5, 1.0};

  for (const catalog::CatalogEntry& entry : entries) {
    ValidationRow row;
    row.name = entry.name;

    std::vector<double> xs = closed_xs_default;
    std::vector<double> eps_values = closed_eps_default;
    if (entry.name == "log") xs = {0.5, 1.0, 2.0};
    if (entry.name == "rational30") {
      xs = {27.0, 29.0, 31.0, 33.0};
      eps_values = {0.1, 0.25};
    }
    if (entry.name == "affine21") {
      xs = {-10.0, 0.0, 10.0};
      eps_values = {0.01, 1.0, 10.0};
    }
    if (entry.name == "quad11") {
      xs = {-2.0, 0.0, 2.0};
      eps_values = {0.1, 0.5};
    }

    const bool use_brute = !entry.closed_form_pi;
    const double brute_radius = 1.0;
    const long brute_grid = 100000;
    row.tolerance = use_brute ? 1e-6 + 2.0 * (brute_radius / static_cast<double>(brute_grid))
                              : 1e-5;

    for (double x : xs) {
      for (double eps : eps_values) {
        if (entry.closed_form_valid && !entry.closed_form_valid(x, eps)) continue;
        const Bracket window = solver::default_window(entry.function, x);
        const double solved = solver::solve(entry.function, x, eps, omega_sol, window).delta;
        const double reference =
            use_brute ? catalog::brute_force_delta(entry.function, x, eps,
                                                   Bracket{x - brute_radius, x + brute_radius},
                                                   brute_grid)
                      : entry.closed_form_pi(x, eps);
        row.max_deviation = std::max(row.max_deviation, std::abs(solved - reference));
        ++row.cases;
      }
    }
    row.ok = row.max_deviation < row.tolerance;
    outcome.ok = outcome.ok && row.ok;
    outcome.rows.push_back(row);
  }
  return outcome;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximal delta for the epsilon-delta continuity relation"};
  app.name("epsdelta");
  app.require_subcommand(1);

  Options opt;

  const auto add_function_flags = [&](CLI::App* cmd) {
    cmd->add_option("--fn", opt.fn, "catalog name (log, exp1, rational30, affine21, quad11) or expression in y")
        ->required();
    cmd->add_flag("--expr", opt.force_expr, "treat --fn as an expression even if a catalog name matches");
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one (f, x, epsilon) triplet");
  add_function_flags(solve_cmd);
  solve_cmd->add_option("--x", opt.x, "point of continuity")->required();
  solve_cmd->add_option("--eps", opt.eps, "epsilon (> 0)")->required();
  solve_cmd->add_option("--omega-sol", opt.omega_sol, "root tolerance");
  solve_cmd->add_option("--window-radius", opt.window_radius, "search window radius around x");

  CLI::App* manifold_cmd = app.add_subcommand("manifold", "sweep a (x, epsilon) grid");
  add_function_flags(manifold_cmd);
  manifold_cmd->add_option("--x-min", opt.grid.x_min)->required();
  manifold_cmd->add_option("--x-max", opt.grid.x_max)->required();
  manifold_cmd->add_option("--x-count", opt.grid.x_count)->required();
  manifold_cmd->add_option("--eps-min", opt.grid.eps_min)->required();
  manifold_cmd->add_option("--eps-max", opt.grid.eps_max)->required();
  manifold_cmd->add_option("--eps-count", opt.grid.eps_count)->required();
  manifold_cmd->add_option("--omega-sol", opt.omega_sol, "root tolerance");
  manifold_cmd->add_option("--window-radius", opt.window_radius, "per-point window radius cap");
  manifold_cmd->add_option("--output", opt.output_path, "output file (default: stdout)");
  manifold_cmd->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  manifold_cmd->add_option("--workers", opt.workers,
                           "worker threads (default: EPSDELTA_WORKERS or hardware)");

  CLI::App* check_cmd = app.add_subcommand("check", "report hypothesis checks at x");
  add_function_flags(check_cmd);
  check_cmd->add_option("--x", opt.x, "point of continuity")->required();
  check_cmd->add_option("--window-radius", opt.window_radius, "check window radius");
  check_cmd->add_option("--samples", opt.samples, "grid samples (>= 64)");

  CLI::App* validate_cmd = app.add_subcommand("validate", "regress the solver against the catalog oracles");
  validate_cmd->add_option("--omega-sol", opt.omega_sol, "root tolerance");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  }

  try {
    if (solve_cmd->parsed()) {
      if (!(opt.eps > 0.0)) throw Error(ErrorKind::config, "--eps must be positive");
      if (!(opt.omega_sol > 0.0)) throw Error(ErrorKind::config, "--omega-sol must be positive");
      return do_solve(opt, out);
    }
    if (manifold_cmd->parsed()) {
      opt.grid.validate();
      if (!(opt.omega_sol > 0.0)) throw Error(ErrorKind::config, "--omega-sol must be positive");
      return do_manifold(opt, out, err);
    }
    if (check_cmd->parsed()) return do_check(opt, out);
    if (validate_cmd->parsed()) {
      if (!(opt.omega_sol > 0.0)) throw Error(ErrorKind::config, "--omega-sol must be positive");
      return do_validate(opt, out);
    }
  } catch (const Error& e) {
    report_error(e, err);
    return exit_code_for(e);
  }
  return exit_config;
}

}  // namespace epsdelta::cli
