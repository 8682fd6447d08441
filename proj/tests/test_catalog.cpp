#include <doctest.h>

#include <cmath>

#include "epsdelta/catalog.hpp"
#include "epsdelta/solver.hpp"
#include "helpers.hpp"

using namespace epsdelta;
using testutil::expect_error;

TEST_SUITE("catalog") {

TEST_CASE("closed forms at hand-evaluated points") {
  const auto log_e = catalog::entry_log();
  CHECK(log_e.closed_form_pi(1.0, 1.0) == doctest::Approx(0.6321205588285577).epsilon(1e-15));
  CHECK(log_e.closed_form_pi(2.0, 50.0) == doctest::Approx(2.0).epsilon(1e-12));  // eps -> inf
  CHECK(log_e.closed_form_pi(1.0, 1e-12) == doctest::Approx(0.0).scale(1.0).epsilon(1e-11));

  const auto exp_e = catalog::entry_exponential();
  CHECK(exp_e.closed_form_pi(0.0, 0.5) == doctest::Approx(0.4054651081081644).epsilon(1e-15));
  CHECK(exp_e.closed_form_pi(1.0, 0.2) == doctest::Approx(0.4341538657517572).epsilon(1e-15));
  CHECK(exp_e.closed_form_pi(0.0, std::exp(1.0) - 1.0) == doctest::Approx(1.0).epsilon(1e-15));

  const auto rat_e = catalog::entry_rational();
  CHECK(rat_e.closed_form_pi(31.0, 1.0) == 0.5);
  CHECK(rat_e.closed_form_pi(29.0, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const auto aff_e = catalog::entry_affine();
  CHECK(aff_e.closed_form_pi(-3.0, 0.2) == 0.1);
  CHECK(aff_e.closed_form_pi(1e6, 0.2) == 0.1);  // independent of x
  CHECK_FALSE(aff_e.closed_form_valid(0.0, 0.0));  // eps must be positive

  CHECK_FALSE(static_cast<bool>(catalog::entry_quadratic().closed_form_pi));
}

TEST_CASE("entry lookup by CLI name") {
  CHECK(catalog::find("log") != nullptr);
  CHECK(catalog::find("exp1") != nullptr);
  CHECK(catalog::find("rational30") != nullptr);
  CHECK(catalog::find("affine21") != nullptr);
  CHECK(catalog::find("quad11") != nullptr);
  CHECK(catalog::find("nope") == nullptr);
  CHECK(catalog::entries().size() == 5);
}

TEST_CASE("property: rational shifted parity") {
  const auto rat = catalog::entry_rational();
  for (double t : {0.5, 1.0, 2.0}) {
    for (double eps : {0.1, 0.5, 1.0}) {
      if (!rat.closed_form_valid(30.0 - t, eps)) continue;
      CHECK(rat.closed_form_pi(30.0 - t, eps) ==
            doctest::Approx(rat.closed_form_pi(30.0 + t, eps)).epsilon(1e-14));
    }
  }
}

TEST_CASE("property: exponential delta attains distance exactly eps on the binding side") {
  const auto exp_e = catalog::entry_exponential();
  const RealFunction& f = exp_e.function;
  for (double x : {-1.0, 0.0, 0.7, 2.0}) {
    for (double eps : {0.1, 0.5, 1.0}) {
      const double pi = exp_e.closed_form_pi(x, eps);
      CHECK(std::abs(f.eval(x - pi) - f.eval(x)) == doctest::Approx(eps).epsilon(1e-9));
    }
  }
}

TEST_CASE("brute-force oracle self-checks") {
  const RealFunction aff = catalog::entry_affine().function;
  CHECK(std::abs(catalog::brute_force_delta(aff, 0.0, 1.0, Bracket{-1.0, 1.0}, 100000) - 0.5) <
        1e-5);
  const RealFunction expf = catalog::entry_exponential().function;
  CHECK(std::abs(catalog::brute_force_delta(expf, 0.0, 0.5, Bracket{-1.0, 1.0}, 100000) -
                 0.4054651081081644) < 1e-5);
  expect_error(ErrorKind::config,
               [&] { catalog::brute_force_delta(aff, 0.0, 1.0, Bracket{-1.0, 1.0}, 100); });
}

TEST_CASE("property: oracle agrees with every closed form") {
  const long grid = 20000;
  for (const auto& entry : catalog::entries()) {
    if (!entry.closed_form_pi) continue;
    int cases = 0;
    for (int i = 0; cases < 25 && i < 200; ++i) {
      const double x = entry.name == "log"          ? testutil::uniform(0.5, 3.0)
                       : entry.name == "rational30" ? 30.0 + (i % 2 ? 1.0 : -1.0) * testutil::uniform(1.0, 3.0)
                                                    : testutil::uniform(-2.0, 2.0);
      const double eps = testutil::uniform(0.05, 0.6);
      if (entry.closed_form_valid && !entry.closed_form_valid(x, eps)) continue;
      const double radius = 0.9 * std::min(1.5, entry.function.domain.distance_to_edge(x));
      const double expected = entry.closed_form_pi(x, eps);
      if (expected >= radius) continue;  // oracle window must cover the ball
      const double pitch = radius / grid;
      const double got = catalog::brute_force_delta(entry.function, x, eps,
                                                    Bracket{x - radius, x + radius}, grid);
      CHECK(std::abs(got - expected) <= 2.0 * pitch);
      ++cases;
    }
    CHECK(cases == 25);
  }
}

TEST_CASE("quadratic entry: hypothesis check and oracle equivalence") {
  const auto quad = catalog::entry_quadratic();
  const auto hyp = solver::check_hypotheses(quad.function, 1.0, Bracket{-5.0, 5.0}, 256);
  CHECK(hyp.lagrange_ok);
  CHECK(hyp.transversal_ok);

  const Bracket window = solver::default_window(quad.function, 0.0);
  const double solved = solver::solve(quad.function, 0.0, 0.1, 1e-6, window).delta;
  const double oracle = catalog::brute_force_delta(quad.function, 0.0, 0.1, window, 100000);
  CHECK(std::abs(solved - oracle) < 1e-6 + 2.0 * (1.0 / 100000.0));
}

}  // TEST_SUITE
