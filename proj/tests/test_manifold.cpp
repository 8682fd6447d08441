#include <doctest.h>

#include <cmath>
#include <sstream>

#include "epsdelta/catalog.hpp"
#include "epsdelta/manifold.hpp"
#include "helpers.hpp"

using namespace epsdelta;
using manifold::GridSpec;
using manifold::ManifoldSample;
using testutil::expect_error;

namespace {

std::string csv_of(const std::vector<ManifoldSample>& samples) {
  std::ostringstream out;
  manifold::write_csv(samples, out);
  return out.str();
}

}  // namespace

TEST_SUITE("manifold") {

TEST_CASE("grid validation") {
  expect_error(ErrorKind::config, [] { GridSpec{1.0, 0.0, 5, 0.1, 1.0, 5}.validate(); });
  expect_error(ErrorKind::config, [] { GridSpec{0.0, 1.0, 5, 0.0, 1.0, 5}.validate(); });
  expect_error(ErrorKind::config, [] { GridSpec{0.0, 1.0, 1, 0.1, 1.0, 5}.validate(); });
  CHECK_NOTHROW(GridSpec{0.0, 1.0, 2, 0.1, 1.0, 2}.validate());
}

TEST_CASE("exponential sweep matches the closed form pointwise") {
  const auto entry = catalog::entry_exponential();
  const GridSpec grid{-1.0, 1.0, 5, 0.1, 1.0, 5};
  const auto samples = manifold::sample_manifold(entry.function, grid, 1e-6);
  REQUIRE(samples.size() == 25);
  for (const auto& s : samples) {
    REQUIRE(s.ok());
    CHECK(std::abs(s.delta - entry.closed_form_pi(s.x, s.epsilon)) < 2e-6);
  }
  // row-major: x varies slowest
  CHECK(samples[0].x == -1.0);
  CHECK(samples[0].epsilon == 0.1);
  CHECK(samples[4].x == -1.0);
  CHECK(samples[4].epsilon == 1.0);
  CHECK(samples[5].x == -0.5);
}

TEST_CASE("affine sweep is constant across x") {
  const auto entry = catalog::entry_affine();
  const GridSpec grid{-3.0, 3.0, 4, 0.2, 1.0, 3};
  const auto samples = manifold::sample_manifold(entry.function, grid, 1e-6);
  for (const auto& s : samples) {
    REQUIRE(s.ok());
    CHECK(std::abs(s.delta - s.epsilon / 2.0) < 2e-6);
  }
}

TEST_CASE("zero-derivative column is skipped, not fatal") {
  const auto entry = catalog::entry_quadratic();
  // x grid {-6, -5.5, -5}: the middle column sits exactly on f'(x) = 0
  const GridSpec grid{-6.0, -5.0, 3, 0.1, 0.2, 2};
  const auto samples = manifold::sample_manifold(entry.function, grid, 1e-6);
  REQUIRE(samples.size() == 6);
  CHECK(samples[0].ok());
  CHECK(samples[2].status == "skipped:zero-derivative");
  CHECK(samples[3].status == "skipped:zero-derivative");
  CHECK(samples[4].ok());
}

TEST_CASE("pole column is skipped") {
  const auto entry = catalog::entry_rational();
  const GridSpec grid{29.0, 31.0, 3, 0.1, 0.2, 2};  // x = 30 is excluded
  const auto samples = manifold::sample_manifold(entry.function, grid, 1e-6);
  CHECK(samples[0].ok());
  CHECK(samples[2].status == "skipped:excluded-point");
  CHECK(samples[4].ok());
}

TEST_CASE("csv format matches the contract byte for byte") {
  std::vector<ManifoldSample> samples;
  samples.push_back({0.0, 0.5, 0.4054651081081644, "ok"});
  samples.push_back({-5.5, 0.1, 0.0, "skipped:zero-derivative"});
  CHECK(csv_of(samples) ==
        "x,epsilon,delta,status\n"
        "0,0.5,0.4054651081081644,ok\n"
        "-5.5,0.1,,skipped:zero-derivative\n");
  CHECK(csv_of({}) == "x,epsilon,delta,status\n");
}

TEST_CASE("json mirror renders identical numerics") {
  std::vector<ManifoldSample> samples;
  samples.push_back({0.0, 0.5, 0.4054651081081644, "ok"});
  samples.push_back({-5.5, 0.1, 0.0, "skipped:zero-derivative"});
  std::ostringstream out;
  manifold::write_json(samples, out);
  CHECK(out.str() ==
        "[\n"
        "  {\"x\": 0, \"epsilon\": 0.5, \"delta\": 0.4054651081081644, \"status\": \"ok\"},\n"
        "  {\"x\": -5.5, \"epsilon\": 0.1, \"delta\": null, \"status\": "
        "\"skipped:zero-derivative\"}\n"
        "]\n");
}

TEST_CASE("determinism and parallel equivalence") {
  const auto entry = catalog::entry_exponential();
  const GridSpec grid{-1.0, 1.0, 6, 0.1, 0.9, 6};
  const auto serial = manifold::sample_manifold(entry.function, grid, 1e-6, 1.0, 1);
  const auto again = manifold::sample_manifold(entry.function, grid, 1e-6, 1.0, 1);
  const auto parallel = manifold::sample_manifold(entry.function, grid, 1e-6, 1.0, 3);
  CHECK(csv_of(serial) == csv_of(again));
  CHECK(csv_of(serial) == csv_of(parallel));
}

TEST_CASE("property: sampled surface obeys the closed-form Lipschitz bounds") {
  const auto entry = catalog::entry_exponential();
  const GridSpec grid{-1.0, 1.0, 9, 0.1, 1.0, 9};
  const auto samples = manifold::sample_manifold(entry.function, grid, 1e-6);

  // partial-derivative bounds of x + ln(eps + e^-x) on the grid rectangle:
  // d/dx = eps/(eps + e^-x) <= eps_max/(eps_max + e^-x_max)
  // d/deps = 1/(eps + e^-x) <= 1/(eps_min + e^-x_max)
  const double cx = 1.0 / (1.0 + std::exp(-1.0));
  const double ce = 1.0 / (0.1 + std::exp(-1.0));
  const double dx = (grid.x_max - grid.x_min) / (grid.x_count - 1);
  const double de = (grid.eps_max - grid.eps_min) / (grid.eps_count - 1);
  const double slack = 4e-6;

  auto at = [&](int i, int j) -> const ManifoldSample& {
    return samples[static_cast<std::size_t>(i * grid.eps_count + j)];
  };
  for (int i = 0; i < grid.x_count; ++i) {
    for (int j = 0; j < grid.eps_count; ++j) {
      REQUIRE(at(i, j).ok());
      if (i + 1 < grid.x_count)
        CHECK(std::abs(at(i + 1, j).delta - at(i, j).delta) <= cx * dx + slack);
      if (j + 1 < grid.eps_count)
        CHECK(std::abs(at(i, j + 1).delta - at(i, j).delta) <= ce * de + slack);
    }
  }
}

}  // TEST_SUITE
