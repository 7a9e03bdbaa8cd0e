#include <random>

#include "../support/oracles.hpp"
#include "doctest.h"
#include "safeplan/safety.hpp"

using namespace safeplan;

TEST_SUITE("safety") {

TEST_CASE("kernel weights") {
  const auto k1 = build_kernel(1, 0.01);
  CHECK(k1.weight(0, 0) == 0.0);
  int ring = 0;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      CHECK(k1.weight(dr, dc) == doctest::Approx(0.990099).epsilon(1e-6));
      ++ring;
    }
  }
  CHECK(ring == 8);

  const auto k2 = build_kernel(2, 0.01);
  int outer = 0;
  for (int dr = -2; dr <= 2; ++dr) {
    for (int dc = -2; dc <= 2; ++dc) {
      if (std::max(std::abs(dr), std::abs(dc)) != 2) continue;
      CHECK(k2.weight(dr, dc) == doctest::Approx(0.497512).epsilon(1e-6));
      ++outer;
    }
  }
  CHECK(outer == 16);
}

TEST_CASE("kernel is symmetric and non-negative") {
  for (int r = 1; r <= 5; ++r) {
    const auto k = build_kernel(r, 0.3);
    for (int dr = -r; dr <= r; ++dr) {
      for (int dc = -r; dc <= r; ++dc) {
        CHECK(k.weight(dr, dc) >= 0.0);
        CHECK(k.weight(dr, dc) == k.weight(-dr, -dc));
      }
    }
  }
}

TEST_CASE("kernel parameter errors") {
  CHECK_THROWS_AS(build_kernel(0, 0.01), ParameterError);
  CHECK_THROWS_AS(build_kernel(1, 0.0), ParameterError);
  CHECK_THROWS_AS(build_kernel(1, -1.0), ParameterError);
}

TEST_CASE("field examples") {
  SUBCASE("one adjacent obstacle") {
    const auto grid = parse_map("cell 1\n#..\n...\n");
    const auto s = compute_safety_field(grid, build_kernel(1, 0.01));
    CHECK(s.at({1, 1}) == doctest::Approx(0.990099).epsilon(1e-6));
    CHECK(s.at({0, 0}) == 0.0);
    CHECK(s.at({0, 2}) == 0.0);
  }
  SUBCASE("ringed by eight obstacles") {
    const auto grid = parse_map("cell 1\n###\n#.#\n###\n");
    const auto s = compute_safety_field(grid, build_kernel(1, 0.01));
    CHECK(s.at({1, 1}) == doctest::Approx(7.92079).epsilon(1e-6));
  }
  SUBCASE("no obstacle in range") {
    const auto grid = parse_map("cell 1\n#....\n");
    const auto s = compute_safety_field(grid, build_kernel(2, 0.01));
    CHECK(s.at({0, 3}) == 0.0);
    CHECK(s.at({0, 4}) == 0.0);
  }
}

TEST_CASE("field equals the direct window sum") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 120; ++i) {
    const auto grid = oracle::random_grid(rng, 1 + i % 16, 1 + (i * 5) % 16, 0.1 + 0.005 * i);
    const int r = 1 + i % 4;
    const auto field = compute_safety_field(grid, build_kernel(r, 0.01));
    const auto ref = oracle::safety_field(grid, r, 0.01);
    for (std::size_t k = 0; k < ref.size(); ++k) REQUIRE(field[k] == doctest::Approx(ref[k]).epsilon(1e-12));
  }
}

TEST_CASE("upper bound values") {
  CHECK(safety_upper_bound(2, 1, 0.01) == doctest::Approx(7.92079).epsilon(1e-6));
  CHECK(safety_upper_bound(2, 2, 0.01) == doctest::Approx(15.88100).epsilon(1e-6));
  CHECK(safety_upper_bound(3, 0, 0.01) == 0.0);
  CHECK(safety_upper_bound(3, 1, 0.0) == doctest::Approx(26.0));
  CHECK_THROWS_AS(safety_upper_bound(0, 1, 0.01), ParameterError);
}

TEST_CASE("field never exceeds the bound") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 60; ++i) {
    const int r = 1 + i % 4;
    const auto grid = oracle::random_grid(rng, 12, 12, 0.2 + 0.01 * i);
    const auto field = compute_safety_field(grid, build_kernel(r, 0.01));
    const double bound = safety_upper_bound(2, r, 0.01);
    for (const double v : field.values()) {
      CHECK(v >= 0.0);
      CHECK(v <= bound + 1e-12);
    }
  }
}

TEST_CASE("adding an obstacle never lowers the field at a free cell") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 60; ++i) {
    auto grid = oracle::random_grid(rng, 10, 9, 0.2);
    const auto kernel = build_kernel(1 + i % 3, 0.01);
    const auto before = compute_safety_field(grid, kernel);
    const auto free = oracle::free_cells(grid);
    if (free.empty()) continue;
    const auto added = free[static_cast<std::size_t>(i) % free.size()];
    grid.set_occupied(added, true);
    const auto after = compute_safety_field(grid, kernel);
    for (const auto& c : oracle::free_cells(grid)) CHECK(after.at(c) >= before.at(c));
  }
}

TEST_CASE("field commutes with mirroring") {
  // Summation order flips with the mirror, so equality is up to rounding.
  std::mt19937_64 rng(24);
  for (int i = 0; i < 40; ++i) {
    const auto grid = oracle::random_grid(rng, 9, 7, 0.3);
    OccupancyGrid mirrored(grid.width(), grid.height(), 1.0);
    for (int r = 0; r < grid.height(); ++r) {
      for (int c = 0; c < grid.width(); ++c) mirrored.set_occupied({r, grid.width() - 1 - c}, grid.occupied({r, c}));
    }
    const auto kernel = build_kernel(1 + i % 3, 0.01);
    const auto a = compute_safety_field(grid, kernel);
    const auto b = compute_safety_field(mirrored, kernel);
    for (int r = 0; r < grid.height(); ++r) {
      for (int c = 0; c < grid.width(); ++c) CHECK(a.at({r, c}) == doctest::Approx(b.at({r, grid.width() - 1 - c})).epsilon(1e-12));
    }
  }
}

}  // TEST_SUITE
