#include <cmath>
#include <numbers>
#include <random>

#include "../support/oracles.hpp"
#include "doctest.h"
#include "safeplan/baselines.hpp"
#include "safeplan/upp.hpp"

using namespace safeplan;

namespace {

PlanResult plan_traced(const OccupancyGrid& grid, GridIndex s, GridIndex t, UppConfig config = {}) {
  config.record_trace = true;
  return plan(grid, s, t, config);
}

}  // namespace

TEST_SUITE("upp") {

TEST_CASE("init: safety weight and radius from free-space statistics") {
  UppConfig config;
  config.beta_base = 10.0;
  const OccupancyGrid grid(4, 4, 1.0);
  const auto init = init_params(grid, FreeSpaceStats{4.0, 2.0, 0.3}, config);
  CHECK(init.params.beta == doctest::Approx(1.49626).epsilon(1e-5));
  CHECK(init.params.alpha == config.alpha_base);

  config.r_base = 2.0;
  const auto wide = init_params(grid, FreeSpaceStats{4.0, 2.0, 0.3}, config);
  CHECK(wide.params.radius == 10);
  CHECK(wide.safety.width() == 4);
}

TEST_CASE("init: clipping at both ends") {
  UppConfig config;
  const OccupancyGrid open(5, 5, 1.0);
  const auto stats = free_space_stats(open, distance_transform(open));
  const auto init = init_params(open, stats, config);
  CHECK(init.params.beta == config.beta_min);
  CHECK(init.params.radius == 7);  // round(sqrt(50))

  const auto huge = init_params(open, FreeSpaceStats{0.0, 1000.0, 1.0}, config);
  CHECK(huge.params.beta == config.beta_max);
  const auto tiny = init_params(open, FreeSpaceStats{0.1, 0.0, 0.5}, config);
  CHECK(tiny.params.radius == config.r_min);
}

TEST_CASE("heuristic examples") {
  const SafetyField zero(10, 10, 0.0);
  CHECK(heuristic({0, 0}, {3, 4}, {0.5, 0.0, 1}, zero) == doctest::Approx(5.5));
  CHECK(heuristic({0, 0}, {3, 4}, {1.0, 0.0, 1}, zero) == doctest::Approx(7.0));
  SafetyField field(10, 10, 0.0);
  field.at({2, 2}) = 3.0;
  CHECK(heuristic({2, 2}, {2, 2}, {0.5, 0.7, 1}, field) == doctest::Approx(2.1));
}

TEST_CASE("wrap_angle maps into [-pi, pi)") {
  const double pi = std::numbers::pi;
  CHECK(wrap_angle(0.0) == doctest::Approx(0.0));
  CHECK(wrap_angle(pi / 2) == doctest::Approx(pi / 2));
  CHECK(wrap_angle(3 * pi / 2) == doctest::Approx(-pi / 2));
  CHECK(wrap_angle(-3 * pi / 2) == doctest::Approx(pi / 2));
  CHECK(wrap_angle(pi) == doctest::Approx(-pi));
  CHECK(wrap_angle(5 * pi + 0.25) == doctest::Approx(-pi + 0.25));
}

TEST_CASE("update: progress raises the safety weight") {
  UppConfig config;
  AdaptiveState state;
  state.prev_dist = 6.0;  // node below sits 5 cells from the goal
  state.stalled = 3;
  const auto out = update_params({0, 0}, {0, 5}, std::nullopt, {0.5, 1.0, 1}, state, config);
  CHECK(out.params.beta == doctest::Approx(1.05));
  CHECK(out.state.stalled == 0);
  CHECK(out.state.prev_dist == doctest::Approx(5.0));
}

TEST_CASE("update: regress lowers the safety weight") {
  UppConfig config;
  AdaptiveState state;
  state.prev_dist = 4.0;
  const auto out = update_params({0, 0}, {0, 5}, std::nullopt, {0.5, 1.0, 1}, state, config);
  CHECK(out.params.beta == doctest::Approx(0.9));
  CHECK(out.state.stalled == 0);
}

TEST_CASE("update: stall patience") {
  UppConfig config;
  config.k_beta = 5;
  UppParams params{0.5, 2.0, 1};
  AdaptiveState state;
  state.prev_dist = 5.0;
  for (int i = 1; i <= 5; ++i) {
    const auto out = update_params({0, 0}, {0, 5}, std::nullopt, params, state, config);
    params = out.params;
    state = out.state;
    if (i < 5) {
      CHECK(params.beta == 2.0);
      CHECK(state.stalled == i);
    }
  }
  CHECK(params.beta == doctest::Approx(1.8));
  CHECK(state.stalled == 0);
}

TEST_CASE("update: clipping of the safety weight") {
  UppConfig config;
  AdaptiveState state;
  state.prev_dist = 10.0;
  CHECK(update_params({0, 0}, {0, 5}, std::nullopt, {0.5, 49.9, 1}, state, config).params.beta == config.beta_max);
  state.prev_dist = 1.0;
  CHECK(update_params({0, 0}, {0, 5}, std::nullopt, {0.5, 0.105, 1}, state, config).params.beta == config.beta_min);
}

TEST_CASE("update: root expansion counts zero turn") {
  UppConfig config;
  const auto out = update_params({0, 0}, {0, 5}, std::nullopt, {0.5, 1.0, 1}, AdaptiveState{}, config);
  CHECK(out.state.turn_sum == doctest::Approx(-config.theta_tar));
  CHECK(out.state.turn_iter == 1);
}

TEST_CASE("update: turn window moves the mixing weight") {
  UppConfig config;
  config.k_alpha = 2;
  SUBCASE("moving away from the goal heading raises alpha") {
    // Move east while the goal lies due west: a full half-turn each time.
    AdaptiveState state;
    UppParams params{0.5, 1.0, 1};
    for (int i = 0; i < 2; ++i) {
      const auto out = update_params({0, 5}, {0, 0}, GridIndex{0, 4}, params, state, config);
      params = out.params;
      state = out.state;
    }
    CHECK(params.alpha == doctest::Approx(0.525));
    CHECK(state.turn_iter == 0);
    CHECK(state.turn_sum == 0.0);
  }
  SUBCASE("heading straight at the goal lowers alpha") {
    AdaptiveState state;
    UppParams params{0.5, 1.0, 1};
    for (int i = 0; i < 2; ++i) {
      const auto out = update_params({0, 5}, {0, 9}, GridIndex{0, 4}, params, state, config);
      params = out.params;
      state = out.state;
    }
    CHECK(params.alpha == doctest::Approx(0.475));
  }
}

TEST_CASE("update: disabled branches keep their parameter") {
  UppConfig config;
  config.adapt_alpha = false;
  config.adapt_beta = false;
  config.k_alpha = 1;
  AdaptiveState state;
  state.prev_dist = 10.0;
  const auto out = update_params({0, 5}, {0, 0}, GridIndex{0, 4}, {0.5, 1.0, 1}, state, config);
  CHECK(out.params.alpha == 0.5);
  CHECK(out.params.beta == 1.0);
  CHECK(out.state.prev_dist == doctest::Approx(5.0));
}

TEST_CASE("config validation") {
  UppConfig bad;
  bad.alpha_min = 0.8;
  bad.alpha_max = 0.2;
  CHECK_THROWS_AS(bad.validate(), ParameterError);
  UppConfig rates;
  rates.gamma_rec = 0.9;
  CHECK_THROWS_AS(rates.validate(), ParameterError);
  CHECK_NOTHROW(UppConfig{}.validate());
}

TEST_CASE("plan examples") {
  const OccupancyGrid open(5, 5, 1.0);
  SUBCASE("start equals goal") {
    const auto r = plan(open, {2, 2}, {2, 2});
    CHECK(r.ok());
    CHECK(r.path == std::vector<GridIndex>{{2, 2}});
    CHECK(r.g_cost == 0.0);
  }
  SUBCASE("occupied goal") {
    auto grid = open;
    grid.set_occupied({4, 4}, true);
    const auto r = plan(grid, {0, 0}, {4, 4});
    CHECK_FALSE(r.ok());
    CHECK(r.reason == FailureReason::goal_invalid);
    CHECK(r.path.empty());
  }
  SUBCASE("out-of-bounds start") {
    CHECK(plan(open, {-1, 0}, {4, 4}).reason == FailureReason::start_invalid);
  }
  SUBCASE("open diagonal is optimal") {
    UppConfig config;
    config.beta_min = 0.01;
    config.beta_max = 0.01;
    const auto r = plan(open, {0, 0}, {4, 4}, config);
    REQUIRE(r.ok());
    CHECK(r.g_cost == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("wall separates start and goal") {
    auto grid = OccupancyGrid(8, 8, 1.0);
    for (int r = 0; r < 8; ++r) grid.set_occupied({r, 4}, true);
    const auto res = plan(grid, {3, 0}, {3, 7});
    CHECK_FALSE(res.ok());
    CHECK(res.reason == FailureReason::no_path);
    CHECK_FALSE(oracle::reachable(grid, {3, 0}, {3, 7}));
  }
}

TEST_CASE("plan agrees with reachability and returns valid paths") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 150; ++i) {
    const auto grid = oracle::random_grid(rng, 4 + i % 20, 4 + (i * 3) % 20, 0.1 + 0.4 * (i % 5) / 4.0);
    const auto free = oracle::free_cells(grid);
    if (free.size() < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
    const auto s = free[pick(rng)];
    const auto t = free[pick(rng)];
    const auto r = plan(grid, s, t);
    REQUIRE(r.ok() == oracle::reachable(grid, s, t));
    if (r.ok()) {
      CHECK(is_valid_path(grid, r.path, s, t));
      CHECK(r.g_cost == path_cost(r.path));
    }
  }
}

TEST_CASE("instrumented runs respect the heuristic bound and parameter box") {
  std::mt19937_64 rng(42);
  const UppConfig config;
  for (int i = 0; i < 60; ++i) {
    const auto grid = oracle::random_grid(rng, 24, 24, 0.1 + 0.05 * (i % 7));
    const auto free = oracle::free_cells(grid);
    if (free.size() < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
    const auto s = free[pick(rng)];
    const auto t = free[pick(rng)];
    UppConfig traced = config;
    traced.record_trace = true;
    UnifiedPlanner planner(grid, traced);
    const auto r = planner.plan(s, t);
    const double slack = config.beta_max * safety_upper_bound(2, planner.initialization().params.radius, config.epsilon);
    for (const auto& e : r.trace) {
      const double l1 = std::abs(e.node.row - t.row) + std::abs(e.node.col - t.col);
      CHECK(e.h <= l1 + slack + 1e-9);
      CHECK(e.alpha >= config.alpha_min);
      CHECK(e.alpha <= config.alpha_max);
      CHECK(e.beta >= config.beta_min);
      CHECK(e.beta <= config.beta_max);
    }
    CHECK(r.trace.size() == r.expanded);
    if (r.ok()) {
      const auto j_star = oracle::shortest_cost(grid, s, t);
      REQUIRE(j_star.has_value());
      CHECK(r.g_cost <= *j_star + slack + 1e-9);
      CHECK(r.g_cost >= *j_star - 1e-9);
    }
  }
}

TEST_CASE("heuristic is strictly increasing in alpha off the axes and diagonals") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> coord(0, 30);
  std::uniform_real_distribution<double> a(0.05, 0.9);
  const SafetyField zero(31, 31, 0.0);
  for (int i = 0; i < 500; ++i) {
    const GridIndex n{coord(rng), coord(rng)};
    const GridIndex t{coord(rng), coord(rng)};
    const int dr = std::abs(n.row - t.row);
    const int dc = std::abs(n.col - t.col);
    if (dr + dc <= std::max(dr, dc)) continue;
    const double lo = a(rng);
    const double hi = lo + 0.05;
    CHECK(heuristic(n, t, {lo, 0.7, 1}, zero) < heuristic(n, t, {hi, 0.7, 1}, zero));
  }
}

TEST_CASE("equidistant cells are ordered by their safety value") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> s(0.0, 20.0);
  std::uniform_int_distribution<int> off(1, 6);
  SafetyField field(21, 21, 0.0);
  for (double& v : field.values()) v = s(rng);
  const GridIndex t{10, 10};
  for (int i = 0; i < 300; ++i) {
    const int a = off(rng);
    const int b = off(rng);
    // Transposed offsets share both the l1 and l-inf distance to t.
    const GridIndex mi{t.row + a, t.col - b};
    const GridIndex mj{t.row - b, t.col + a};
    const UppParams p{0.3 + 0.001 * i, 0.2 + 0.1 * (i % 10), 1};
    const double hi = heuristic(mi, t, p, field);
    const double hj = heuristic(mj, t, p, field);
    CHECK((hi < hj) == (field.at(mi) < field.at(mj)));
  }
}

TEST_CASE("planning is deterministic and planner reuse is clean") {
  std::mt19937_64 rng(45);
  const auto grid = oracle::random_grid(rng, 40, 40, 0.25);
  const auto free = oracle::free_cells(grid);
  std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
  UppConfig config;
  config.record_trace = true;
  UnifiedPlanner reused(grid, config);
  for (int i = 0; i < 20; ++i) {
    const auto s = free[pick(rng)];
    const auto t = free[pick(rng)];
    const auto a = reused.plan(s, t);
    const auto b = UnifiedPlanner(grid, config).plan(s, t);
    CHECK(a.outcome == b.outcome);
    CHECK(a.path == b.path);
    CHECK(a.expanded == b.expanded);
    CHECK(a.g_cost == b.g_cost);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t k = 0; k < a.trace.size(); ++k) {
      CHECK(a.trace[k].node == b.trace[k].node);
      CHECK(a.trace[k].alpha == b.trace[k].alpha);
      CHECK(a.trace[k].beta == b.trace[k].beta);
    }
  }
}

TEST_CASE("fixed parameters stay fixed through a search") {
  std::mt19937_64 rng(46);
  const auto grid = oracle::random_grid(rng, 30, 30, 0.2);
  const auto free = oracle::free_cells(grid);
  UppConfig config;
  config.adapt_alpha = false;
  config.adapt_beta = false;
  const auto r = plan_traced(grid, free.front(), free.back(), config);
  UnifiedPlanner p(grid, config);
  for (const auto& e : r.trace) {
    CHECK(e.alpha == p.initialization().params.alpha);
    CHECK(e.beta == p.initialization().params.beta);
  }
}

}  // TEST_SUITE
