#include "safeplan/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <functional>
#include <queue>
#include <vector>

namespace safeplan {

double octile_distance(GridIndex a, GridIndex b) noexcept {
  const double dr = std::abs(static_cast<double>(a.row - b.row));
  const double dc = std::abs(static_cast<double>(a.col - b.col));
  return std::max(dr, dc) + (kSqrt2 - 1.0) * std::min(dr, dc);
}

namespace {

struct QueueEntry {
  double f;
  double h;
  std::uint64_t seq;
  std::int32_t node;
};

struct QueueAfter {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const noexcept {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.seq > b.seq;
  }
};

using CellFilter = std::function<bool(std::size_t)>;

// A* restricted to cells accepted by `allowed` (all free cells if empty).
PlanResult restricted_astar(const OccupancyGrid& grid, GridIndex start, GridIndex goal,
                            const CellFilter& allowed) {
  if (!grid.is_free(start)) return PlanResult::failure(FailureReason::start_invalid);
  if (!grid.is_free(goal)) return PlanResult::failure(FailureReason::goal_invalid);

  PlanResult result;
  if (start == goal) {
    result.outcome = Outcome::success;
    result.reason = FailureReason::none;
    result.path = {start};
    return result;
  }

  const std::size_t n_cells = grid.size();
  std::vector<StepCount> g(n_cells);
  std::vector<std::uint8_t> seen(n_cells, 0);
  std::vector<std::uint8_t> closed(n_cells, 0);
  std::vector<std::int32_t> parent(n_cells, -1);
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueAfter> open;
  std::uint64_t seq = 0;

  const auto s_idx = grid.index(start);
  const auto t_idx = grid.index(goal);
  seen[s_idx] = 1;
  const double h0 = octile_distance(start, goal);
  open.push({h0, h0, seq++, static_cast<std::int32_t>(s_idx)});

  bool found = false;
  while (!open.empty()) {
    const QueueEntry top = open.top();
    open.pop();
    const auto n_idx = static_cast<std::size_t>(top.node);
    if (closed[n_idx]) continue;
    closed[n_idx] = 1;
    if (n_idx == t_idx) {
      found = true;
      break;
    }
    ++result.expanded;
    const GridIndex n = grid.cell(n_idx);
    for (const Neighbor& nb : neighbors(grid, n)) {
      const auto m_idx = grid.index(nb.cell);
      if (closed[m_idx]) continue;
      if (allowed && !allowed(m_idx)) continue;
      const StepCount g_new = g[n_idx].plus(nb.cost);
      if (!seen[m_idx] || g_new.value() < g[m_idx].value()) {
        seen[m_idx] = 1;
        g[m_idx] = g_new;
        parent[m_idx] = static_cast<std::int32_t>(n_idx);
        const double h = octile_distance(nb.cell, goal);
        open.push({g_new.value() + h, h, seq++, static_cast<std::int32_t>(m_idx)});
      }
    }
  }
  if (!found) return result;

  for (std::int32_t i = static_cast<std::int32_t>(t_idx); i >= 0; i = parent[static_cast<std::size_t>(i)]) {
    result.path.push_back(grid.cell(static_cast<std::size_t>(i)));
  }
  std::reverse(result.path.begin(), result.path.end());
  result.outcome = Outcome::success;
  result.reason = FailureReason::none;
  result.g_cost = g[t_idx].value();
  return result;
}

bool restricted_reachable(const OccupancyGrid& grid, GridIndex start, GridIndex goal,
                          const CellFilter& allowed) {
  if (!grid.is_free(start) || !grid.is_free(goal)) return false;
  const auto s_idx = grid.index(start);
  const auto t_idx = grid.index(goal);
  if (allowed && (!allowed(s_idx) || !allowed(t_idx))) return false;
  if (s_idx == t_idx) return true;

  std::vector<std::uint8_t> visited(grid.size(), 0);
  std::deque<std::size_t> frontier{s_idx};
  visited[s_idx] = 1;
  while (!frontier.empty()) {
    const auto n_idx = frontier.front();
    frontier.pop_front();
    for (const Neighbor& nb : neighbors(grid, grid.cell(n_idx))) {
      const auto m_idx = grid.index(nb.cell);
      if (visited[m_idx]) continue;
      if (allowed && !allowed(m_idx)) continue;
      if (m_idx == t_idx) return true;
      visited[m_idx] = 1;
      frontier.push_back(m_idx);
    }
  }
  return false;
}

}  // namespace

CostField dijkstra_costs(const OccupancyGrid& grid, GridIndex source) {
  if (!grid.is_free(source)) {
    throw ParameterError("dijkstra source " + to_string(source) + " is out of bounds or occupied");
  }
  const std::size_t n_cells = grid.size();
  std::vector<StepCount> best(n_cells);
  std::vector<std::uint8_t> seen(n_cells, 0);
  std::vector<std::uint8_t> done(n_cells, 0);

  using Item = std::pair<double, std::int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  const auto s_idx = grid.index(source);
  seen[s_idx] = 1;
  heap.push({0.0, static_cast<std::int32_t>(s_idx)});
  while (!heap.empty()) {
    const auto [cost, node] = heap.top();
    heap.pop();
    const auto n_idx = static_cast<std::size_t>(node);
    if (done[n_idx]) continue;
    done[n_idx] = 1;
    for (const Neighbor& nb : neighbors(grid, grid.cell(n_idx))) {
      const auto m_idx = grid.index(nb.cell);
      if (done[m_idx]) continue;
      const StepCount candidate = best[n_idx].plus(nb.cost);
      if (!seen[m_idx] || candidate.value() < best[m_idx].value()) {
        seen[m_idx] = 1;
        best[m_idx] = candidate;
        heap.push({candidate.value(), static_cast<std::int32_t>(m_idx)});
      }
    }
  }

  CostField field(grid.width(), grid.height(), kUnreachable);
  for (std::size_t i = 0; i < n_cells; ++i) {
    if (done[i]) field[i] = best[i].value();
  }
  return field;
}

PlanResult astar_shortest(const OccupancyGrid& grid, GridIndex start, GridIndex goal) {
  return restricted_astar(grid, start, goal, {});
}

double path_bottleneck(const DistanceField& dfield, const std::vector<GridIndex>& path) {
  double low = std::numeric_limits<double>::infinity();
  for (const auto& c : path) low = std::min(low, dfield.at(c));
  return low;
}

PlanResult maximin_clearance_path(const OccupancyGrid& grid, const DistanceField& dfield,
                                  GridIndex start, GridIndex goal) {
  if (!grid.is_free(start)) return PlanResult::failure(FailureReason::start_invalid);
  if (!grid.is_free(goal)) return PlanResult::failure(FailureReason::goal_invalid);
  if (!restricted_reachable(grid, start, goal, {})) return PlanResult::failure(FailureReason::no_path);

  // Candidate bottlenecks: distinct clearances no larger than the endpoints'.
  const double cap = std::min(dfield.at(start), dfield.at(goal));
  std::vector<double> levels;
  const auto cells = grid.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] == 0 && dfield[i] <= cap) levels.push_back(dfield[i]);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  // Connectivity is monotone in the threshold; find the largest feasible
  // level. levels.front() is the global free-cell minimum, so it admits
  // every free cell and is always feasible here.
  const auto admits = [&](double threshold) {
    return [&dfield, threshold](std::size_t i) { return dfield[i] >= threshold; };
  };
  std::size_t lo = 0;
  std::size_t hi = levels.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (restricted_reachable(grid, start, goal, admits(levels[mid]))) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  PlanResult result = restricted_astar(grid, start, goal, admits(levels[lo]));
  return result;
}

bool bfs_reachable(const OccupancyGrid& grid, GridIndex start, GridIndex goal) {
  return restricted_reachable(grid, start, goal, {});
}

}  // namespace safeplan
