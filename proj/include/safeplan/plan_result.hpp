#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "safeplan/grid_map.hpp"

namespace safeplan {

enum class Outcome { success, failure };

enum class FailureReason { none, start_invalid, goal_invalid, no_path };

std::string_view to_string(Outcome outcome) noexcept;
std::string_view to_string(FailureReason reason) noexcept;

/// Cost of an 8-connected grid path kept as step counts. Two paths with the
/// same counts always produce the same double, whatever order the steps
/// were taken in.
struct StepCount {
  std::int32_t axis = 0;
  std::int32_t diagonal = 0;

  double value() const noexcept { return static_cast<double>(axis) + static_cast<double>(diagonal) * kSqrt2; }
  StepCount plus(double step_cost) const noexcept {
    return step_cost == 1.0 ? StepCount{axis + 1, diagonal} : StepCount{axis, diagonal + 1};
  }
};

/// One expansion of the adaptive planner.
struct TraceEntry {
  std::size_t expansion = 0;
  GridIndex node;
  double alpha = 0.0;  ///< after this expansion's update
  double beta = 0.0;   ///< after this expansion's update
  double h = 0.0;      ///< heuristic value the node was queued with
};

struct PlanResult {
  Outcome outcome = Outcome::failure;
  FailureReason reason = FailureReason::no_path;
  std::vector<GridIndex> path;  ///< s..t on success, empty otherwise
  std::size_t expanded = 0;
  double g_cost = 0.0;          ///< cell units
  std::vector<TraceEntry> trace;

  bool ok() const noexcept { return outcome == Outcome::success; }

  static PlanResult failure(FailureReason why) {
    PlanResult r;
    r.reason = why;
    return r;
  }
};

/// Step cost between two 8-adjacent cells (1 or sqrt 2).
double step_cost(GridIndex a, GridIndex b) noexcept;

/// Sum of step costs along `path` in cell units, via StepCount.
double path_cost(const std::vector<GridIndex>& path) noexcept;

/// True when `path` is non-empty, starts at s, ends at t and every
/// consecutive pair is an edge of the grid graph.
bool is_valid_path(const OccupancyGrid& grid, const std::vector<GridIndex>& path, GridIndex s,
                   GridIndex t);

}  // namespace safeplan
