#include "safeplan/plan_result.hpp"

#include <cstdlib>

namespace safeplan {

std::string_view to_string(Outcome outcome) noexcept {
  return outcome == Outcome::success ? "success" : "failure";
}

std::string_view to_string(FailureReason reason) noexcept {
  switch (reason) {
    case FailureReason::none: return "none";
    case FailureReason::start_invalid: return "start_invalid";
    case FailureReason::goal_invalid: return "goal_invalid";
    case FailureReason::no_path: return "no_path";
  }
  return "unknown";
}

double step_cost(GridIndex a, GridIndex b) noexcept {
  return (a.row != b.row && a.col != b.col) ? kSqrt2 : 1.0;
}

double path_cost(const std::vector<GridIndex>& path) noexcept {
  StepCount total;
  for (std::size_t i = 1; i < path.size(); ++i) total = total.plus(step_cost(path[i - 1], path[i]));
  return total.value();
}

bool is_valid_path(const OccupancyGrid& grid, const std::vector<GridIndex>& path, GridIndex s,
                   GridIndex t) {
  if (path.empty() || path.front() != s || path.back() != t) return false;
  if (!grid.is_free(s)) return false;
  for (std::size_t i = 1; i < path.size(); ++i) {
    bool adjacent = false;
    for (const Neighbor& nb : neighbors(grid, path[i - 1])) {
      if (nb.cell == path[i]) {
        adjacent = true;
        break;
      }
    }
    if (!adjacent) return false;
  }
  return true;
}

}  // namespace safeplan
