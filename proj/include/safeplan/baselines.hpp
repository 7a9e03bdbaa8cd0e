#pragma once

#include <limits>

#include "safeplan/grid_map.hpp"
#include "safeplan/plan_result.hpp"

namespace safeplan {

/// Single-source path costs in cell units; unreachable cells hold +inf.
using CostField = CellField<struct CostTag>;

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// max(|dr|,|dc|) + (sqrt2 - 1) * min(|dr|,|dc|).
double octile_distance(GridIndex a, GridIndex b) noexcept;

/// Exact shortest-path costs from `source` on the 8-connected grid.
/// Throws ParameterError if the source is out of bounds or occupied.
CostField dijkstra_costs(const OccupancyGrid& grid, GridIndex source);

/// Optimal-length A* with the octile heuristic.
PlanResult astar_shortest(const OccupancyGrid& grid, GridIndex start, GridIndex goal);

/// Path maximising the smallest distance-field value over its cells; among
/// those, one of minimal length.
PlanResult maximin_clearance_path(const OccupancyGrid& grid, const DistanceField& dfield,
                                  GridIndex start, GridIndex goal);

/// Smallest distance-field value over the path's cells (cell units).
double path_bottleneck(const DistanceField& dfield, const std::vector<GridIndex>& path);

/// Breadth-first connectivity on free 8-connected cells (same edge set as
/// neighbors()). Invalid endpoints are unreachable.
bool bfs_reachable(const OccupancyGrid& grid, GridIndex start, GridIndex goal);

}  // namespace safeplan
