#pragma once

#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <utility>

#include "safeplan/grid_map.hpp"
#include "safeplan/plan_result.hpp"

namespace safeplan {

struct PathMetrics {
  double length_m = 0.0;
  double min_clearance_m = 0.0;
  double turn_deg = 0.0;
  double plan_time_ms = 0.0;
};

struct OptiSafeResult {
  double O = 0.0;    ///< optimality index
  double C = 0.0;    ///< safety index
  double B = 0.0;    ///< balance, 1 - |O - C|
  double R = 0.0;    ///< strength, sqrt(O^2 + C^2) / sqrt 2
  double osi = 0.0;  ///< B * R
};

/// Euclidean centre-to-centre length times cell size. Throws ParameterError
/// on an empty path.
double path_length(std::span<const GridIndex> path, double cell_size);

/// cell_size * min distance-field value over the path cells. Throws
/// ParameterError if a path cell is out of bounds or an obstacle.
double min_clearance(std::span<const GridIndex> path, const DistanceField& dfield, double cell_size);

/// Sum of absolute heading changes at interior vertices, in degrees.
double turning_angle(std::span<const GridIndex> path);

/// Index from the balance and strength terms of already-normalised O and C.
OptiSafeResult optisafe_from_indices(double O, double C) noexcept;

/// Full evaluation from path length and clearance against the optimal-length
/// and maximal-clearance references, with the degenerate-reference branches
/// (L_opt <= 0 gives O = 0, D_safe <= 0 gives C = 0).
OptiSafeResult optisafe(double length, double optimal_length, double clearance,
                        double safe_clearance) noexcept;

/// Reference quantities for one (start, goal) pair on one grid.
struct References {
  PlanResult optimal;
  PlanResult safest;
  double optimal_length_m = 0.0;
  double safe_clearance_m = 0.0;
};

/// Per-grid memo of reference planner results. Concurrent lookups share a
/// lock; insertions are serialised.
class ReferenceCache {
 public:
  ReferenceCache(const OccupancyGrid& grid, const DistanceField& dfield)
      : grid_(&grid), dfield_(&dfield) {}

  /// Runs both reference planners on a miss. Throws std::logic_error if a
  /// reference planner fails on a connected pair.
  std::shared_ptr<const References> get(GridIndex start, GridIndex goal);

  std::size_t size() const;

 private:
  const OccupancyGrid* grid_;
  const DistanceField* dfield_;
  mutable std::shared_mutex mutex_;
  std::map<std::pair<GridIndex, GridIndex>, std::shared_ptr<const References>> entries_;
};

struct Evaluation {
  PathMetrics metrics;
  OptiSafeResult osi;
};

/// Metrics and OptiSafe index of a successful plan. Pass a cache to reuse
/// reference paths across planners on the same scenario; the cache must be
/// bound to the same grid and field.
Evaluation evaluate_planner(const OccupancyGrid& grid, const DistanceField& dfield,
                            const PlanResult& plan, double cell_size, ReferenceCache* cache = nullptr);

}  // namespace safeplan
