#include "safeplan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "safeplan/baselines.hpp"
#include "safeplan/upp.hpp"

namespace safeplan {

double path_length(std::span<const GridIndex> path, double cell_size) {
  if (path.empty()) throw ParameterError("path_length: empty path");
  // Unit grid steps are counted so equal-cost paths give identical lengths
  // regardless of step order; anything longer is summed directly.
  StepCount steps;
  double other = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const int dr = std::abs(path[i].row - path[i - 1].row);
    const int dc = std::abs(path[i].col - path[i - 1].col);
    if (dr <= 1 && dc <= 1 && dr + dc > 0) {
      steps = steps.plus(dr + dc == 2 ? kSqrt2 : 1.0);
    } else {
      other += std::hypot(static_cast<double>(dr), static_cast<double>(dc));
    }
  }
  return (steps.value() + other) * cell_size;
}

double min_clearance(std::span<const GridIndex> path, const DistanceField& dfield, double cell_size) {
  if (path.empty()) throw ParameterError("min_clearance: empty path");
  double low = std::numeric_limits<double>::infinity();
  for (const auto& c : path) {
    if (c.row < 0 || c.col < 0 || c.row >= dfield.height() || c.col >= dfield.width()) {
      throw ParameterError("min_clearance: cell " + to_string(c) + " is out of bounds");
    }
    const double d = dfield.at(c);
    if (d <= 0.0) throw ParameterError("min_clearance: path touches obstacle cell " + to_string(c));
    low = std::min(low, d);
  }
  return low * cell_size;
}

double turning_angle(std::span<const GridIndex> path) {
  double total = 0.0;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const double in = std::atan2(static_cast<double>(path[i].row - path[i - 1].row),
                                 static_cast<double>(path[i].col - path[i - 1].col));
    const double out = std::atan2(static_cast<double>(path[i + 1].row - path[i].row),
                                  static_cast<double>(path[i + 1].col - path[i].col));
    total += std::abs(wrap_angle(out - in));
  }
  return total * 180.0 / std::numbers::pi;
}

OptiSafeResult optisafe_from_indices(double O, double C) noexcept {
  OptiSafeResult r;
  r.O = O;
  r.C = C;
  r.B = 1.0 - std::abs(O - C);
  r.R = std::sqrt(O * O + C * C) / std::numbers::sqrt2;
  r.osi = r.B * r.R;
  return r;
}

OptiSafeResult optisafe(double length, double optimal_length, double clearance,
                        double safe_clearance) noexcept {
  double safety_dev = 1.0;
  if (safe_clearance > 0.0) {
    safety_dev = clearance >= safe_clearance ? 0.0 : (safe_clearance - clearance) / safe_clearance;
  }
  double optimality_dev = 1.0;
  if (optimal_length > 0.0) {
    optimality_dev = std::min(1.0, std::max((length - optimal_length) / optimal_length, 0.0));
  }
  return optisafe_from_indices(1.0 - optimality_dev, 1.0 - safety_dev);
}

std::shared_ptr<const References> ReferenceCache::get(GridIndex start, GridIndex goal) {
  const auto key = std::make_pair(start, goal);
  {
    std::shared_lock lock(mutex_);
    if (const auto it = entries_.find(key); it != entries_.end()) return it->second;
  }

  auto refs = std::make_shared<References>();
  refs->optimal = astar_shortest(*grid_, start, goal);
  refs->safest = maximin_clearance_path(*grid_, *dfield_, start, goal);
  if (!refs->optimal.ok() || !refs->safest.ok()) {
    throw std::logic_error("reference planner failed for " + to_string(start) + " -> " +
                           to_string(goal));
  }
  const double cell = grid_->cell_size();
  refs->optimal_length_m = path_length(refs->optimal.path, cell);
  refs->safe_clearance_m = min_clearance(refs->safest.path, *dfield_, cell);

  std::unique_lock lock(mutex_);
  const auto [it, inserted] = entries_.emplace(key, std::move(refs));
  return it->second;
}

std::size_t ReferenceCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

Evaluation evaluate_planner(const OccupancyGrid& grid, const DistanceField& dfield,
                            const PlanResult& plan, double cell_size, ReferenceCache* cache) {
  if (!plan.ok() || plan.path.empty()) {
    throw ParameterError("evaluate_planner: plan is not a success");
  }
  const GridIndex start = plan.path.front();
  const GridIndex goal = plan.path.back();

  Evaluation ev;
  ev.metrics.length_m = path_length(plan.path, cell_size);
  ev.metrics.min_clearance_m = min_clearance(plan.path, dfield, cell_size);
  ev.metrics.turn_deg = turning_angle(plan.path);

  ReferenceCache local(grid, dfield);
  const auto refs = (cache != nullptr ? *cache : local).get(start, goal);
  const double optimal_length = path_length(refs->optimal.path, cell_size);
  const double safe_clearance = min_clearance(refs->safest.path, dfield, cell_size);
  ev.osi = optisafe(ev.metrics.length_m, optimal_length, ev.metrics.min_clearance_m, safe_clearance);
  return ev;
}

}  // namespace safeplan
