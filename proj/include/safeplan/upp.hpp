#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "safeplan/grid_map.hpp"
#include "safeplan/plan_result.hpp"
#include "safeplan/safety.hpp"

namespace safeplan {

/// Base values, bounds and adaptation rates of the unified planner.
struct UppConfig {
  double alpha_base = 0.5;
  double beta_base = 10.0;
  double r_base = 1.0;
  double epsilon = kDefaultEpsilon;

  double alpha_min = 0.1;
  double alpha_max = 0.9;
  double beta_min = 0.1;
  double beta_max = 50.0;
  int r_min = 1;
  int r_max = 10;

  // Safety-weight controller.
  double gamma_rec = 1.05;
  double gamma_dec = 0.90;
  int k_beta = 10;         ///< stall patience, expansions
  double tau_goal = 0.05;  ///< cells

  // Distance-mixing controller.
  double eta_rec = 1.05;
  double eta_dec = 0.95;
  int k_alpha = 8;         ///< turn window, expansions
  double tau_ang = 0.5;    ///< rad
  double theta_tar = std::numbers::pi / 4.0;

  // Ablation switches; a disabled branch leaves its parameter at the
  // initial value.
  bool adapt_alpha = true;
  bool adapt_beta = true;

  bool record_trace = false;

  /// Throws ParameterError naming the first violated constraint.
  void validate() const;
};

struct UppParams {
  double alpha = 0.5;
  double beta = 1.0;
  int radius = 1;
};

struct AdaptiveState {
  double prev_dist = 0.0;  ///< goal distance of the previous expansion, cells
  int stalled = 0;
  double turn_sum = 0.0;   ///< rad
  int turn_iter = 0;
};

struct Initialization {
  UppParams params;
  FreeSpaceStats stats;
  SafetyField safety;
};

/// Geometry-aware start values: alpha from the base, beta and r rescaled by
/// the free-space distance statistics and clipped, then the safety field for
/// the chosen radius.
Initialization init_params(const OccupancyGrid& grid, const FreeSpaceStats& stats,
                           const UppConfig& config);

/// alpha*||n-t||_1 + (1-alpha)*||n-t||_inf + beta*S(n), cell units.
double heuristic(GridIndex n, GridIndex t, const UppParams& params, const SafetyField& safety) noexcept;

/// ((x + pi) mod 2pi) - pi with a non-negative remainder.
double wrap_angle(double radians) noexcept;

struct Adaptation {
  UppParams params;
  AdaptiveState state;
};

/// One step of the progress/stall rule for beta and the windowed turn rule
/// for alpha; called once per expansion.
Adaptation update_params(GridIndex n, GridIndex t, std::optional<GridIndex> parent,
                         const UppParams& params, const AdaptiveState& state,
                         const UppConfig& config) noexcept;

/// Adaptive best-first planner over one grid. Construction runs the
/// initialization once; each plan() restarts from those initial parameters.
/// The grid must outlive the planner. An instance is not safe for concurrent
/// plan() calls; separate instances over the same grid are.
class UnifiedPlanner {
 public:
  explicit UnifiedPlanner(const OccupancyGrid& grid, UppConfig config = {});

  const UppConfig& config() const noexcept { return config_; }
  const Initialization& initialization() const noexcept { return init_; }
  const DistanceField& distance_field() const noexcept { return distance_; }

  PlanResult plan(GridIndex start, GridIndex goal);

 private:
  const OccupancyGrid* grid_;
  UppConfig config_;
  DistanceField distance_;
  Initialization init_;

  // Search scratch, reused across plan() calls.
  std::vector<StepCount> g_;
  std::vector<std::int32_t> parent_;
  std::vector<std::uint8_t> closed_;
  std::vector<std::uint8_t> seen_;
  std::vector<std::size_t> touched_;
};

PlanResult plan(const OccupancyGrid& grid, GridIndex start, GridIndex goal,
                const UppConfig& config = {});

}  // namespace safeplan
