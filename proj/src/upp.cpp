#include "safeplan/upp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <string>

namespace safeplan {

namespace {

void require(bool condition, const char* what) {
  if (!condition) throw ParameterError(std::string("invalid planner config: ") + what);
}

}  // namespace

void UppConfig::validate() const {
  require(alpha_min > 0.0 && alpha_min <= alpha_max && alpha_max < 1.0,
          "need 0 < alpha_min <= alpha_max < 1");
  require(alpha_base > 0.0 && alpha_base < 1.0, "alpha_base must lie in (0,1)");
  require(beta_base > 0.0, "beta_base must be positive");
  require(beta_min > 0.0 && beta_min <= beta_max, "need 0 < beta_min <= beta_max");
  require(r_base > 0.0, "r_base must be positive");
  require(r_min >= 1 && r_min <= r_max, "need 1 <= r_min <= r_max");
  require(epsilon > 0.0, "epsilon must be positive");
  require(gamma_rec > 1.0, "gamma_rec must exceed 1");
  require(gamma_dec > 0.0 && gamma_dec < 1.0, "gamma_dec must lie in (0,1)");
  require(k_beta >= 1, "k_beta must be positive");
  require(tau_goal > 0.0, "tau_goal must be positive");
  require(eta_rec > 1.0, "eta_rec must exceed 1");
  require(eta_dec > 0.0 && eta_dec < 1.0, "eta_dec must lie in (0,1)");
  require(k_alpha >= 1, "k_alpha must be positive");
  require(tau_ang > 0.0, "tau_ang must be positive");
  require(theta_tar >= 0.0 && theta_tar <= std::numbers::pi, "theta_tar must lie in [0, pi]");
}

Initialization init_params(const OccupancyGrid& grid, const FreeSpaceStats& stats,
                           const UppConfig& config) {
  Initialization init;
  init.stats = stats;
  init.params.alpha = config.alpha_base;
  init.params.beta = std::clamp(config.beta_base * stats.rho * stats.sigma / (stats.mu + config.epsilon),
                                config.beta_min, config.beta_max);
  const double scaled_radius = std::round(config.r_base * (stats.mu + stats.sigma));
  init.params.radius = static_cast<int>(std::clamp(scaled_radius, static_cast<double>(config.r_min),
                                                   static_cast<double>(config.r_max)));
  init.safety = compute_safety_field(grid, build_kernel(init.params.radius, config.epsilon));
  return init;
}

double heuristic(GridIndex n, GridIndex t, const UppParams& params, const SafetyField& safety) noexcept {
  const double dr = std::abs(static_cast<double>(n.row - t.row));
  const double dc = std::abs(static_cast<double>(n.col - t.col));
  const double manhattan = dr + dc;
  const double chebyshev = std::max(dr, dc);
  return params.alpha * manhattan + (1.0 - params.alpha) * chebyshev + params.beta * safety.at(n);
}

double wrap_angle(double radians) noexcept {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double m = std::fmod(radians + std::numbers::pi, kTwoPi);
  if (m < 0.0) m += kTwoPi;
  return m - std::numbers::pi;
}

Adaptation update_params(GridIndex n, GridIndex t, std::optional<GridIndex> parent,
                         const UppParams& params, const AdaptiveState& state,
                         const UppConfig& config) noexcept {
  Adaptation next{params, state};
  UppParams& p = next.params;
  AdaptiveState& s = next.state;

  const double to_goal_r = static_cast<double>(t.row - n.row);
  const double to_goal_c = static_cast<double>(t.col - n.col);
  const double cur_dist = std::hypot(to_goal_r, to_goal_c);

  if (config.adapt_beta) {
    const double delta = cur_dist - s.prev_dist;
    if (delta < -config.tau_goal) {
      s.stalled = 0;
      p.beta = std::min(p.beta * config.gamma_rec, config.beta_max);
    } else if (delta > config.tau_goal) {
      s.stalled = 0;
      p.beta = std::max(p.beta * config.gamma_dec, config.beta_min);
    } else {
      s.stalled += 1;
      if (s.stalled >= config.k_beta) {
        p.beta = std::max(p.beta * config.gamma_dec, config.beta_min);
        s.stalled = 0;
      }
    }
  }
  s.prev_dist = cur_dist;

  if (config.adapt_alpha) {
    double theta_turn = 0.0;
    if (parent) {
      const double move_heading = std::atan2(static_cast<double>(n.row - parent->row),
                                             static_cast<double>(n.col - parent->col));
      const double goal_heading = std::atan2(to_goal_r, to_goal_c);
      theta_turn = std::abs(wrap_angle(goal_heading - move_heading));
    }
    s.turn_sum += theta_turn - config.theta_tar;
    s.turn_iter += 1;
    if (s.turn_iter >= config.k_alpha) {
      if (s.turn_sum > config.tau_ang) {
        p.alpha = std::min(p.alpha * config.eta_rec, config.alpha_max);
      } else if (s.turn_sum < -config.tau_ang) {
        p.alpha = std::max(p.alpha * config.eta_dec, config.alpha_min);
      }
      s.turn_sum = 0.0;
      s.turn_iter = 0;
    }
  }
  return next;
}

UnifiedPlanner::UnifiedPlanner(const OccupancyGrid& grid, UppConfig config)
    : grid_(&grid), config_(config), distance_(distance_transform(grid)) {
  config_.validate();
  init_ = init_params(grid, free_space_stats(grid, distance_), config_);
  g_.resize(grid.size());
  parent_.assign(grid.size(), -1);
  closed_.assign(grid.size(), 0);
  seen_.assign(grid.size(), 0);
}

namespace {

struct OpenEntry {
  double f;
  double h;
  std::uint64_t seq;
  std::int32_t node;
};

// Min-heap order: f, then h (goal-biased), then insertion order.
struct OpenAfter {
  bool operator()(const OpenEntry& a, const OpenEntry& b) const noexcept {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.seq > b.seq;
  }
};

}  // namespace

PlanResult UnifiedPlanner::plan(GridIndex start, GridIndex goal) {
  const OccupancyGrid& grid = *grid_;
  if (!grid.is_free(start)) return PlanResult::failure(FailureReason::start_invalid);
  if (!grid.is_free(goal)) return PlanResult::failure(FailureReason::goal_invalid);
  if (start == goal) {
    PlanResult r;
    r.outcome = Outcome::success;
    r.reason = FailureReason::none;
    r.path = {start};
    return r;
  }

  for (const auto i : touched_) {
    parent_[i] = -1;
    closed_[i] = 0;
    seen_[i] = 0;
  }
  touched_.clear();

  const SafetyField& safety = init_.safety;
  UppParams params = init_.params;
  AdaptiveState state;
  state.prev_dist = std::hypot(static_cast<double>(start.row - goal.row),
                               static_cast<double>(start.col - goal.col));

  std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenAfter> open;
  std::uint64_t seq = 0;
  const auto s_idx = grid.index(start);
  g_[s_idx] = StepCount{};
  seen_[s_idx] = 1;
  touched_.push_back(s_idx);
  const double h_start = heuristic(start, goal, params, safety);
  open.push({h_start, h_start, seq++, static_cast<std::int32_t>(s_idx)});

  PlanResult result;
  const auto goal_idx = grid.index(goal);
  bool found = false;

  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    const auto n_idx = static_cast<std::size_t>(top.node);
    if (closed_[n_idx]) continue;
    closed_[n_idx] = 1;
    if (n_idx == goal_idx) {
      found = true;
      break;
    }

    const GridIndex n = grid.cell(n_idx);
    std::optional<GridIndex> parent;
    if (parent_[n_idx] >= 0) parent = grid.cell(static_cast<std::size_t>(parent_[n_idx]));
    const Adaptation next = update_params(n, goal, parent, params, state, config_);
    params = next.params;
    state = next.state;
    ++result.expanded;
    if (config_.record_trace) {
      result.trace.push_back({result.expanded, n, params.alpha, params.beta, top.h});
    }

    // Successors extend the node's best-known cost; that is the cost of its
    // parent chain, which cannot change once the node is closed.
    const StepCount g_n = g_[n_idx];
    for (const Neighbor& nb : neighbors(grid, n)) {
      const auto m_idx = grid.index(nb.cell);
      if (closed_[m_idx]) continue;
      const StepCount g_new = g_n.plus(nb.cost);
      if (!seen_[m_idx] || g_new.value() < g_[m_idx].value()) {
        if (!seen_[m_idx]) {
          seen_[m_idx] = 1;
          touched_.push_back(m_idx);
        }
        g_[m_idx] = g_new;
        parent_[m_idx] = static_cast<std::int32_t>(n_idx);
        const double h = heuristic(nb.cell, goal, params, safety);
        open.push({g_new.value() + h, h, seq++, static_cast<std::int32_t>(m_idx)});
      }
    }
  }

  if (!found) {
    result.reason = FailureReason::no_path;
    return result;
  }

  for (std::int32_t i = static_cast<std::int32_t>(goal_idx); i >= 0; i = parent_[static_cast<std::size_t>(i)]) {
    result.path.push_back(grid.cell(static_cast<std::size_t>(i)));
  }
  std::reverse(result.path.begin(), result.path.end());
  result.outcome = Outcome::success;
  result.reason = FailureReason::none;
  result.g_cost = g_[goal_idx].value();
  return result;
}

PlanResult plan(const OccupancyGrid& grid, GridIndex start, GridIndex goal, const UppConfig& config) {
  UnifiedPlanner planner(grid, config);
  return planner.plan(start, goal);
}

}  // namespace safeplan
