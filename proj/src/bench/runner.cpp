#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <memory>
#include <numeric>
#include <string>

#include "safeplan/baselines.hpp"
#include "safeplan/bench.hpp"
#include "seeding.hpp"

namespace safeplan::bench {

std::string_view planner_name(PlannerKind kind) noexcept {
  switch (kind) {
    case PlannerKind::upp: return "upp";
    case PlannerKind::astar: return "astar";
    case PlannerKind::maximin: return "maximin";
  }
  return "unknown";
}

namespace {

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> items;
  while (!text.empty()) {
    const auto pos = text.find(',');
    const auto item = text.substr(0, pos);
    if (!item.empty()) items.push_back(item);
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return items;
}

double to_double(std::string_view text, std::string_view context) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw FormatError("invalid number '" + std::string(text) + "' in " + std::string(context));
}

}  // namespace

std::vector<PlannerKind> parse_planner_list(std::string_view text) {
  std::vector<PlannerKind> kinds;
  for (const auto item : split_list(text)) {
    if (item == "upp") {
      kinds.push_back(PlannerKind::upp);
    } else if (item == "astar" || item == "a*") {
      kinds.push_back(PlannerKind::astar);
    } else if (item == "maximin") {
      kinds.push_back(PlannerKind::maximin);
    } else {
      throw FormatError("unknown planner '" + std::string(item) + "' (expected upp, astar, maximin)");
    }
  }
  if (kinds.empty()) throw FormatError("planner list is empty");
  return kinds;
}

std::string_view mode_name(AblationMode mode) noexcept {
  switch (mode) {
    case AblationMode::both_fixed: return "both-fixed";
    case AblationMode::adaptive_alpha: return "adaptive-alpha";
    case AblationMode::adaptive_beta: return "adaptive-beta";
    case AblationMode::both_adaptive: return "both-adaptive";
  }
  return "unknown";
}

std::vector<AblationMode> parse_modes(std::string_view text) {
  static constexpr AblationMode kAll[] = {AblationMode::both_fixed, AblationMode::adaptive_alpha,
                                          AblationMode::adaptive_beta, AblationMode::both_adaptive};
  std::vector<AblationMode> modes;
  for (const auto item : split_list(text)) {
    if (item == "all") {
      modes.assign(std::begin(kAll), std::end(kAll));
      continue;
    }
    const auto it = std::find_if(std::begin(kAll), std::end(kAll),
                                 [&](AblationMode m) { return mode_name(m) == item; });
    if (it == std::end(kAll)) {
      throw FormatError("unknown ablation mode '" + std::string(item) +
                        "' (expected both-fixed, adaptive-alpha, adaptive-beta, both-adaptive, all)");
    }
    modes.push_back(*it);
  }
  if (modes.empty()) throw FormatError("ablation mode list is empty");
  return modes;
}

std::vector<InitPair> parse_inits(std::string_view text) {
  std::vector<InitPair> inits;
  for (const auto item : split_list(text)) {
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw FormatError("init '" + std::string(item) + "' must be <alpha0>:<beta0>");
    }
    inits.push_back({to_double(item.substr(0, colon), "inits"), to_double(item.substr(colon + 1), "inits")});
  }
  if (inits.empty()) throw FormatError("init list is empty");
  return inits;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

namespace {

double mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

// Per-map state shared by all planners: the grid, its distance field, the
// reference cache and one UPP instance (its safety field is built once).
struct MapContext {
  OccupancyGrid grid;
  DistanceField dfield;
  ReferenceCache refs;
  std::unique_ptr<UnifiedPlanner> upp;

  MapContext(OccupancyGrid g, const UppConfig& config)
      : grid(std::move(g)), dfield(distance_transform(grid)), refs(grid, dfield),
        upp(std::make_unique<UnifiedPlanner>(grid, config)) {}
};

template <class PlanFn>
BenchRow run_cell(MapContext& ctx, const Scenario& sc, std::string_view planner, PlanFn&& plan_fn) {
  BenchRow row;
  row.scenario_id = sc.id();
  row.planner = std::string(planner);
  row.start = sc.start;
  row.goal = sc.goal;
  try {
    const auto t0 = std::chrono::steady_clock::now();
    PlanResult result = plan_fn();
    const auto t1 = std::chrono::steady_clock::now();
    row.time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.expanded = result.expanded;
    row.outcome = result.outcome;
    if (result.ok()) {
      const Evaluation ev = evaluate_planner(ctx.grid, ctx.dfield, result, ctx.grid.cell_size(), &ctx.refs);
      row.metrics = ev.metrics;
      row.metrics.plan_time_ms = row.time_ms;
      row.osi = ev.osi;
      row.path = std::move(result.path);
    }
  } catch (const std::exception& e) {
    row.outcome = Outcome::failure;
    row.error = e.what();
    row.path.clear();
  }
  return row;
}

}  // namespace

BenchReport run_benchmark(std::span<const MapSpec> maps, std::span<const PlannerKind> planners,
                          std::size_t trials, std::uint64_t seed, const BenchOptions& options) {
  if (planners.empty()) throw ParameterError("run_benchmark: no planner selected");
  BenchReport report;
  if (trials == 0) return report;

  for (std::size_t m = 0; m < maps.size(); ++m) {
    const MapSpec& spec = maps[m];
    MapContext ctx(generate_map(spec), options.config);
    const auto scenarios =
        sample_scenarios(ctx.grid, trials, detail::mix_seed(seed, m), spec.id(), options.scenarios);
    for (const auto& sc : scenarios) {
      for (const PlannerKind kind : planners) {
        BenchRow row = run_cell(ctx, sc, planner_name(kind), [&]() -> PlanResult {
          switch (kind) {
            case PlannerKind::upp: return ctx.upp->plan(sc.start, sc.goal);
            case PlannerKind::astar: return astar_shortest(ctx.grid, sc.start, sc.goal);
            case PlannerKind::maximin: return maximin_clearance_path(ctx.grid, ctx.dfield, sc.start, sc.goal);
          }
          return PlanResult::failure(FailureReason::no_path);
        });
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

namespace {

std::string section_name(AblationMode mode, const InitPair& init) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s/a%g_b%g", std::string(mode_name(mode)).c_str(), init.alpha0, init.beta0);
  return buf;
}

}  // namespace

BenchReport run_ablation(const MapSpec& map, std::span<const AblationMode> modes,
                         std::span<const InitPair> inits, std::size_t trials, std::uint64_t seed,
                         const BenchOptions& options) {
  if (modes.empty() || inits.empty()) throw ParameterError("run_ablation: need at least one mode and init");
  BenchReport report;
  if (trials == 0) return report;

  MapContext ctx(generate_map(map), options.config);
  const auto scenarios = sample_scenarios(ctx.grid, trials, detail::mix_seed(seed, 0), map.id(), options.scenarios);

  for (const AblationMode mode : modes) {
    for (const InitPair& init : inits) {
      UppConfig config = options.config;
      config.alpha_base = init.alpha0;
      config.beta_base = init.beta0;
      config.adapt_alpha = mode == AblationMode::adaptive_alpha || mode == AblationMode::both_adaptive;
      config.adapt_beta = mode == AblationMode::adaptive_beta || mode == AblationMode::both_adaptive;
      UnifiedPlanner planner(ctx.grid, config);
      const std::string section = section_name(mode, init);
      for (const auto& sc : scenarios) {
        BenchRow row = run_cell(ctx, sc, "upp", [&] { return planner.plan(sc.start, sc.goal); });
        row.section = section;
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

std::vector<Summary> summarize(const BenchReport& report) {
  struct Acc {
    Summary s;
    std::vector<double> time, length, clearance, turn, osi, expanded;
  };
  std::vector<Acc> groups;
  std::map<std::pair<std::string, std::string>, std::size_t> slot;
  for (const auto& row : report.rows) {
    const auto key = std::make_pair(row.section, row.planner);
    auto [it, inserted] = slot.emplace(key, groups.size());
    if (inserted) {
      groups.emplace_back();
      groups.back().s.section = row.section;
      groups.back().s.planner = row.planner;
    }
    Acc& acc = groups[it->second];
    ++acc.s.rows;
    if (row.outcome != Outcome::success) continue;
    ++acc.s.successes;
    acc.time.push_back(row.time_ms);
    acc.length.push_back(row.metrics.length_m);
    acc.clearance.push_back(row.metrics.min_clearance_m * 100.0);
    acc.turn.push_back(row.metrics.turn_deg);
    acc.osi.push_back(row.osi.osi);
    acc.expanded.push_back(static_cast<double>(row.expanded));
  }

  std::vector<Summary> out;
  for (auto& acc : groups) {
    Summary& s = acc.s;
    s.success_rate = s.rows == 0 ? 0.0 : 100.0 * static_cast<double>(s.successes) / static_cast<double>(s.rows);
    s.mean_time_ms = mean(acc.time);
    s.median_time_ms = median(acc.time);
    s.mean_length_m = mean(acc.length);
    s.median_length_m = median(acc.length);
    s.mean_clearance_cm = mean(acc.clearance);
    s.median_clearance_cm = median(acc.clearance);
    s.min_clearance_cm = acc.clearance.empty() ? 0.0 : *std::min_element(acc.clearance.begin(), acc.clearance.end());
    s.mean_turn_deg = mean(acc.turn);
    s.median_turn_deg = median(acc.turn);
    s.mean_osi = mean(acc.osi);
    s.median_osi = median(acc.osi);
    s.median_expanded = median(acc.expanded);
    out.push_back(s);
  }
  return out;
}

}  // namespace safeplan::bench
