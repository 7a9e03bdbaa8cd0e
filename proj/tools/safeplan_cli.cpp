// safeplan command-line front end: plan, bench, ablate, eval.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "safeplan/baselines.hpp"
#include "safeplan/bench.hpp"
#include "safeplan/metrics.hpp"
#include "safeplan/upp.hpp"

namespace sb = safeplan::bench;
using safeplan::GridIndex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPlanFailure = 1;
constexpr int kExitUsage = 2;

GridIndex parse_cell(const std::string& text) {
  const auto cells = sb::parse_path_text(text);
  if (cells.size() != 1) throw safeplan::FormatError("expected a cell as R,C, got '" + text + "'");
  return cells.front();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sb::IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

safeplan::UppConfig make_config(const std::string& config_path) {
  if (config_path.empty()) return {};
  return sb::load_config(config_path);
}

void print_metrics(const safeplan::Evaluation& ev) {
  std::printf("length_m      %.6f\n", ev.metrics.length_m);
  std::printf("clearance_cm  %.4f\n", ev.metrics.min_clearance_m * 100.0);
  std::printf("turn_deg      %.4f\n", ev.metrics.turn_deg);
  std::printf("O             %.6f\n", ev.osi.O);
  std::printf("C             %.6f\n", ev.osi.C);
  std::printf("B             %.6f\n", ev.osi.B);
  std::printf("R             %.6f\n", ev.osi.R);
  std::printf("osi           %.6f\n", ev.osi.osi);
}

struct PlanArgs {
  std::string map;
  std::string start;
  std::string goal;
  std::string planner = "upp";
  std::string svg;
  std::string trace;
  std::string dump_safety;
  std::string config;
};

int cmd_plan(const PlanArgs& args) {
  const auto grid = safeplan::load_map(args.map);
  const GridIndex s = parse_cell(args.start);
  const GridIndex t = parse_cell(args.goal);
  const auto kinds = sb::parse_planner_list(args.planner);
  if (kinds.size() != 1) throw safeplan::FormatError("plan takes exactly one planner");

  safeplan::UppConfig config = make_config(args.config);
  if (!args.trace.empty()) config.record_trace = true;
  const auto dfield = safeplan::distance_transform(grid);

  safeplan::PlanResult result;
  switch (kinds.front()) {
    case sb::PlannerKind::upp: {
      safeplan::UnifiedPlanner planner(grid, config);
      if (!args.dump_safety.empty()) {
        sb::write_text_file(args.dump_safety, sb::field_to_pgm(planner.initialization().safety));
      }
      result = planner.plan(s, t);
      break;
    }
    case sb::PlannerKind::astar: result = safeplan::astar_shortest(grid, s, t); break;
    case sb::PlannerKind::maximin: result = safeplan::maximin_clearance_path(grid, dfield, s, t); break;
  }
  if (!args.dump_safety.empty() && kinds.front() != sb::PlannerKind::upp) {
    const auto init = safeplan::init_params(grid, safeplan::free_space_stats(grid, dfield), config);
    sb::write_text_file(args.dump_safety, sb::field_to_pgm(init.safety));
  }

  if (!args.trace.empty()) {
    std::ostringstream out;
    out << "expansion,row,col,alpha,beta,h\n";
    for (const auto& e : result.trace) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%zu,%d,%d,%.9g,%.9g,%.9g\n", e.expansion, e.node.row, e.node.col, e.alpha,
                    e.beta, e.h);
      out << buf;
    }
    sb::write_text_file(args.trace, out.str());
  }

  std::printf("planner       %s\n", std::string(sb::planner_name(kinds.front())).c_str());
  std::printf("outcome       %s\n", std::string(safeplan::to_string(result.outcome)).c_str());
  std::printf("expanded      %zu\n", result.expanded);
  if (!result.ok()) {
    std::printf("reason        %s\n", std::string(safeplan::to_string(result.reason)).c_str());
    return kExitPlanFailure;
  }
  std::printf("g_cost        %.6f\n", result.g_cost);
  std::printf("nodes         %zu\n", result.path.size());
  print_metrics(safeplan::evaluate_planner(grid, dfield, result, grid.cell_size()));

  if (!args.svg.empty()) {
    const std::vector<sb::LabeledPath> paths = {{std::string(sb::planner_name(kinds.front())), result.path}};
    sb::write_text_file(args.svg, sb::render_svg(grid, paths));
  }
  return kExitOk;
}

struct BenchArgs {
  std::vector<std::string> maps;
  std::string planners = "upp,astar,maximin";
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::string out;
  std::string config;
  double min_clearance = 0.0;
  std::size_t svg = 0;
};

std::vector<sb::MapSpec> parse_maps(const std::vector<std::string>& items) {
  std::vector<sb::MapSpec> maps;
  for (const auto& item : items) maps.push_back(sb::parse_map_spec(item));
  return maps;
}

// One SVG per scenario (all planners overlaid) for the first `count`
// scenarios of each map.
void render_scenarios(const sb::BenchReport& report, std::span<const sb::MapSpec> maps, std::size_t count,
                      const std::filesystem::path& dir) {
  if (count == 0) return;
  std::filesystem::create_directories(dir / "svg");
  for (const auto& spec : maps) {
    const auto grid = sb::generate_map(spec);
    const std::string prefix = spec.id() + "/";
    std::map<std::string, std::vector<sb::LabeledPath>> by_scenario;
    std::vector<std::string> order;
    for (const auto& row : report.rows) {
      if (row.scenario_id.rfind(prefix, 0) != 0 || row.path.empty()) continue;
      auto [it, inserted] = by_scenario.try_emplace(row.scenario_id);
      if (inserted) order.push_back(row.scenario_id);
      it->second.push_back({row.planner, row.path});
    }
    for (std::size_t i = 0; i < order.size() && i < count; ++i) {
      std::string name = order[i];
      for (char& ch : name) {
        if (ch == '/') ch = '_';
      }
      sb::write_text_file(dir / "svg" / (name + ".svg"), sb::render_svg(grid, by_scenario[order[i]]));
    }
  }
}

int cmd_bench(const BenchArgs& args) {
  const auto maps = parse_maps(args.maps.empty() ? std::vector<std::string>{"cluttered:128x128:0.2:1"} : args.maps);
  const auto planners = sb::parse_planner_list(args.planners);
  sb::BenchOptions options;
  options.config = make_config(args.config);
  options.scenarios.min_endpoint_clearance = args.min_clearance;
  const auto report = sb::run_benchmark(maps, planners, args.trials, args.seed, options);
  sb::write_report(report, args.out);
  render_scenarios(report, maps, args.svg, args.out);
  for (const auto& s : sb::summarize(report)) {
    std::printf("%-8s success %6.2f%%  time_ms %9.3f  length_m %8.4f  clearance_cm %7.3f  turn_deg %9.2f  osi %.4f\n",
                s.planner.c_str(), s.success_rate, s.median_time_ms, s.median_length_m, s.median_clearance_cm,
                s.median_turn_deg, s.median_osi);
  }
  return kExitOk;
}

struct AblateArgs {
  std::string map = "cluttered:128x128:0.2:1";
  std::string mode = "all";
  std::string inits = "0.5:10";
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::string out;
  std::string config;
  double min_clearance = 0.0;
};

int cmd_ablate(const AblateArgs& args) {
  const auto spec = sb::parse_map_spec(args.map);
  const auto modes = sb::parse_modes(args.mode);
  const auto inits = sb::parse_inits(args.inits);
  sb::BenchOptions options;
  options.config = make_config(args.config);
  options.scenarios.min_endpoint_clearance = args.min_clearance;
  const auto report = sb::run_ablation(spec, modes, inits, args.trials, args.seed, options);
  sb::write_report(report, args.out, true);
  for (const auto& s : sb::summarize(report)) {
    std::printf("%-28s success %6.2f%%  time_ms %9.3f  length_m %8.4f  clearance_cm %7.3f  turn_deg %9.2f  "
                "expanded %9.1f\n",
                s.section.c_str(), s.success_rate, s.median_time_ms, s.median_length_m, s.median_clearance_cm,
                s.median_turn_deg, s.median_expanded);
  }
  return kExitOk;
}

struct EvalArgs {
  std::string map;
  std::string path;
};

int cmd_eval(const EvalArgs& args) {
  const auto grid = safeplan::load_map(args.map);
  const auto cells = sb::parse_path_text(read_file(args.path));
  if (cells.empty()) throw safeplan::FormatError("'" + args.path + "' contains no cells");
  if (!safeplan::is_valid_path(grid, cells, cells.front(), cells.back())) {
    throw safeplan::FormatError("'" + args.path + "' is not a valid path on the map");
  }
  const auto dfield = safeplan::distance_transform(grid);
  safeplan::PlanResult plan;
  plan.outcome = safeplan::Outcome::success;
  plan.reason = safeplan::FailureReason::none;
  plan.path = cells;
  plan.g_cost = safeplan::path_cost(cells);
  print_metrics(safeplan::evaluate_planner(grid, dfield, plan, grid.cell_size()));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Safety-aware grid path planning and benchmarking"};
  app.require_subcommand(1);

  PlanArgs plan_args;
  auto* plan = app.add_subcommand("plan", "Plan one start/goal pair on a map file");
  plan->add_option("--map", plan_args.map, "Map file (text grid or PGM)")->required();
  plan->add_option("--start", plan_args.start, "Start cell R,C")->required();
  plan->add_option("--goal", plan_args.goal, "Goal cell R,C")->required();
  plan->add_option("--planner", plan_args.planner, "upp, astar or maximin")->capture_default_str();
  plan->add_option("--svg", plan_args.svg, "Write an SVG of the map and path");
  plan->add_option("--trace", plan_args.trace, "Write the per-expansion parameter trace (CSV)");
  plan->add_option("--dump-safety", plan_args.dump_safety, "Write the safety field as PGM");
  plan->add_option("--config", plan_args.config, "Planner config file");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run planners over generated maps");
  bench->add_option("--maps", bench_args.maps, "Map spec <style>:<W>x<H>:<density>:<seed>[:<cell>]")
      ->delimiter(',');
  bench->add_option("--planners", bench_args.planners, "Comma-separated planner list")->capture_default_str();
  bench->add_option("--trials", bench_args.trials, "Scenarios per map")->capture_default_str();
  bench->add_option("--seed", bench_args.seed, "Scenario seed")->capture_default_str();
  bench->add_option("--out", bench_args.out, "Output directory")->required();
  bench->add_option("--config", bench_args.config, "Planner config file");
  bench->add_option("--min-clearance", bench_args.min_clearance, "Minimum endpoint clearance (cells)")
      ->capture_default_str();
  bench->add_option("--svg", bench_args.svg, "Render this many scenarios per map")->capture_default_str();

  AblateArgs ablate_args;
  auto* ablate = app.add_subcommand("ablate", "Compare adaptivity modes and initial weights on one map");
  ablate->add_option("--map", ablate_args.map, "Map spec")->capture_default_str();
  ablate->add_option("--mode", ablate_args.mode, "both-fixed, adaptive-alpha, adaptive-beta, both-adaptive or all")
      ->capture_default_str();
  ablate->add_option("--inits", ablate_args.inits, "Initial weights a:b,a:b,...")->capture_default_str();
  ablate->add_option("--trials", ablate_args.trials, "Scenarios")->capture_default_str();
  ablate->add_option("--seed", ablate_args.seed, "Scenario seed")->capture_default_str();
  ablate->add_option("--out", ablate_args.out, "Output directory")->required();
  ablate->add_option("--config", ablate_args.config, "Planner config file");
  ablate->add_option("--min-clearance", ablate_args.min_clearance, "Minimum endpoint clearance (cells)")
      ->capture_default_str();

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Score an existing path");
  eval->add_option("--map", eval_args.map, "Map file")->required();
  eval->add_option("--path", eval_args.path, "Path file, one R,C per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*plan) return cmd_plan(plan_args);
    if (*bench) return cmd_bench(bench_args);
    if (*ablate) return cmd_ablate(ablate_args);
    if (*eval) return cmd_eval(eval_args);
  } catch (const sb::GenerationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPlanFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
