// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "safeplan/baselines.hpp"
#include "safeplan/bench.hpp"
#include "safeplan/metrics.hpp"
#include "safeplan/safety.hpp"
#include "safeplan/upp.hpp"

#ifndef SAFEPLAN_CLI_PATH
#error "SAFEPLAN_CLI_PATH must name the CLI binary"
#endif

namespace sb = safeplan::bench;
using safeplan::GridIndex;
using safeplan::OccupancyGrid;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

// Cluttered desk-scale maps shared by the trend criteria (6, 7, 8).
constexpr double kTrendDensity = 0.2;
constexpr double kEndpointClearance = 2.0;

sb::MapSpec trend_map(std::uint64_t seed) {
  sb::MapSpec spec;
  spec.width = 128;
  spec.height = 128;
  spec.density = kTrendDensity;
  spec.style = sb::MapStyle::cluttered_scatter;
  spec.seed = seed;
  return spec;
}

sb::BenchOptions trend_options() {
  sb::BenchOptions options;
  options.scenarios.min_endpoint_clearance = kEndpointClearance;
  return options;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Verdict ac1_safety_field() {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> dim(1, 16);
  std::uniform_real_distribution<double> dens(0.0, 0.6);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto grid = oracle::random_grid(rng, dim(rng), dim(rng), dens(rng));
    const int r = 1 + i % 3;
    const auto field = safeplan::compute_safety_field(grid, safeplan::build_kernel(r, 0.01));
    const auto ref = oracle::safety_field(grid, r, 0.01);
    for (std::size_t k = 0; k < ref.size(); ++k) worst = std::max(worst, std::abs(field[k] - ref[k]));
  }
  return {worst <= 1e-9, fmt("200 grids, max |diff| = %.3g (isa %s)", worst,
                             std::string(safeplan::kernels::isa_name(safeplan::kernels::active_isa())).c_str())};
}

Verdict ac2_distance_transform() {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<int> dim(1, 16);
  std::uniform_real_distribution<double> dens(0.0, 0.6);
  std::size_t mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const auto grid = oracle::random_grid(rng, dim(rng), dim(rng), dens(rng));
    const auto field = safeplan::distance_transform(grid);
    const auto ref = oracle::distance_field(grid);
    for (std::size_t k = 0; k < ref.size(); ++k) mismatches += field[k] != ref[k] ? 1 : 0;
  }
  return {mismatches == 0, fmt("200 grids, %zu mismatching cells", mismatches)};
}

struct Instance {
  OccupancyGrid grid;
  GridIndex s;
  GridIndex t;
};

// 500 i.i.d. 32x32 grids cycling densities 0.1, 0.3, 0.5; endpoints drawn
// from the free cells (independently, so some pairs are disconnected).
const std::vector<Instance>& completeness_instances() {
  static const std::vector<Instance> instances = [] {
    std::vector<Instance> out;
    std::mt19937_64 rng(303);
    const double densities[] = {0.1, 0.3, 0.5};
    while (out.size() < 500) {
      auto grid = oracle::random_grid(rng, 32, 32, densities[out.size() % 3]);
      const auto free = oracle::free_cells(grid);
      if (free.size() < 2) continue;
      std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
      const GridIndex s = free[pick(rng)];
      GridIndex t = free[pick(rng)];
      while (t == s) t = free[pick(rng)];
      out.push_back({std::move(grid), s, t});
    }
    return out;
  }();
  return instances;
}

Verdict ac3_completeness() {
  std::size_t disagree = 0;
  std::size_t connected = 0;
  for (const auto& inst : completeness_instances()) {
    const auto result = safeplan::plan(inst.grid, inst.s, inst.t);
    const bool reach = safeplan::bfs_reachable(inst.grid, inst.s, inst.t);
    connected += reach ? 1 : 0;
    const bool valid = result.ok() && safeplan::is_valid_path(inst.grid, result.path, inst.s, inst.t);
    if (valid != reach) ++disagree;
  }
  return {disagree == 0, fmt("500 instances (%zu connected), %zu disagreements", connected, disagree)};
}

Verdict ac4_suboptimality() {
  std::size_t violations = 0;
  std::vector<double> overhead;
  const safeplan::UppConfig config;
  for (const auto& inst : completeness_instances()) {
    if (!safeplan::bfs_reachable(inst.grid, inst.s, inst.t)) continue;
    safeplan::UnifiedPlanner planner(inst.grid, config);
    const auto result = planner.plan(inst.s, inst.t);
    const double j_star = safeplan::dijkstra_costs(inst.grid, inst.s).at(inst.t);
    const double slack =
        config.beta_max * safeplan::safety_upper_bound(2, planner.initialization().params.radius, config.epsilon);
    if (!result.ok() || result.g_cost > j_star + slack + 1e-9) ++violations;
    if (result.ok() && j_star > 0.0) overhead.push_back((result.g_cost - j_star) / j_star);
  }
  const double med = sb::median(overhead);
  return {violations == 0 && med <= 0.05,
          fmt("%zu connected instances, %zu bound violations, median overhead %.3f%% (limit 5%%)", overhead.size(),
              violations, 100.0 * med)};
}

Verdict ac5_optisafe() {
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> len(0.0, 10.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    double l_opt = len(rng);
    double l_p = l_opt * (1.0 + 1.5 * unit(rng));
    double d_safe = len(rng);
    double d_p = d_safe * 1.2 * unit(rng);
    switch (i % 10) {  // boundary cases mixed in
      case 0: l_p = l_opt; break;
      case 1: d_p = d_safe; break;
      case 2: l_p = 2.0 * l_opt; break;
      case 3: d_p = 0.0; break;
      case 4: l_opt = 0.0; break;
      case 5: d_safe = 0.0; break;
      default: break;
    }
    const auto r = safeplan::optisafe(l_p, l_opt, d_p, d_safe);
    const auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in01(r.O) || !in01(r.C) || !in01(r.B) || !in01(r.R) || !in01(r.osi)) ++bad;
    if (r.osi != r.B * r.R) ++bad;
    const auto swapped = safeplan::optisafe_from_indices(r.C, r.O);
    if (swapped.osi != r.osi) ++bad;
    if ((r.B == 1.0) != (r.O == r.C)) ++bad;
    if ((r.R == 1.0) != (r.O == 1.0 && r.C == 1.0)) ++bad;
    if ((r.R == 0.0) != (r.O == 0.0 && r.C == 0.0)) ++bad;
    if (l_opt <= 0.0 && r.O != 0.0) ++bad;
    if (d_safe <= 0.0 && r.C != 0.0) ++bad;
    if (l_opt > 0.0 && l_p == l_opt && r.O != 1.0) ++bad;
    if (d_safe > 0.0 && d_p >= d_safe && r.C != 1.0) ++bad;
  }
  const auto top = safeplan::optisafe_from_indices(1.0, 1.0);
  const auto split = safeplan::optisafe_from_indices(1.0, 0.0);
  if (top.osi != 1.0) ++bad;
  if (split.osi != 0.0) ++bad;
  return {bad == 0, fmt("10000 tuples + fixed cases, %zu violated checks", bad)};
}

std::vector<double> column(const sb::BenchReport& report, const std::string& planner,
                           const std::function<double(const sb::BenchRow&)>& get) {
  std::vector<double> out;
  for (const auto& row : report.rows) {
    if (row.planner == planner && row.outcome == safeplan::Outcome::success) out.push_back(get(row));
  }
  return out;
}

Verdict ac6_safety_trend() {
  std::vector<sb::MapSpec> maps;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) maps.push_back(trend_map(seed));
  const sb::PlannerKind planners[] = {sb::PlannerKind::upp, sb::PlannerKind::astar};
  const auto report = sb::run_benchmark(maps, planners, 10, 606, trend_options());
  const auto clr = [](const sb::BenchRow& r) { return r.metrics.min_clearance_m * 100.0; };
  const auto osi = [](const sb::BenchRow& r) { return r.osi.osi; };
  const auto upp_clr = column(report, "upp", clr);
  const auto a_clr = column(report, "astar", clr);
  const auto upp_osi = column(report, "upp", osi);
  const auto a_osi = column(report, "astar", osi);
  const double mc_u = sb::median(upp_clr);
  const double mc_a = sb::median(a_clr);
  const double mo_u = sb::median(upp_osi);
  const double mo_a = sb::median(a_osi);
  const bool all_ok = upp_clr.size() == 50 && a_clr.size() == 50;
  return {all_ok && mc_u > mc_a && mo_u > mo_a,
          fmt("50 scenarios, median clearance upp %.2f cm vs astar %.2f cm, median osi upp %.4f vs astar %.4f",
              mc_u, mc_a, mo_u, mo_a)};
}

std::map<std::string, std::vector<const sb::BenchRow*>> by_section(const sb::BenchReport& report) {
  std::map<std::string, std::vector<const sb::BenchRow*>> out;
  for (const auto& row : report.rows) out[row.section].push_back(&row);
  return out;
}

double section_median(const std::vector<const sb::BenchRow*>& rows, const std::function<double(const sb::BenchRow&)>& get) {
  std::vector<double> v;
  for (const auto* r : rows) {
    if (r->outcome == safeplan::Outcome::success) v.push_back(get(*r));
  }
  return sb::median(v);
}

Verdict ac7_ablation_trend() {
  const sb::AblationMode modes[] = {sb::AblationMode::both_fixed, sb::AblationMode::adaptive_alpha,
                                    sb::AblationMode::both_adaptive};
  const sb::InitPair inits[] = {{0.5, 10.0}};
  const auto report = sb::run_ablation(trend_map(1), modes, inits, 30, 707, trend_options());
  const auto sections = by_section(report);
  const auto expanded = [](const sb::BenchRow& r) { return static_cast<double>(r.expanded); };
  const auto turn = [](const sb::BenchRow& r) { return r.metrics.turn_deg; };
  const double exp_fixed = section_median(sections.at("both-fixed/a0.5_b10"), expanded);
  const double exp_adapt = section_median(sections.at("both-adaptive/a0.5_b10"), expanded);
  const double turn_fixed = section_median(sections.at("both-fixed/a0.5_b10"), turn);
  const double turn_alpha = section_median(sections.at("adaptive-alpha/a0.5_b10"), turn);
  return {exp_adapt <= exp_fixed && turn_alpha <= turn_fixed,
          fmt("median expanded both-adaptive %.1f vs both-fixed %.1f; median turn adaptive-alpha %.1f deg vs "
              "both-fixed %.1f deg",
              exp_adapt, exp_fixed, turn_alpha, turn_fixed)};
}

Verdict ac8_init_robustness() {
  const sb::AblationMode modes[] = {sb::AblationMode::both_adaptive};
  const sb::InitPair inits[] = {{0.25, 2.5}, {0.5, 10.0}, {0.75, 40.0}};
  bool pass = true;
  std::string detail;
  for (std::uint64_t seed : {1u, 2u}) {
    const auto report = sb::run_ablation(trend_map(seed), modes, inits, 30, 808, trend_options());
    double lmin = INFINITY, lmax = 0.0, cmin = INFINITY, cmax = 0.0;
    for (const auto& s : sb::summarize(report)) {
      lmin = std::min(lmin, s.mean_length_m);
      lmax = std::max(lmax, s.mean_length_m);
      cmin = std::min(cmin, s.mean_clearance_cm);
      cmax = std::max(cmax, s.mean_clearance_cm);
    }
    const double lspread = (lmax - lmin) / lmin;
    const double cspread = (cmax - cmin) / cmin;
    pass = pass && lspread <= 0.02 && cspread <= 0.02;
    detail += fmt("%smap s%llu: length spread %.2f%%, clearance spread %.2f%%", detail.empty() ? "" : "; ",
                  static_cast<unsigned long long>(seed), 100.0 * lspread, 100.0 * cspread);
  }
  return {pass, detail + " (limit 2%)"};
}

Verdict ac9_maximin() {
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<int> dim(2, 6);
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  while (cases < 200) {
    const int w = dim(rng);
    const int h = dim(rng);
    OccupancyGrid grid(w, h, 1.0);
    std::uniform_int_distribution<int> count(0, std::min(12, w * h - 2));
    std::uniform_int_distribution<int> cell(0, w * h - 1);
    for (int k = count(rng); k > 0; --k) {
      const int i = cell(rng);
      grid.set_occupied({i / w, i % w}, true);
    }
    const auto free = oracle::free_cells(grid);
    if (free.size() < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
    const GridIndex s = free[pick(rng)];
    const GridIndex t = free[pick(rng)];
    const auto ref = oracle::maximin_by_enumeration(grid, oracle::distance_field(grid), s, t);
    const auto dfield = safeplan::distance_transform(grid);
    const auto result = safeplan::maximin_clearance_path(grid, dfield, s, t);
    ++cases;
    if (!ref) {
      mismatches += result.ok() ? 1 : 0;
    } else if (!result.ok() || !safeplan::is_valid_path(grid, result.path, s, t) ||
               safeplan::path_bottleneck(dfield, result.path) != *ref) {
      ++mismatches;
    }
  }
  return {mismatches == 0, fmt("%zu cases, %zu mismatches", cases, mismatches)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict ac10_determinism() {
  const auto root = std::filesystem::temp_directory_path() /
                    ("safeplan_ac10_" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
  std::string csv[2];
  for (int run = 0; run < 2; ++run) {
    const auto dir = root / ("run" + std::to_string(run));
    const std::string cmd = std::string("\"") + SAFEPLAN_CLI_PATH +
                            "\" bench --maps cluttered:96x96:0.2:3,sparse:96x96:0.15:4 --planners upp,astar,maximin "
                            "--trials 8 --seed 1234 --out \"" +
                            dir.string() + "\" > /dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "bench command failed: " + cmd};
    csv[run] = sb::drop_column(slurp(dir / "report.csv"), "time_ms");
  }
  std::error_code ec;
  std::filesystem::remove_all(root, ec);
  const auto lines = std::count(csv[0].begin(), csv[0].end(), '\n');
  return {!csv[0].empty() && csv[0] == csv[1],
          fmt("two bench runs, %ld CSV lines, identical without time_ms: %s", static_cast<long>(lines),
              csv[0] == csv[1] ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    Verdict (*run)();
    double limit_s;  // 0 = no runtime limit
  };
  const Criterion criteria[] = {
      {"AC1", "safety field equals brute force", ac1_safety_field, 10.0},
      {"AC2", "distance transform equals brute force", ac2_distance_transform, 10.0},
      {"AC3", "completeness against reachability", ac3_completeness, 60.0},
      {"AC4", "bounded suboptimality and median overhead", ac4_suboptimality, 0.0},
      {"AC5", "OptiSafe algebra", ac5_optisafe, 5.0},
      {"AC6", "UPP safer than A* on cluttered maps", ac6_safety_trend, 300.0},
      {"AC7", "ablation trends", ac7_ablation_trend, 0.0},
      {"AC8", "initialization robustness", ac8_init_robustness, 0.0},
      {"AC9", "maximin equals exhaustive enumeration", ac9_maximin, 0.0},
      {"AC10", "bench determinism", ac10_determinism, 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0.0 && secs > c.limit_s) {
      v.pass = false;
      v.detail += fmt(" [over time limit %.0f s]", c.limit_s);
    }
    std::printf("%-4s %s  %s: %s (%.2f s)\n", c.id, v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str(), secs);
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
