#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "safeplan/grid_map.hpp"
#include "safeplan/metrics.hpp"
#include "safeplan/plan_result.hpp"
#include "safeplan/safety.hpp"
#include "safeplan/upp.hpp"

namespace safeplan::bench {

/// Scenario sampling could not satisfy its constraints.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Report, SVG or PGM output could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Maps and scenarios

enum class MapStyle { sparse_blocks, cluttered_scatter };

struct MapSpec {
  int width = 128;
  int height = 128;
  double cell_size = 0.05;
  double density = 0.2;
  MapStyle style = MapStyle::cluttered_scatter;
  std::uint64_t seed = 1;

  /// Stable identifier, e.g. "cluttered-128x128-d0.20-s1".
  std::string id() const;
};

/// "<style>:<W>x<H>:<density>:<seed>[:<cell_size>]" with style "sparse" or
/// "cluttered". Throws FormatError.
MapSpec parse_map_spec(std::string_view text);

/// Free border of this many cells on every side of a generated map.
inline constexpr int kMapMargin = 2;

/// Deterministic from spec.seed. Sparse maps get a few large rectangles,
/// cluttered maps many discs of radius 1-3; obstacles are added until the
/// interior (border margin excluded) reaches the requested density. Throws
/// ParameterError for density outside [0, 0.6) or a map too small for the
/// margin.
OccupancyGrid generate_map(const MapSpec& spec);

/// Obstacle fraction of the cells inside the border margin.
double interior_density(const OccupancyGrid& grid, int margin = kMapMargin);

struct Scenario {
  std::string map_id;
  std::size_t index = 0;
  GridIndex start;
  GridIndex goal;
  std::uint64_t seed = 0;

  std::string id() const { return map_id + "/" + std::to_string(index); }
};

struct ScenarioOptions {
  /// Endpoints must have at least this distance-field value (cells).
  double min_endpoint_clearance = 0.0;
};

/// `count` start/goal pairs: distinct, free, mutually reachable and at least
/// max(width, height)/4 apart in Chebyshev distance. Throws GenerationError
/// when the constraints cannot be met within the retry budget.
std::vector<Scenario> sample_scenarios(const OccupancyGrid& grid, std::size_t count,
                                       std::uint64_t seed, const std::string& map_id = "map",
                                       const ScenarioOptions& options = {});

// ---------------------------------------------------------------------------
// Running planners

enum class PlannerKind { upp, astar, maximin };

std::string_view planner_name(PlannerKind kind) noexcept;
/// Comma-separated list of "upp", "astar", "maximin". Throws FormatError.
std::vector<PlannerKind> parse_planner_list(std::string_view text);

struct BenchRow {
  std::string section;  ///< ablation section; empty for plain benchmarks
  std::string scenario_id;
  std::string planner;
  GridIndex start;
  GridIndex goal;
  Outcome outcome = Outcome::failure;
  std::string error;  ///< exception text if the planner threw
  double time_ms = 0.0;
  std::size_t expanded = 0;
  PathMetrics metrics;
  OptiSafeResult osi;
  std::vector<GridIndex> path;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::string timing_note =
      "time_ms is wall-clock around the plan call only; cells run one at a time, so other load on the "
      "machine is the only interference";
};

struct Summary {
  std::string section;
  std::string planner;
  std::size_t rows = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;  ///< percent
  double mean_time_ms = 0.0;
  double median_time_ms = 0.0;
  double mean_length_m = 0.0;
  double median_length_m = 0.0;
  double mean_clearance_cm = 0.0;
  double median_clearance_cm = 0.0;
  double min_clearance_cm = 0.0;
  double mean_turn_deg = 0.0;
  double median_turn_deg = 0.0;
  double mean_osi = 0.0;
  double median_osi = 0.0;
  double median_expanded = 0.0;
};

/// One summary per (section, planner) in first-appearance order. Statistics
/// other than success_rate cover successful rows only.
std::vector<Summary> summarize(const BenchReport& report);

double median(std::vector<double> values);

struct BenchOptions {
  UppConfig config;
  ScenarioOptions scenarios;
};

/// Every scenario x planner cell: plan, time the plan call, and evaluate
/// successful paths (metrics + OptiSafe). Exceptions from a planner mark
/// that row failed. Deterministic apart from time_ms.
BenchReport run_benchmark(std::span<const MapSpec> maps, std::span<const PlannerKind> planners,
                          std::size_t trials, std::uint64_t seed, const BenchOptions& options = {});

enum class AblationMode { both_fixed, adaptive_alpha, adaptive_beta, both_adaptive };

std::string_view mode_name(AblationMode mode) noexcept;
/// Single mode name, or "all". Throws FormatError.
std::vector<AblationMode> parse_modes(std::string_view text);

struct InitPair {
  double alpha0 = 0.5;
  double beta0 = 10.0;
};

/// "a:b,a:b,..." Throws FormatError.
std::vector<InitPair> parse_inits(std::string_view text);

/// UPP alone on one map, one section per (mode, init) pair over a shared
/// scenario set. Sections are named "<mode>/a<alpha0>_b<beta0>".
BenchReport run_ablation(const MapSpec& map, std::span<const AblationMode> modes,
                         std::span<const InitPair> inits, std::size_t trials, std::uint64_t seed,
                         const BenchOptions& options = {});

// ---------------------------------------------------------------------------
// Output

/// scenario_id, planner, outcome, time_ms, length_m, clearance_cm, turn_deg,
/// O, C, osi. Failed rows leave metric columns empty.
void write_csv(const BenchReport& report, std::ostream& out);
/// section, scenario_id, outcome, time_ms, length_m, clearance_cm, turn_deg,
/// expanded.
void write_ablation_csv(const BenchReport& report, std::ostream& out);
void write_json(const BenchReport& report, std::ostream& out);
/// Paths sidecar: every row's endpoints and cell sequence.
void write_paths(const BenchReport& report, std::ostream& out);

/// Writes report.csv (or ablation.csv), report.json and paths.json into
/// `dir`, creating it if needed. Throws IoError with the failing path.
void write_report(const BenchReport& report, const std::filesystem::path& dir, bool ablation = false);

/// Removes the named column from every line of a CSV document.
std::string drop_column(std::string_view csv, std::string_view column);

struct LabeledPath {
  std::string label;
  std::vector<GridIndex> path;
};

/// Map with obstacles filled, one coloured polyline per path, start/goal
/// markers and a legend.
std::string render_svg(const OccupancyGrid& grid, std::span<const LabeledPath> paths);

/// Grey-scale P5 dump of a field (scaled so the maximum maps to 255).
std::string field_to_pgm(const SafetyField& field);

void write_text_file(const std::filesystem::path& path, std::string_view content);

// ---------------------------------------------------------------------------
// Config files

/// `key = value` lines, '#' comments. Keys are the UppConfig field names.
/// Unknown keys and malformed values throw FormatError naming the line.
void apply_config_text(std::string_view text, UppConfig& config);
UppConfig load_config(const std::filesystem::path& path, UppConfig base = {});

/// Paths file for `eval`: one "row,col" (or "row col") per line, '#' comments.
std::vector<GridIndex> parse_path_text(std::string_view text);

}  // namespace safeplan::bench
