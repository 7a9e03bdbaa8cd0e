#include <algorithm>
#include <cstdlib>
#include <deque>
#include <random>
#include <vector>

#include "safeplan/bench.hpp"
#include "seeding.hpp"

namespace safeplan::bench {

namespace {

// Connected-component label per free cell (same edge set as neighbors());
// -1 for obstacles.
std::vector<std::int32_t> label_components(const OccupancyGrid& grid) {
  std::vector<std::int32_t> label(grid.size(), -1);
  std::int32_t next = 0;
  std::deque<std::size_t> frontier;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.cells()[i] != 0 || label[i] >= 0) continue;
    label[i] = next;
    frontier.push_back(i);
    while (!frontier.empty()) {
      const auto n = frontier.front();
      frontier.pop_front();
      for (const Neighbor& nb : neighbors(grid, grid.cell(n))) {
        const auto m = grid.index(nb.cell);
        if (label[m] < 0) {
          label[m] = next;
          frontier.push_back(m);
        }
      }
    }
    ++next;
  }
  return label;
}

}  // namespace

std::vector<Scenario> sample_scenarios(const OccupancyGrid& grid, std::size_t count,
                                       std::uint64_t seed, const std::string& map_id,
                                       const ScenarioOptions& options) {
  std::vector<Scenario> out;
  if (count == 0) return out;

  const DistanceField dfield = distance_transform(grid);
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.cells()[i] == 0 && dfield[i] >= options.min_endpoint_clearance) candidates.push_back(i);
  }
  if (candidates.size() < 2) {
    throw GenerationError("map '" + map_id + "' has fewer than two eligible free cells");
  }

  const auto labels = label_components(grid);
  const double min_sep = static_cast<double>(std::max(grid.width(), grid.height())) / 4.0;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  const std::size_t budget = 1000 + 500 * count;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (attempts++ >= budget) {
      throw GenerationError("map '" + map_id + "': could not sample " + std::to_string(count) +
                            " valid scenarios after " + std::to_string(budget) + " attempts");
    }
    const auto a = candidates[pick(rng)];
    const auto b = candidates[pick(rng)];
    if (a == b || labels[a] != labels[b]) continue;
    const GridIndex s = grid.cell(a);
    const GridIndex t = grid.cell(b);
    const int sep = std::max(std::abs(s.row - t.row), std::abs(s.col - t.col));
    if (static_cast<double>(sep) < min_sep) continue;
    Scenario sc;
    sc.map_id = map_id;
    sc.index = out.size();
    sc.start = s;
    sc.goal = t;
    sc.seed = detail::mix_seed(seed, sc.index);
    out.push_back(std::move(sc));
  }
  return out;
}

}  // namespace safeplan::bench
