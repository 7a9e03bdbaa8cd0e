#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "safeplan/bench.hpp"

namespace safeplan::bench {

std::string MapSpec::id() const {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s-%dx%d-d%.2f-s%llu",
                style == MapStyle::sparse_blocks ? "sparse" : "cluttered", width, height, density,
                static_cast<unsigned long long>(seed));
  return buf;
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto pos = text.find(sep);
    parts.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return parts;
}

template <class T>
T parse_number(std::string_view text, std::string_view what, std::string_view whole) {
  T value{};
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if constexpr (std::is_floating_point_v<T>) {
    try {
      std::size_t used = 0;
      const std::string s(text);
      value = static_cast<T>(std::stod(s, &used));
      if (used != s.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw FormatError("map spec '" + std::string(whole) + "': invalid " + std::string(what));
    }
  } else {
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
      throw FormatError("map spec '" + std::string(whole) + "': invalid " + std::string(what));
    }
  }
  return value;
}

}  // namespace

MapSpec parse_map_spec(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() < 4 || parts.size() > 5) {
    throw FormatError("map spec '" + std::string(text) +
                      "': expected <style>:<W>x<H>:<density>:<seed>[:<cell_size>]");
  }
  MapSpec spec;
  if (parts[0] == "sparse" || parts[0] == "sparse-blocks") {
    spec.style = MapStyle::sparse_blocks;
  } else if (parts[0] == "cluttered" || parts[0] == "cluttered-scatter") {
    spec.style = MapStyle::cluttered_scatter;
  } else {
    throw FormatError("map spec '" + std::string(text) + "': unknown style '" + std::string(parts[0]) + "'");
  }
  const auto dims = split(parts[1], 'x');
  if (dims.size() != 2) throw FormatError("map spec '" + std::string(text) + "': size must be <W>x<H>");
  spec.width = parse_number<int>(dims[0], "width", text);
  spec.height = parse_number<int>(dims[1], "height", text);
  spec.density = parse_number<double>(parts[2], "density", text);
  spec.seed = parse_number<std::uint64_t>(parts[3], "seed", text);
  if (parts.size() == 5) spec.cell_size = parse_number<double>(parts[4], "cell size", text);
  return spec;
}

double interior_density(const OccupancyGrid& grid, int margin) {
  std::size_t obstacles = 0;
  std::size_t total = 0;
  for (int r = margin; r < grid.height() - margin; ++r) {
    for (int c = margin; c < grid.width() - margin; ++c) {
      ++total;
      obstacles += grid.occupied({r, c}) ? 1 : 0;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(obstacles) / static_cast<double>(total);
}

OccupancyGrid generate_map(const MapSpec& spec) {
  if (!(spec.density >= 0.0 && spec.density < 0.6)) {
    throw ParameterError("map density must lie in [0, 0.6), got " + std::to_string(spec.density));
  }
  if (spec.width <= 2 * kMapMargin || spec.height <= 2 * kMapMargin) {
    throw ParameterError("map must be larger than twice the border margin");
  }
  OccupancyGrid grid(spec.width, spec.height, spec.cell_size);

  const int row_lo = kMapMargin;
  const int row_hi = spec.height - kMapMargin;  // exclusive
  const int col_lo = kMapMargin;
  const int col_hi = spec.width - kMapMargin;
  const auto interior = static_cast<std::size_t>(row_hi - row_lo) * static_cast<std::size_t>(col_hi - col_lo);
  const auto target = static_cast<std::size_t>(std::llround(spec.density * static_cast<double>(interior)));

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<int> pick_row(row_lo, row_hi - 1);
  std::uniform_int_distribution<int> pick_col(col_lo, col_hi - 1);

  std::size_t placed = 0;
  // Adds a cell if it is inside the interior and new; stops at the target so
  // the realised density is exact.
  const auto stamp = [&](int r, int c) {
    if (placed >= target) return;
    if (r < row_lo || r >= row_hi || c < col_lo || c >= col_hi) return;
    if (grid.occupied({r, c})) return;
    grid.set_occupied({r, c}, true);
    ++placed;
  };

  if (spec.style == MapStyle::sparse_blocks) {
    const int span_w = col_hi - col_lo;
    const int span_h = row_hi - row_lo;
    std::uniform_int_distribution<int> pick_w(std::max(2, span_w / 16), std::max(3, span_w / 5));
    std::uniform_int_distribution<int> pick_h(std::max(2, span_h / 16), std::max(3, span_h / 5));
    while (placed < target) {
      const int h = pick_h(rng);
      const int w = pick_w(rng);
      const int r0 = pick_row(rng) - h / 2;
      const int c0 = pick_col(rng) - w / 2;
      for (int r = r0; r < r0 + h; ++r) {
        for (int c = c0; c < c0 + w; ++c) stamp(r, c);
      }
    }
  } else {
    std::uniform_int_distribution<int> pick_radius(1, 3);
    while (placed < target) {
      const int rad = pick_radius(rng);
      const int r0 = pick_row(rng);
      const int c0 = pick_col(rng);
      for (int dr = -rad; dr <= rad; ++dr) {
        for (int dc = -rad; dc <= rad; ++dc) {
          if (dr * dr + dc * dc <= rad * rad) stamp(r0 + dr, c0 + dc);
        }
      }
    }
  }
  return grid;
}

}  // namespace safeplan::bench
