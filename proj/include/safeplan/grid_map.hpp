#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace safeplan {

/// Malformed map text, PGM data, config file or CLI argument.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value outside the domain an operation accepts.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GridIndex {
  std::int32_t row = 0;
  std::int32_t col = 0;

  friend constexpr bool operator==(const GridIndex&, const GridIndex&) = default;
  friend constexpr auto operator<=>(const GridIndex&, const GridIndex&) = default;
};

std::string to_string(GridIndex cell);

/// Dense row-major binary occupancy lattice. `true` cells are obstacles;
/// there is no "unknown" state, so importers must map unknown cells to
/// occupied.
class OccupancyGrid {
 public:
  /// All-free grid.
  OccupancyGrid(int width, int height, double cell_size);
  /// `cells` is row-major, non-zero = obstacle, and must hold width*height
  /// entries.
  OccupancyGrid(int width, int height, double cell_size, std::vector<std::uint8_t> cells);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double cell_size() const noexcept { return cell_size_; }
  std::size_t size() const noexcept { return cells_.size(); }

  bool in_bounds(GridIndex c) const noexcept {
    return c.row >= 0 && c.col >= 0 && c.row < height_ && c.col < width_;
  }
  std::size_t index(GridIndex c) const noexcept {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }
  GridIndex cell(std::size_t i) const noexcept {
    return {static_cast<std::int32_t>(i / static_cast<std::size_t>(width_)),
            static_cast<std::int32_t>(i % static_cast<std::size_t>(width_))};
  }

  /// Requires in_bounds(c).
  bool occupied(GridIndex c) const noexcept { return cells_[index(c)] != 0; }
  /// In bounds and not an obstacle.
  bool is_free(GridIndex c) const noexcept { return in_bounds(c) && !occupied(c); }

  void set_occupied(GridIndex c, bool value);

  std::span<const std::uint8_t> cells() const noexcept { return cells_; }
  std::size_t obstacle_count() const noexcept;

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  int width_;
  int height_;
  double cell_size_;
  std::vector<std::uint8_t> cells_;
};

/// Per-cell real values over a grid's lattice. The tag keeps distance,
/// safety and cost fields from being mixed up.
template <class Tag>
class CellField {
 public:
  CellField() = default;
  CellField(int width, int height, double fill = 0.0)
      : width_(width), height_(height),
        values_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double at(GridIndex c) const noexcept { return values_[linear(c)]; }
  double& at(GridIndex c) noexcept { return values_[linear(c)]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

 private:
  std::size_t linear(GridIndex c) const noexcept {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

/// Euclidean distance (cell units) from each cell centre to the nearest
/// obstacle centre. Obstacles are 0; an obstacle-free grid is filled with
/// the grid diagonal.
using DistanceField = CellField<struct DistanceTag>;

struct FreeSpaceStats {
  double mu = 0.0;     ///< mean distance over free cells
  double sigma = 0.0;  ///< population standard deviation over free cells
  double rho = 0.0;    ///< obstacle fraction
};

struct Neighbor {
  GridIndex cell;
  double cost;
};

/// Fixed-capacity neighbour list; no allocation in the search loop.
class NeighborList {
 public:
  void push(GridIndex cell, double cost) noexcept { items_[count_++] = {cell, cost}; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  const Neighbor* begin() const noexcept { return items_.data(); }
  const Neighbor* end() const noexcept { return items_.data() + count_; }
  const Neighbor& operator[](std::size_t i) const noexcept { return items_[i]; }

 private:
  std::array<Neighbor, 8> items_{};
  std::size_t count_ = 0;
};

inline constexpr double kSqrt2 = 1.41421356237309504880;

/// ASCII map: a `cell <size>` header line followed by rows of '.' (free)
/// and '#' (obstacle). Throws FormatError with a line/column location.
OccupancyGrid parse_map(std::string_view text);
std::string serialize_map(const OccupancyGrid& grid);

/// Binary (P5) or plain (P2) PGM. Pixels below 128 (after scaling by maxval
/// to 0..255) are obstacles.
OccupancyGrid parse_pgm(std::string_view bytes, double cell_size);

/// Reads an ASCII map, or a PGM when the file starts with "P2"/"P5"
/// (`pgm_cell_size` is then used for the resolution).
OccupancyGrid load_map(const std::filesystem::path& path, double pgm_cell_size = 0.05);

DistanceField distance_transform(const OccupancyGrid& grid);
FreeSpaceStats free_space_stats(const OccupancyGrid& grid, const DistanceField& field);

/// 8-connected free neighbours of `n`. Axis steps cost 1, diagonals sqrt(2);
/// a diagonal is dropped when both axis cells it passes between are blocked.
NeighborList neighbors(const OccupancyGrid& grid, GridIndex n);

}  // namespace safeplan
