#include "safeplan/grid_map.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace safeplan {

std::string to_string(GridIndex cell) {
  return std::to_string(cell.row) + "," + std::to_string(cell.col);
}

OccupancyGrid::OccupancyGrid(int width, int height, double cell_size)
    : OccupancyGrid(width, height, cell_size,
                    std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) *
                                              static_cast<std::size_t>(std::max(height, 0)))) {}

OccupancyGrid::OccupancyGrid(int width, int height, double cell_size,
                             std::vector<std::uint8_t> cells)
    : width_(width), height_(height), cell_size_(cell_size), cells_(std::move(cells)) {
  if (width <= 0 || height <= 0) {
    throw ParameterError("grid dimensions must be positive, got " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw ParameterError("cell size must be positive");
  }
  if (cells_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ParameterError("cell count does not match grid dimensions");
  }
  for (auto& c : cells_) c = c != 0 ? 1 : 0;
}

void OccupancyGrid::set_occupied(GridIndex c, bool value) {
  if (!in_bounds(c)) throw ParameterError("cell " + to_string(c) + " is out of bounds");
  cells_[index(c)] = value ? 1 : 0;
}

std::size_t OccupancyGrid::obstacle_count() const noexcept {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_cell_size(std::string_view header) {
  header = trim(header);
  constexpr std::string_view kKey = "cell";
  if (header.substr(0, kKey.size()) != kKey) {
    throw FormatError("line 1: expected header 'cell <size>'");
  }
  const std::string value(trim(header.substr(kKey.size())));
  if (value.empty()) throw FormatError("line 1: missing cell size");
  std::size_t used = 0;
  double size = 0.0;
  try {
    size = std::stod(value, &used);
  } catch (const std::exception&) {
    throw FormatError("line 1: invalid cell size '" + value + "'");
  }
  if (used != value.size() || !(size > 0.0) || !std::isfinite(size)) {
    throw FormatError("line 1: invalid cell size '" + value + "'");
  }
  return size;
}

}  // namespace

OccupancyGrid parse_map(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  // Trailing blank lines are tolerated; blank lines inside the body are not.
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw FormatError("empty map document");

  const double cell_size = parse_cell_size(lines.front());
  if (lines.size() < 2) throw FormatError("map has a header but no rows");

  const std::size_t width = lines[1].size();
  if (width == 0) throw FormatError("line 2: empty row");
  std::vector<std::uint8_t> cells;
  cells.reserve(width * (lines.size() - 1));
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto row = lines[r];
    if (row.size() != width) {
      throw FormatError("line " + std::to_string(r + 1) + ": ragged row (expected " +
                        std::to_string(width) + " characters, got " +
                        std::to_string(row.size()) + ")");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      switch (row[c]) {
        case '.': cells.push_back(0); break;
        case '#': cells.push_back(1); break;
        default:
          throw FormatError("line " + std::to_string(r + 1) + ", column " + std::to_string(c + 1) +
                            ": unknown character '" + std::string(1, row[c]) + "'");
      }
    }
  }
  return OccupancyGrid(static_cast<int>(width), static_cast<int>(lines.size() - 1), cell_size,
                       std::move(cells));
}

std::string serialize_map(const OccupancyGrid& grid) {
  std::ostringstream out;
  out.precision(17);
  out << "cell " << grid.cell_size() << '\n';
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) out << (grid.occupied({r, c}) ? '#' : '.');
    out << '\n';
  }
  return out.str();
}

namespace {

// Tokenizer for the PGM header: whitespace separated, '#' starts a comment.
class PgmHeader {
 public:
  explicit PgmHeader(std::string_view data) : data_(data) {}

  int next_int(const char* what) {
    skip();
    int value = 0;
    const auto* first = data_.data() + pos_;
    const auto* last = data_.data() + data_.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) {
      throw FormatError(std::string("PGM: invalid ") + what);
    }
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  std::size_t pos() const { return pos_; }

 private:
  void skip() {
    while (pos_ < data_.size()) {
      const char ch = data_[pos_];
      if (ch == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view data_;
  std::size_t pos_ = 2;
};

}  // namespace

OccupancyGrid parse_pgm(std::string_view bytes, double cell_size) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw FormatError("PGM: missing P2/P5 magic");
  }
  const bool binary = bytes[1] == '5';
  PgmHeader header(bytes);
  const int width = header.next_int("width");
  const int height = header.next_int("height");
  const int maxval = header.next_int("maxval");
  if (width <= 0 || height <= 0) throw FormatError("PGM: non-positive dimensions");
  if (maxval <= 0 || maxval > 65535) throw FormatError("PGM: maxval out of range");

  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint8_t> cells(count);
  const auto classify = [maxval](int value) -> std::uint8_t {
    // Normalise to 0..255 before thresholding so 16-bit maps behave the same.
    const double scaled = 255.0 * static_cast<double>(value) / static_cast<double>(maxval);
    return scaled < 128.0 ? 1 : 0;
  };

  if (binary) {
    std::size_t pos = header.pos();
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
      throw FormatError("PGM: missing separator before raster");
    }
    ++pos;
    const std::size_t bpp = maxval < 256 ? 1 : 2;
    if (bytes.size() - pos < count * bpp) throw FormatError("PGM: truncated raster");
    for (std::size_t i = 0; i < count; ++i) {
      int v = static_cast<unsigned char>(bytes[pos + i * bpp]);
      if (bpp == 2) v = (v << 8) | static_cast<unsigned char>(bytes[pos + i * bpp + 1]);
      cells[i] = classify(v);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) cells[i] = classify(header.next_int("pixel"));
  }
  return OccupancyGrid(width, height, cell_size, std::move(cells));
}

OccupancyGrid load_map(const std::filesystem::path& path, double pgm_cell_size) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open map file '" + path.string() + "'");
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    if (data.size() >= 2 && data[0] == 'P' && (data[1] == '2' || data[1] == '5')) {
      return parse_pgm(data, pgm_cell_size);
    }
    return parse_map(data);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

FreeSpaceStats free_space_stats(const OccupancyGrid& grid, const DistanceField& field) {
  FreeSpaceStats stats;
  const std::size_t total = grid.size();
  const std::size_t obstacles = grid.obstacle_count();
  stats.rho = static_cast<double>(obstacles) / static_cast<double>(total);
  const std::size_t free_cells = total - obstacles;
  if (free_cells == 0) return stats;

  const auto cells = grid.cells();
  double sum = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    if (cells[i] == 0) sum += field[i];
  }
  stats.mu = sum / static_cast<double>(free_cells);
  double sq = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    if (cells[i] == 0) {
      const double d = field[i] - stats.mu;
      sq += d * d;
    }
  }
  stats.sigma = std::sqrt(sq / static_cast<double>(free_cells));
  return stats;
}

NeighborList neighbors(const OccupancyGrid& grid, GridIndex n) {
  NeighborList out;
  static constexpr std::array<std::array<int, 2>, 8> kOffsets{{
      {-1, 0}, {0, 1}, {1, 0}, {0, -1}, {-1, 1}, {1, 1}, {1, -1}, {-1, -1}}};
  for (const auto& [dr, dc] : kOffsets) {
    const GridIndex m{n.row + dr, n.col + dc};
    if (!grid.is_free(m)) continue;
    if (dr != 0 && dc != 0) {
      const bool vertical_free = grid.is_free({n.row + dr, n.col});
      const bool horizontal_free = grid.is_free({n.row, n.col + dc});
      if (!vertical_free && !horizontal_free) continue;
      out.push(m, kSqrt2);
    } else {
      out.push(m, 1.0);
    }
  }
  return out;
}

}  // namespace safeplan
