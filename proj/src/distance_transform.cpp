#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "safeplan/grid_map.hpp"

namespace safeplan {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

// Exact 1-D squared distance transform (lower envelope of parabolas,
// Felzenszwalb & Huttenlocher) on integer samples. Sites with kInf are not
// parabolas at all; comparisons are done on rationals with int64 cross
// products so ties resolve exactly.
class EnvelopeScratch {
 public:
  void transform(const std::vector<std::int64_t>& f, std::vector<std::int64_t>& out) {
    const auto n = static_cast<std::int64_t>(f.size());
    sites_.clear();
    for (std::int64_t q = 0; q < n; ++q) {
      if (f[static_cast<std::size_t>(q)] == kInf) continue;
      while (sites_.size() >= 2 &&
             !before(sites_[sites_.size() - 2], sites_.back(), sites_.back(), q, f)) {
        sites_.pop_back();
      }
      sites_.push_back(q);
    }
    out.assign(f.size(), kInf);
    if (sites_.empty()) return;
    std::size_t k = 0;
    for (std::int64_t x = 0; x < n; ++x) {
      while (k + 1 < sites_.size() && crosses_before(sites_[k], sites_[k + 1], x, f)) ++k;
      const std::int64_t v = sites_[k];
      out[static_cast<std::size_t>(x)] = (x - v) * (x - v) + f[static_cast<std::size_t>(v)];
    }
  }

 private:
  // Intersection abscissa of parabolas rooted at p < q: num / den, den > 0.
  static void intersection(std::int64_t p, std::int64_t q, const std::vector<std::int64_t>& f,
                           std::int64_t& num, std::int64_t& den) {
    num = (f[static_cast<std::size_t>(q)] + q * q) - (f[static_cast<std::size_t>(p)] + p * p);
    den = 2 * (q - p);
  }

  // s(a,b) < s(c,d)
  static bool before(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                     const std::vector<std::int64_t>& f) {
    std::int64_t n1, d1, n2, d2;
    intersection(a, b, f, n1, d1);
    intersection(c, d, f, n2, d2);
    return n1 * d2 < n2 * d1;
  }

  // s(p,q) < x
  static bool crosses_before(std::int64_t p, std::int64_t q, std::int64_t x,
                             const std::vector<std::int64_t>& f) {
    std::int64_t num, den;
    intersection(p, q, f, num, den);
    return num < x * den;
  }

  std::vector<std::int64_t> sites_;
};

}  // namespace

DistanceField distance_transform(const OccupancyGrid& grid) {
  const int w = grid.width();
  const int h = grid.height();
  DistanceField field(w, h);

  if (grid.obstacle_count() == 0) {
    const double sentinel =
        std::sqrt(static_cast<double>(w) * w + static_cast<double>(h) * h);
    for (auto& v : field.values()) v = sentinel;
    return field;
  }

  // Columns first, then rows; squared distances stay integral throughout.
  std::vector<std::int64_t> squared(grid.size(), kInf);
  EnvelopeScratch scratch;
  std::vector<std::int64_t> line;
  std::vector<std::int64_t> result;

  line.resize(static_cast<std::size_t>(h));
  for (int c = 0; c < w; ++c) {
    for (int r = 0; r < h; ++r) line[static_cast<std::size_t>(r)] = grid.occupied({r, c}) ? 0 : kInf;
    scratch.transform(line, result);
    for (int r = 0; r < h; ++r) squared[grid.index({r, c})] = result[static_cast<std::size_t>(r)];
  }

  line.resize(static_cast<std::size_t>(w));
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) line[static_cast<std::size_t>(c)] = squared[grid.index({r, c})];
    scratch.transform(line, result);
    for (int c = 0; c < w; ++c) {
      field.at({r, c}) = std::sqrt(static_cast<double>(result[static_cast<std::size_t>(c)]));
    }
  }
  return field;
}

}  // namespace safeplan
