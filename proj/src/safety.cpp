#include "safeplan/safety.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace safeplan {

SafetyKernel::SafetyKernel(int radius, double epsilon) : radius_(radius), epsilon_(epsilon) {
  if (radius < 1) throw ParameterError("safety kernel radius must be >= 1, got " + std::to_string(radius));
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("safety kernel epsilon must be positive");
  }
  const int n = side();
  weights_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int dr = -radius; dr <= radius; ++dr) {
    for (int dc = -radius; dc <= radius; ++dc) {
      const int cheb = std::max(std::abs(dr), std::abs(dc));
      if (cheb == 0) continue;
      weights_[static_cast<std::size_t>((dr + radius) * n + (dc + radius))] =
          1.0 / (static_cast<double>(cheb) + epsilon);
    }
  }
}

SafetyKernel build_kernel(int radius, double epsilon) { return SafetyKernel(radius, epsilon); }

SafetyField compute_safety_field(const OccupancyGrid& grid, const SafetyKernel& kernel) {
  return compute_safety_field(grid, kernel, kernels::active_isa());
}

SafetyField compute_safety_field(const OccupancyGrid& grid, const SafetyKernel& kernel,
                                 kernels::Isa isa) {
  const auto w = static_cast<std::size_t>(grid.width());
  const auto h = static_cast<std::size_t>(grid.height());
  const auto r = static_cast<std::size_t>(kernel.radius());
  const std::size_t pw = w + 2 * r;

  std::vector<double> padded(pw * (h + 2 * r), 0.0);
  const auto cells = grid.cells();
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      padded[(y + r) * pw + x + r] = cells[y * w + x] != 0 ? 1.0 : 0.0;
    }
  }

  SafetyField field(grid.width(), grid.height());
  kernels::accumulate_safety({.padded = padded,
                              .weights = kernel.weights(),
                              .width = w,
                              .height = h,
                              .radius = r,
                              .out = field.values()},
                             isa);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] != 0) field[i] = 0.0;
  }
  return field;
}

double safety_upper_bound(int dims, int radius, double epsilon) {
  if (dims < 1) throw ParameterError("dimension must be >= 1");
  double total = 0.0;
  for (int d = 1; d <= radius; ++d) {
    const double shell = std::pow(2.0 * d + 1.0, dims) - std::pow(2.0 * d - 1.0, dims);
    total += shell / (static_cast<double>(d) + epsilon);
  }
  return total;
}

}  // namespace safeplan
