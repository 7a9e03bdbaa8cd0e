#pragma once

#include <vector>

#include "safeplan/grid_map.hpp"
#include "safeplan/kernels/safety_kernels.hpp"

namespace safeplan {

/// Per-cell inverse-Chebyshev-distance obstacle accumulation. Larger values
/// mean closer/more obstacles; obstacle cells carry 0.
using SafetyField = CellField<struct SafetyTag>;

inline constexpr double kDefaultEpsilon = 0.01;

/// (2r+1)^2 weight table, K(d) = 1 / (||d||_inf + eps) on the ring
/// 1 <= ||d||_inf <= r and 0 at the centre.
class SafetyKernel {
 public:
  SafetyKernel(int radius, double epsilon);

  int radius() const noexcept { return radius_; }
  double epsilon() const noexcept { return epsilon_; }
  int side() const noexcept { return 2 * radius_ + 1; }

  /// Weight at offset (dr, dc), both in [-r, r].
  double weight(int dr, int dc) const noexcept {
    return weights_[static_cast<std::size_t>((dr + radius_) * side() + (dc + radius_))];
  }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  int radius_;
  double epsilon_;
  std::vector<double> weights_;
};

/// Throws ParameterError for r < 1 or eps <= 0.
SafetyKernel build_kernel(int radius, double epsilon = kDefaultEpsilon);

/// Zero-padded convolution of the obstacle indicator with `kernel`, obstacle
/// cells zeroed afterwards. Uses the dispatcher's active kernel variant.
SafetyField compute_safety_field(const OccupancyGrid& grid, const SafetyKernel& kernel);
SafetyField compute_safety_field(const OccupancyGrid& grid, const SafetyKernel& kernel,
                                 kernels::Isa isa);

/// Worst-case field value: sum_{d=1..r} ((2d+1)^dims - (2d-1)^dims) / (d + eps).
double safety_upper_bound(int dims, int radius, double epsilon);

}  // namespace safeplan
