#include "safeplan/kernels/safety_kernels.hpp"

namespace safeplan::kernels {

void accumulate_safety_scalar(const SafetyConvolution& args) noexcept {
  const std::size_t side = 2 * args.radius + 1;
  const std::size_t pw = args.width + 2 * args.radius;
  for (std::size_t y = 0; y < args.height; ++y) {
    for (std::size_t x = 0; x < args.width; ++x) {
      double acc = 0.0;
      for (std::size_t dy = 0; dy < side; ++dy) {
        const double* row = args.padded.data() + (y + dy) * pw + x;
        const double* w = args.weights.data() + dy * side;
        for (std::size_t dx = 0; dx < side; ++dx) {
          const double term = row[dx] * w[dx];
          acc = acc + term;
        }
      }
      args.out[y * args.width + x] = acc;
    }
  }
}

}  // namespace safeplan::kernels
