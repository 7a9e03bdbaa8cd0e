#include <arm_neon.h>

#include "safeplan/kernels/safety_kernels.hpp"

namespace safeplan::kernels {

// Two output columns per float64x2_t; vmulq/vaddq rather than vfmaq to keep
// the scalar rounding sequence.
void accumulate_safety_neon(const SafetyConvolution& args) noexcept {
  const std::size_t side = 2 * args.radius + 1;
  const std::size_t pw = args.width + 2 * args.radius;
  const std::size_t vec_end = args.width - args.width % 2;

  for (std::size_t y = 0; y < args.height; ++y) {
    double* out_row = args.out.data() + y * args.width;
    std::size_t x = 0;
    for (; x < vec_end; x += 2) {
      float64x2_t acc = vdupq_n_f64(0.0);
      for (std::size_t dy = 0; dy < side; ++dy) {
        const double* row = args.padded.data() + (y + dy) * pw + x;
        const double* w = args.weights.data() + dy * side;
        for (std::size_t dx = 0; dx < side; ++dx) {
          acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(row + dx), vdupq_n_f64(w[dx])));
        }
      }
      vst1q_f64(out_row + x, acc);
    }
    for (; x < args.width; ++x) {
      double acc = 0.0;
      for (std::size_t dy = 0; dy < side; ++dy) {
        const double* row = args.padded.data() + (y + dy) * pw + x;
        const double* w = args.weights.data() + dy * side;
        for (std::size_t dx = 0; dx < side; ++dx) {
          const double term = row[dx] * w[dx];
          acc = acc + term;
        }
      }
      out_row[x] = acc;
    }
  }
}

}  // namespace safeplan::kernels
