#if !defined(__AVX2__)
#error safety_avx2.cpp must be compiled with -mavx2
#endif

#include <immintrin.h>

#include "safeplan/kernels/safety_kernels.hpp"

namespace safeplan::kernels {

// Four output columns per lane group; each lane follows the scalar
// accumulation order, so the result is bit-identical to the reference.
void accumulate_safety_avx2(const SafetyConvolution& args) noexcept {
  const std::size_t side = 2 * args.radius + 1;
  const std::size_t pw = args.width + 2 * args.radius;
  const std::size_t vec_end = args.width - args.width % 8;

  for (std::size_t y = 0; y < args.height; ++y) {
    double* out_row = args.out.data() + y * args.width;
    std::size_t x = 0;
    for (; x < vec_end; x += 8) {
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      for (std::size_t dy = 0; dy < side; ++dy) {
        const double* row = args.padded.data() + (y + dy) * pw + x;
        const double* w = args.weights.data() + dy * side;
        for (std::size_t dx = 0; dx < side; ++dx) {
          const __m256d wv = _mm256_broadcast_sd(w + dx);
          acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(row + dx), wv));
          acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(row + dx + 4), wv));
        }
      }
      _mm256_storeu_pd(out_row + x, acc0);
      _mm256_storeu_pd(out_row + x + 4, acc1);
    }
    if (args.width - x >= 4) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t dy = 0; dy < side; ++dy) {
        const double* row = args.padded.data() + (y + dy) * pw + x;
        const double* w = args.weights.data() + dy * side;
        for (std::size_t dx = 0; dx < side; ++dx) {
          acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(row + dx), _mm256_broadcast_sd(w + dx)));
        }
      }
      _mm256_storeu_pd(out_row + x, acc);
      x += 4;
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
