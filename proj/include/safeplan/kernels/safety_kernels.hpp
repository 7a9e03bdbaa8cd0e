#pragma once

// Inverse-distance obstacle accumulation over a zero-padded indicator image.
//
// Every variant computes, for each output cell (y, x),
//
//   out[y*width + x] = sum_{dy=0..2r} sum_{dx=0..2r}
//                        padded[(y+dy)*padded_width + x+dx] * weights[dy*(2r+1) + dx]
//
// accumulating in exactly that (dy outer, dx inner) order with separate
// multiply and add. Indicator entries are 0.0 or 1.0, so every product is
// exact and all variants produce bit-identical results to the scalar one.

#include <cstddef>
#include <span>
#include <string_view>

namespace safeplan::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

struct SafetyConvolution {
  std::span<const double> padded;   ///< (height+2r) x (width+2r), row-major
  std::span<const double> weights;  ///< (2r+1) x (2r+1), row-major
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t radius = 0;
  std::span<double> out;            ///< height x width, row-major
};

void accumulate_safety_scalar(const SafetyConvolution& args) noexcept;
#if defined(SAFEPLAN_HAVE_AVX2)
void accumulate_safety_avx2(const SafetyConvolution& args) noexcept;
#endif
#if defined(SAFEPLAN_HAVE_NEON)
void accumulate_safety_neon(const SafetyConvolution& args) noexcept;
#endif

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa) noexcept;

/// Best available variant, unless overridden by set_preferred_isa() or the
/// SAFEPLAN_ISA environment variable ("scalar", "avx2", "neon").
Isa active_isa() noexcept;

/// Pins the dispatcher to `isa`; falls back to scalar if unavailable.
void set_preferred_isa(Isa isa) noexcept;
void clear_preferred_isa() noexcept;

/// Runs the requested variant, or scalar if it is not available.
void accumulate_safety(const SafetyConvolution& args, Isa isa) noexcept;
inline void accumulate_safety(const SafetyConvolution& args) noexcept {
  accumulate_safety(args, active_isa());
}

}  // namespace safeplan::kernels
