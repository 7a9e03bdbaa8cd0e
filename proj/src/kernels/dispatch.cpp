#include <atomic>
#include <cstdlib>
#include <string_view>

#include "safeplan/kernels/safety_kernels.hpp"

namespace safeplan::kernels {

namespace {

constexpr int kNoPreference = -1;
std::atomic<int> g_preferred{kNoPreference};

bool cpu_has_avx2() noexcept {
#if defined(SAFEPLAN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect_best() noexcept {
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa environment_choice(Isa fallback) noexcept {
  const char* env = std::getenv("SAFEPLAN_ISA");
  if (env == nullptr) return fallback;
  const std::string_view name(env);
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
  if (name == "neon" && isa_available(Isa::neon)) return Isa::neon;
  return fallback;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
    case Isa::neon:
#if defined(SAFEPLAN_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept {
  const int preferred = g_preferred.load(std::memory_order_relaxed);
  if (preferred != kNoPreference) return static_cast<Isa>(preferred);
  static const Isa chosen = environment_choice(detect_best());
  return chosen;
}

void set_preferred_isa(Isa isa) noexcept {
  g_preferred.store(static_cast<int>(isa_available(isa) ? isa : Isa::scalar),
                    std::memory_order_relaxed);
}

void clear_preferred_isa() noexcept { g_preferred.store(kNoPreference, std::memory_order_relaxed); }

void accumulate_safety(const SafetyConvolution& args, Isa isa) noexcept {
  switch (isa_available(isa) ? isa : Isa::scalar) {
#if defined(SAFEPLAN_HAVE_AVX2)
    case Isa::avx2: accumulate_safety_avx2(args); return;
#endif
#if defined(SAFEPLAN_HAVE_NEON)
    case Isa::neon: accumulate_safety_neon(args); return;
#endif
    default: accumulate_safety_scalar(args); return;
  }
}

}  // namespace safeplan::kernels
