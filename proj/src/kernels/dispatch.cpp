#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"
#include "sepkit/errors.hpp"
#include "sepkit/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define SEPKIT_HAVE_AVX2_BUILD 1
#endif
#if defined(__aarch64__)
#define SEPKIT_HAVE_NEON_BUILD 1
#endif

namespace sepkit::kernels {

namespace {

constexpr KernelTable kScalarTable{scalar::dot, scalar::squared_distance, scalar::min_pair_sum,
                                   scalar::select_pair_sum_below, scalar::sum};
#ifdef SEPKIT_HAVE_AVX2_BUILD
constexpr KernelTable kAvx2Table{avx2::dot, avx2::squared_distance, avx2::min_pair_sum,
                                 avx2::select_pair_sum_below, avx2::sum};
#endif
#ifdef SEPKIT_HAVE_NEON_BUILD
constexpr KernelTable kNeonTable{neon::dot, neon::squared_distance, neon::min_pair_sum,
                                 neon::select_pair_sum_below, neon::sum};
#endif

Isa probe() {
#ifdef SEPKIT_HAVE_AVX2_BUILD
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::kAvx2;
#endif
#ifdef SEPKIT_HAVE_NEON_BUILD
  return Isa::kNeon;
#endif
  return Isa::kScalar;
}

Isa initial_isa() {
  // SEPKIT_ISA=scalar pins the reference kernels (useful when bisecting numerics).
  if (const char* env = std::getenv("SEPKIT_ISA"); env && std::string(env) == "scalar") return Isa::kScalar;
  return probe();
}

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{initial_isa()};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

Isa detected_isa() {
  static const Isa isa = probe();
  return isa;
}

bool isa_available(Isa isa) { return isa == Isa::kScalar || isa == detected_isa(); }

Isa active_isa() { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) throw DomainError("kernel variant " + std::string(isa_name(isa)) + " unavailable on this CPU");
  active_slot().store(isa, std::memory_order_relaxed);
}

const KernelTable& table(Isa isa) {
  switch (isa) {
#ifdef SEPKIT_HAVE_AVX2_BUILD
    case Isa::kAvx2: return kAvx2Table;
#endif
#ifdef SEPKIT_HAVE_NEON_BUILD
    case Isa::kNeon: return kNeonTable;
#endif
    default: return kScalarTable;
  }
}

const KernelTable& active() { return table(active_isa()); }

}  // namespace sepkit::kernels
