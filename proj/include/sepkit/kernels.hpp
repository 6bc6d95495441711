#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference implementation
// and, where the target supports it, an AVX2 (x86-64) or NEON (aarch64)
// variant. The active variant is chosen once at startup from CPUID and can be
// overridden for equivalence testing.

#include <cstddef>
#include <span>
#include <string_view>

namespace sepkit::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);

// Best variant the running CPU supports.
Isa detected_isa();
Isa active_isa();
// Throws DomainError if the CPU (or build) lacks the requested variant.
void set_active_isa(Isa isa);
bool isa_available(Isa isa);

struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  // min_j (a[j] + b[j])
  double (*min_pair_sum)(const double* a, const double* b, std::size_t n);
  // Writes indices j with a[j] + b[j] < threshold into out (capacity n),
  // ascending; returns the count.
  std::size_t (*select_pair_sum_below)(const double* a, const double* b, std::size_t n, double threshold,
                                       std::size_t* out);
  // Sum of all entries.
  double (*sum)(const double* a, std::size_t n);
};

const KernelTable& table(Isa isa);
const KernelTable& active();

// Convenience wrappers over the active table.
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  return active().squared_distance(a.data(), b.data(), a.size());
}

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
double min_pair_sum(const double* a, const double* b, std::size_t n);
std::size_t select_pair_sum_below(const double* a, const double* b, std::size_t n, double threshold,
                                  std::size_t* out);
double sum(const double* a, std::size_t n);
}  // namespace scalar

}  // namespace sepkit::kernels
