#pragma once

#include <cstddef>

namespace sepkit::kernels {

#define SEPKIT_DECLARE_KERNELS(ns)                                                                  \
  namespace ns {                                                                                    \
  double dot(const double* a, const double* b, std::size_t n);                                      \
  double squared_distance(const double* a, const double* b, std::size_t n);                         \
  double min_pair_sum(const double* a, const double* b, std::size_t n);                             \
  std::size_t select_pair_sum_below(const double* a, const double* b, std::size_t n, double threshold, \
                                    std::size_t* out);                                              \
  double sum(const double* a, std::size_t n);                                                       \
  }

SEPKIT_DECLARE_KERNELS(avx2)
SEPKIT_DECLARE_KERNELS(neon)

#undef SEPKIT_DECLARE_KERNELS

}  // namespace sepkit::kernels
