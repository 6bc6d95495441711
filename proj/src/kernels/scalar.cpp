#include <algorithm>
#include <limits>

#include "sepkit/kernels.hpp"

namespace sepkit::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double min_pair_sum(const double* a, const double* b, std::size_t n) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) best = std::min(best, a[i] + b[i]);
  return best;
}

std::size_t select_pair_sum_below(const double* a, const double* b, std::size_t n, double threshold,
                                  std::size_t* out) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] + b[i] < threshold) out[count++] = i;
  return count;
}

double sum(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

}  // namespace sepkit::kernels::scalar
