#include <arm_neon.h>

#include <algorithm>
#include <limits>

#include "kernels_internal.hpp"

namespace sepkit::kernels::neon {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float64x2_t d0 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    float64x2_t d1 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    acc0 = vfmaq_f64(acc0, d0, d0);
    acc1 = vfmaq_f64(acc1, d1, d1);
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double min_pair_sum(const double* a, const double* b, std::size_t n) {
  float64x2_t best = vdupq_n_f64(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) best = vminq_f64(best, vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double out = vminvq_f64(best);
  for (; i < n; ++i) out = std::min(out, a[i] + b[i]);
  return out;
}

std::size_t select_pair_sum_below(const double* a, const double* b, std::size_t n, double threshold,
                                  std::size_t* out) {
  const float64x2_t thr = vdupq_n_f64(threshold);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    uint64x2_t lt = vcltq_f64(vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)), thr);
    if (vgetq_lane_u64(lt, 0)) out[count++] = i;
    if (vgetq_lane_u64(lt, 1)) out[count++] = i + 1;
  }
  for (; i < n; ++i)
    if (a[i] + b[i] < threshold) out[count++] = i;
  return count;
}

double sum(const double* a, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vld1q_f64(a + i));
    acc1 = vaddq_f64(acc1, vld1q_f64(a + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i];
  return acc;
}

}  // namespace sepkit::kernels::neon
