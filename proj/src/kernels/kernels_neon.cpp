#include <arm_neon.h>

#include <cmath>

#include "jsprr/kernels.hpp"

namespace jsprr::kernels {

namespace {

void axpy_snap(double a, const double* x, double* y, std::size_t n, double zero_tol) {
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t tol = vdupq_n_f64(zero_tol);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // Separate multiply and subtract: vmlsq would fuse and break bit-equality.
    const float64x2_t v = vsubq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i)));
    const uint64x2_t tiny = vcltq_f64(vabsq_f64(v), tol);
    vst1q_f64(y + i, vreinterpretq_f64_u64(vbicq_u64(vreinterpretq_u64_f64(v), tiny)));
  }
  for (; i < n; ++i) {
    const double v = y[i] - a * x[i];
    y[i] = std::fabs(v) < zero_tol ? 0.0 : v;
  }
}

void divide(double* x, std::size_t n, double d) {
  const float64x2_t vd = vdupq_n_f64(d);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vdivq_f64(vld1q_f64(x + i), vd));
  for (; i < n; ++i) x[i] /= d;
}

std::size_t find_first_below(const double* x, std::size_t n, double threshold) {
  const float64x2_t t = vdupq_n_f64(threshold);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t lt = vcltq_f64(vld1q_f64(x + i), t);
    if (vgetq_lane_u64(lt, 0)) return i;
    if (vgetq_lane_u64(lt, 1)) return i + 1;
  }
  for (; i < n; ++i)
    if (x[i] < threshold) return i;
  return n;
}

std::size_t argmin(const double* x, std::size_t n) {
  double lowest = x[0];
  std::size_t i = 0;
  if (n >= 2) {
    float64x2_t m = vld1q_f64(x);
    for (i = 2; i + 2 <= n; i += 2) m = vminq_f64(m, vld1q_f64(x + i));
    lowest = vminvq_f64(m);
  }
  for (; i < n; ++i)
    if (x[i] < lowest) lowest = x[i];
  const std::size_t at = find_first_below(x, n, std::nextafter(lowest, INFINITY));
  return at == n ? 0 : at;  // all +inf
}

}  // namespace

const KernelTable* neon_table_impl() {
  static const KernelTable table{"neon", axpy_snap, divide, argmin, find_first_below};
  return &table;
}

}  // namespace jsprr::kernels
