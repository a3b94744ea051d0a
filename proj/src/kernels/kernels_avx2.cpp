#include <immintrin.h>

#include <cmath>

#include "jsprr/kernels.hpp"

namespace jsprr::kernels {

namespace {

void axpy_snap(double a, const double* x, double* y, std::size_t n, double zero_tol) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d tol = _mm256_set1_pd(zero_tol);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_sub_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    const __m256d tiny = _mm256_cmp_pd(_mm256_andnot_pd(sign, v), tol, _CMP_LT_OQ);
    _mm256_storeu_pd(y + i, _mm256_andnot_pd(tiny, v));
  }
  for (; i < n; ++i) {
    const double v = y[i] - a * x[i];
    y[i] = std::fabs(v) < zero_tol ? 0.0 : v;
  }
}

void divide(double* x, std::size_t n, double d) {
  const __m256d vd = _mm256_set1_pd(d);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_div_pd(_mm256_loadu_pd(x + i), vd));
  for (; i < n; ++i) x[i] /= d;
}

std::size_t find_first_below(const double* x, std::size_t n, double threshold) {
  const __m256d t = _mm256_set1_pd(threshold);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(x + i), t, _CMP_LT_OQ));
    if (mask) return i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i)
    if (x[i] < threshold) return i;
  return n;
}

std::size_t argmin(const double* x, std::size_t n) {
  double lowest = x[0];
  std::size_t i = 0;
  if (n >= 4) {
    __m256d m = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= n; i += 4) m = _mm256_min_pd(m, _mm256_loadu_pd(x + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    lowest = lanes[0];
    for (double v : lanes)
      if (v < lowest) lowest = v;
  }
  for (; i < n; ++i)
    if (x[i] < lowest) lowest = x[i];
  // First occurrence of the minimum: the first entry not above it.
  const std::size_t at = find_first_below(x, n, std::nextafter(lowest, INFINITY));
  return at == n ? 0 : at;  // all +inf
}

}  // namespace

const KernelTable* avx2_table_impl() {
  static const KernelTable table{"avx2", axpy_snap, divide, argmin, find_first_below};
  return &table;
}

}  // namespace jsprr::kernels
