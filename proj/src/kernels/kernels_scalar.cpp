#include <cmath>

#include "jsprr/kernels.hpp"

namespace jsprr::kernels {

namespace {

void axpy_snap(double a, const double* x, double* y, std::size_t n, double zero_tol) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = y[i] - a * x[i];
    y[i] = std::fabs(v) < zero_tol ? 0.0 : v;
  }
}

void divide(double* x, std::size_t n, double d) {
  for (std::size_t i = 0; i < n; ++i) x[i] /= d;
}

std::size_t argmin(const double* x, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (x[i] < x[best]) best = i;
  return best;
}

std::size_t find_first_below(const double* x, std::size_t n, double threshold) {
  for (std::size_t i = 0; i < n; ++i)
    if (x[i] < threshold) return i;
  return n;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", axpy_snap, divide, argmin, find_first_below};
  return table;
}

}  // namespace jsprr::kernels
