#pragma once

// Dense arithmetic kernels used by the simplex tableau. Every variant
// (scalar reference, AVX2, NEON) produces bit-identical results: the
// element-wise kernels perform the same IEEE operations per element and the
// reductions only compare values.
//
// Selection happens once at runtime from CPU features; JSPRR_KERNELS=scalar
// (or avx2/neon) in the environment overrides it.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace jsprr::kernels {

struct KernelTable {
  const char* name;
  /// y[i] -= a * x[i]; results with |y[i]| < zero_tol are stored as exact 0.
  void (*axpy_snap)(double a, const double* x, double* y, std::size_t n, double zero_tol);
  /// x[i] /= d
  void (*divide)(double* x, std::size_t n, double d);
  /// Index of the minimum, lowest index among equal values. n > 0.
  std::size_t (*argmin)(const double* x, std::size_t n);
  /// First index with x[i] < threshold, or n when none.
  std::size_t (*find_first_below)(const double* x, std::size_t n, double threshold);
};

const KernelTable& scalar_table();
/// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Every variant usable on this machine, scalar first.
std::vector<const KernelTable*> available();

/// Variant chosen for this process.
const KernelTable& active();

/// Variant by name; nullptr if unknown or unavailable.
const KernelTable* find(std::string_view name);

inline void axpy_snap(const KernelTable& k, double a, std::span<const double> x, std::span<double> y,
                      double zero_tol) {
  k.axpy_snap(a, x.data(), y.data(), y.size(), zero_tol);
}

}  // namespace jsprr::kernels
