#include <cstdlib>
#include <string>

#include "jsprr/kernels.hpp"

namespace jsprr::kernels {

#if defined(JSPRR_HAVE_AVX2)
const KernelTable* avx2_table_impl();
#endif
#if defined(JSPRR_HAVE_NEON)
const KernelTable* neon_table_impl();
#endif

const KernelTable* avx2_table() {
#if defined(JSPRR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() {
#if defined(JSPRR_HAVE_NEON)
  return neon_table_impl();  // mandatory on AArch64
#else
  return nullptr;
#endif
}

std::vector<const KernelTable*> available() {
  std::vector<const KernelTable*> out{&scalar_table()};
  if (auto* t = avx2_table()) out.push_back(t);
  if (auto* t = neon_table()) out.push_back(t);
  return out;
}

const KernelTable* find(std::string_view name) {
  for (const auto* t : available())
    if (name == t->name) return t;
  return nullptr;
}

const KernelTable& active() {
  static const KernelTable& chosen = []() -> const KernelTable& {
    if (const char* env = std::getenv("JSPRR_KERNELS")) {
      if (const auto* t = find(env)) return *t;
    }
    const auto all = available();
    return *all.back();
  }();
  return chosen;
}

}  // namespace jsprr::kernels
