#include <cstdlib>
#include <cstring>

#include "heckfa/simd/kernels.hpp"

namespace heckfa::kernels {

// defined in kernels_avx2.cpp; nullptr when that TU was built without AVX2
const KernelTable* avx2_table_if_built();

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select() {
  const char* forced = std::getenv("HECKFA_SIMD");
  if (forced && std::strcmp(forced, "scalar") == 0) return scalar();
  const KernelTable* table = avx2();
  if (forced && std::strcmp(forced, "avx2") == 0 && table == nullptr) {
    // requested ISA unavailable; fall back rather than crash
    return scalar();
  }
  return table ? *table : scalar();
}

}  // namespace

const KernelTable* avx2() {
  static const KernelTable* table =
      cpu_has_avx2_fma() ? avx2_table_if_built() : nullptr;
  return table;
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace heckfa::kernels
