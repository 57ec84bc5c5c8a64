#include <cstdlib>
#include <cstring>

#include "ctv/kernels.hpp"

namespace ctv::kernels {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return has;
#else
  return false;
#endif
}

const RowKernels& select(std::uint32_t p) {
  static const bool pinned_scalar = [] {
    const char* env = std::getenv("CTV_ISA");
    return env != nullptr && std::strcmp(env, "scalar") == 0;
  }();
  if (!pinned_scalar && cpu_has_avx2()) {
    if (const RowKernels* k = avx2(); k != nullptr && p <= k->max_modulus) return *k;
  }
  return scalar();
}

}  // namespace ctv::kernels
