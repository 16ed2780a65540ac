#include <cstdlib>
#include <cstring>

#include "alkr/simd/kernels.hpp"

namespace alkr::simd {

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_available() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

namespace {

const Ops& select() {
  const char* requested = std::getenv("ALKR_SIMD");
  if (requested != nullptr) {
    if (std::strcmp(requested, "scalar") == 0) return scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
    if (std::strcmp(requested, "avx2") == 0 && avx2_available()) return avx2_ops();
#endif
#if defined(__aarch64__)
    if (std::strcmp(requested, "neon") == 0) return neon_ops();
#endif
    // Unknown or unsupported request falls through to auto selection.
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_available()) return avx2_ops();
#endif
#if defined(__aarch64__)
  return neon_ops();
#else
  return scalar_ops();
#endif
}

}  // namespace

const Ops& ops() {
  static const Ops& selected = select();
  return selected;
}

}  // namespace alkr::simd
