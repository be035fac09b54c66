#include <cstdlib>
#include <cstring>

#include "eisarch/simd/cone_kernel.hpp"

namespace eisarch::simd {

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

bool use_avx2() {
  static const bool flag = [] {
    const char* env = std::getenv("EISARCH_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return false;
    return avx2_available();
  }();
  return flag;
}

}  // namespace

ConeKernelFn active_cone_kernel() { return use_avx2() ? &cone_kernel_avx2 : &cone_kernel_scalar; }

const char* active_cone_kernel_name() { return use_avx2() ? "avx2" : "scalar"; }

}  // namespace eisarch::simd
