#include "prolate/simd.hpp"

namespace prolate::simd {

namespace detail {
extern const Kernels scalar_kernels;
#if defined(__x86_64__) || defined(__i386__)
extern const Kernels avx2_kernels;
#endif
#if defined(__aarch64__)
extern const Kernels neon_kernels;
#endif

#if defined(__x86_64__) || defined(__i386__)
static bool avx2_usable() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif
}  // namespace detail

const Kernels& active() {
  static const Kernels* chosen = [] {
#if defined(__x86_64__) || defined(__i386__)
    if (detail::avx2_usable()) return &detail::avx2_kernels;
#elif defined(__aarch64__)
    return &detail::neon_kernels;
#endif
    return &detail::scalar_kernels;
  }();
  return *chosen;
}

std::vector<Kernels> variants() {
  std::vector<Kernels> out;
  out.push_back(detail::scalar_kernels);
#if defined(__x86_64__) || defined(__i386__)
  if (detail::avx2_usable()) out.push_back(detail::avx2_kernels);
#endif
#if defined(__aarch64__)
  out.push_back(detail::neon_kernels);
#endif
  return out;
}

}  // namespace prolate::simd
