#pragma once
#include <cstddef>
#include <vector>

namespace prolate::simd {

// vector kernels behind a runtime dispatch: the scalar variant is always
// present; avx2 (x86) and neon (aarch64) variants are compiled in where the
// target allows and selected when the cpu supports them.  all variants of a
// kernel compute the same sum order per 4-wide lane grouping is allowed to
// differ from scalar, so equality tests use tolerances, not bit equality.
//
// rot applies a plane rotation to two rows: (x, y) <- (c*x - s*y, s*x + c*y).
struct Kernels {
  const char* name;
  double (*dot)(const double* x, const double* y, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  void (*scal)(double a, double* x, std::size_t n);
  void (*rot)(double* x, double* y, double c, double s, std::size_t n);
};

const Kernels& active();
// every compiled-in variant runnable on this cpu (for equivalence tests)
std::vector<Kernels> variants();

inline double dot(const double* x, const double* y, std::size_t n) {
  return active().dot(x, y, n);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) {
  active().axpy(a, x, y, n);
}
inline void scal(double a, double* x, std::size_t n) { active().scal(a, x, n); }
inline void rot(double* x, double* y, double c, double s, std::size_t n) {
  active().rot(x, y, c, s, n);
}

}  // namespace prolate::simd
