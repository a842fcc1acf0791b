#pragma once
#include <cstddef>
#include <vector>

namespace prolate {

// spherical bessel j_0(x) .. j_{n_max}(x); entries whose magnitude underflows
// double range are returned as exact 0.  relative accuracy ~1e-13 is kept for
// every entry larger than ~1e-280 in magnitude.  throws domain_error on NaN.
std::vector<double> sph_bessel_j_seq(std::size_t n_max, double x);

struct LegendreSeq {
  std::vector<double> values;       // p_0(x) .. p_{n_max}(x)
  std::vector<double> derivatives;  // p'_0(x) .. p'_{n_max}(x)
};
// legendre polynomials and derivatives on [-1,1]; exact at the endpoints
// (p_n(1) = 1, p'_n(1) = n(n+1)/2).  throws domain_error for |x| > 1 or NaN.
LegendreSeq legendre_p_seq(std::size_t n_max, double x);

// sine integral Si(t) = int_0^t sin(u)/u du; odd in t.  power series for
// |t| <= 4, complex continued fraction beyond.  throws domain_error on NaN.
double sine_integral(double t);

// sin(x)/x with a taylor branch near 0
double sinc(double x);

// cylindrical bessel J_nu for integer nu >= 1 on all of R (parity wrap for
// negative arguments).  throws domain_error on NaN.
double cyl_bessel_jn(int nu, double x);

}  // namespace prolate
