#include "prolate/specfun.hpp"

#include <cmath>
#include <complex>
#include <cstdint>

#include "prolate/common.hpp"

namespace prolate {

namespace {

// series branch for |x| < 1e-3:
//   j_n(x) = x^n/(2n+1)!! [1 - (x^2/2)/(1!(2n+3)) + (x^2/2)^2/(2!(2n+3)(2n+5)) - ...]
// the prefactor is carried recursively so precision holds right down to the
// underflow threshold, where entries become exact 0.
void sph_small_x(std::vector<double>& out, double ax) {
  double x2h = 0.5 * ax * ax;
  double pref = 1.0;  // ax^n / (2n+1)!!
  for (std::size_t n = 0; n < out.size(); ++n) {
    if (pref == 0.0) break;
    double s = 1.0, term = 1.0;
    for (int k = 1; k <= 4; ++k) {
      term *= -x2h / (k * (2.0 * n + 2.0 * k + 1.0));
      s += term;
    }
    out[n] = pref * s;
    pref *= ax / (2.0 * n + 3.0);
  }
}

// downward recurrence (miller) from a padded start, rescaled by exact powers
// of two, normalized against the last upward-stable entry out[m].
void sph_miller_down(std::vector<double>& out, double ax, std::size_t m,
                     std::size_t n_max) {
  const double up = 0x1p1000, cut = 0x1p-1000;
  std::size_t pad = (std::size_t)std::ceil(15.0 + 2.0 * std::sqrt((double)n_max));
  std::size_t n_start = n_max + pad;

  std::vector<double> raw(n_max - m + 1, 0.0);
  std::vector<std::uint32_t> cnt(n_max - m + 1, 0);
  std::uint32_t count = 0;
  double jp = 0.0, jc = 0x1p-600;
  for (std::size_t k = n_start; k > m; --k) {
    double next = (2.0 * k + 1.0) / ax * jc - jp;
    jp = jc;
    jc = next;
    if (std::fabs(jc) > up) {
      jc *= cut;
      jp *= cut;
      ++count;
    }
    if (k - 1 <= n_max) {
      raw[k - 1 - m] = jc;
      cnt[k - 1 - m] = count;
    }
  }
  // jc is now the raw value at index m, carrying the full rescale count
  double ratio = out[m] / jc;
  int re = 0;
  double rm = std::frexp(ratio, &re);
  for (std::size_t k = m + 1; k <= n_max; ++k) {
    long ex = 1000L * ((long)cnt[k - m] - (long)count) + re;
    out[k] = std::ldexp(raw[k - m] * rm, (int)ex);
  }
}

}  // namespace

std::vector<double> sph_bessel_j_seq(std::size_t n_max, double x) {
  if (std::isnan(x)) throw domain_error("sph_bessel_j_seq: NaN argument");
  std::vector<double> out(n_max + 1, 0.0);
  double ax = std::fabs(x);
  if (ax == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (ax < 1e-3) {
    sph_small_x(out, ax);
  } else {
    // upward is stable while n <= |x|; the junction entry anchors miller
    std::size_t n_up = std::min(n_max, (std::size_t)ax);
    out[0] = std::sin(ax) / ax;
    if (n_max >= 1 && n_up >= 1)
      out[1] = std::sin(ax) / (ax * ax) - std::cos(ax) / ax;
    for (std::size_t n = 2; n <= n_up; ++n)
      out[n] = (2.0 * n - 1.0) / ax * out[n - 1] - out[n - 2];
    if (n_up < n_max) sph_miller_down(out, ax, n_up, n_max);
  }
  if (x < 0.0)
    for (std::size_t n = 1; n <= n_max; n += 2) out[n] = -out[n];
  return out;
}

LegendreSeq legendre_p_seq(std::size_t n_max, double x) {
  if (!(std::fabs(x) <= 1.0))
    throw domain_error("legendre_p_seq: x outside [-1,1]");
  LegendreSeq out;
  out.values.assign(n_max + 1, 0.0);
  out.derivatives.assign(n_max + 1, 0.0);
  out.values[0] = 1.0;
  if (n_max >= 1) {
    out.values[1] = x;
    out.derivatives[1] = 1.0;
  }
  // value recurrence plus the derivative recurrence
  // p'_{n+1} = p'_{n-1} + (2n+1) p_n, exact at the endpoints
  for (std::size_t n = 1; n < n_max; ++n) {
    out.values[n + 1] =
        ((2.0 * n + 1.0) * x * out.values[n] - n * out.values[n - 1]) / (n + 1.0);
    out.derivatives[n + 1] = out.derivatives[n - 1] + (2.0 * n + 1.0) * out.values[n];
  }
  return out;
}

double sine_integral(double t) {
  if (std::isnan(t)) throw domain_error("sine_integral: NaN argument");
  double at = std::fabs(t);
  double si;
  if (at <= 4.0) {
    // odd power series sum (-1)^k t^{2k+1} / ((2k+1)(2k+1)!)
    double u = -at * at;
    double c = at;  // t^{2k+1}/(2k+1)!
    double s = at;
    for (int k = 1; k <= 40; ++k) {
      c *= u / ((2.0 * k) * (2.0 * k + 1.0));
      double add = c / (2.0 * k + 1.0);
      s += add;
      if (std::fabs(add) < 1e-17 * std::fabs(s)) break;
    }
    si = s;
  } else {
    // modified lentz continued fraction for the auxiliary integral; the
    // imaginary part recovers si - pi/2
    std::complex<double> b(1.0, at);
    std::complex<double> c(1.0 / 1e-300, 0.0);
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    for (int i = 2; i <= 300; ++i) {
      double a = -(i - 1.0) * (i - 1.0);
      b += 2.0;
      d = 1.0 / (a * d + b);
      c = b + a / c;
      std::complex<double> del = c * d;
      h *= del;
      if (std::fabs(del.real() - 1.0) + std::fabs(del.imag()) < 1e-16) break;
    }
    h *= std::complex<double>(std::cos(at), -std::sin(at));
    si = M_PI_2 + h.imag();
  }
  return t < 0.0 ? -si : si;
}

double sinc(double x) {
  if (std::fabs(x) < 1e-4) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

double cyl_bessel_jn(int nu, double x) {
  if (std::isnan(x)) throw domain_error("cyl_bessel_jn: NaN argument");
  if (nu < 0) throw argument_error("cyl_bessel_jn: order must be >= 0");
  double v = std::cyl_bessel_j((double)nu, std::fabs(x));
  if (x < 0.0 && (nu & 1)) v = -v;
  return v;
}

}  // namespace prolate
