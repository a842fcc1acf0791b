#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "prolate/common.hpp"
#include "prolate/specfun.hpp"

using prolate::sph_bessel_j_seq;

TEST_SUITE("specfun") {

TEST_CASE("spherical bessel basics") {
  std::vector<double> v = sph_bessel_j_seq(1, 0.0);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 0.0);
  std::vector<double> w = sph_bessel_j_seq(0, M_PI);
  CHECK(std::fabs(w[0]) < 1e-15);
}

TEST_CASE("spherical bessel against the series oracle") {
  struct Probe { unsigned n; double x; };
  const Probe probes[] = {{10, 8.0}, {6, 1e-4}, {3, 0.5},
                          {50, 10.0}, {120, 30.0}, {25, 25.5}};
  for (const Probe& p : probes) {
    std::vector<double> v = sph_bessel_j_seq(p.n, p.x);
    double ref = (double)oracle::sph_bessel_series(p.n, p.x);
    CHECK(std::fabs(v[p.n] - ref) <= 1e-12 * std::fabs(ref));
  }
}

TEST_CASE("spherical bessel parity and domain") {
  std::vector<double> vp = sph_bessel_j_seq(7, 2.7);
  std::vector<double> vm = sph_bessel_j_seq(7, -2.7);
  for (unsigned n = 0; n <= 7; ++n) {
    double expect = (n % 2 == 0) ? vp[n] : -vp[n];
    CHECK(vm[n] == expect);  // exact sign flip
  }
  CHECK_THROWS_AS(sph_bessel_j_seq(3, std::nan("")), prolate::domain_error);
}

TEST_CASE("spherical bessel three-term recurrence") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<unsigned> nd(1, 50);
  std::uniform_real_distribution<double> xd(0.1, 50.0);
  for (int trial = 0; trial < 20; ++trial) {
    unsigned n = nd(rng);
    double x = xd(rng);
    std::vector<double> v = sph_bessel_j_seq(n + 1, x);
    double lhs = (2.0 * n + 1.0) * v[n] / x;
    double rhs = v[n - 1] + v[n + 1];
    double scale = std::fabs(v[n - 1]) + std::fabs(v[n + 1]) + 1e-300;
    CHECK(std::fabs(lhs - rhs) <= 1e-12 * scale);
  }
}

TEST_CASE("legendre recurrence values and derivatives") {
  prolate::LegendreSeq s = prolate::legendre_p_seq(2, 1.0);
  CHECK(s.values[0] == 1.0);
  CHECK(s.values[1] == 1.0);
  CHECK(s.values[2] == 1.0);
  prolate::LegendreSeq z = prolate::legendre_p_seq(2, 0.0);
  CHECK(z.values[0] == 1.0);
  CHECK(z.values[1] == 0.0);
  CHECK(z.values[2] == doctest::Approx(-0.5).epsilon(1e-15));

  prolate::LegendreSeq s6 = prolate::legendre_p_seq(6, 0.3);
  CHECK(s6.values[6] ==
        doctest::Approx((double)oracle::legendre_binomial(6, 0.3)).epsilon(1e-14));

  // derivative channel vs the finite-difference oracle
  for (unsigned n : {1u, 4u, 7u}) {
    double d = prolate::legendre_p_seq(n, 0.37).derivatives[n];
    double ref = oracle::fd_derivative(
        [n](double x) { return (double)oracle::legendre_binomial(n, x); }, 0.37,
        1e-3);
    CHECK(d == doctest::Approx(ref).epsilon(1e-8));
  }

  CHECK_THROWS_AS(prolate::legendre_p_seq(3, 1.5), prolate::domain_error);
  CHECK_THROWS_AS(prolate::legendre_p_seq(3, std::nan("")), prolate::domain_error);
}

TEST_CASE("sine integral against the quadrature oracle") {
  CHECK(prolate::sine_integral(0.0) == 0.0);
  for (double t : {0.5, 2.0, 3.999, 4.001, 10.0, 20.0}) {
    double ref = oracle::integrate(
        [](double u) { return prolate::sinc(u); }, 0.0, t);
    CHECK(prolate::sine_integral(t) == doctest::Approx(ref).epsilon(1e-12));
    CHECK(prolate::sine_integral(-t) == -prolate::sine_integral(t));
  }
  // asymptotic approach to pi/2
  CHECK(std::fabs(prolate::sine_integral(1e4) - M_PI / 2.0) < 2e-4);
}

TEST_CASE("sinc small-argument series") {
  CHECK(prolate::sinc(0.0) == 1.0);
  CHECK(prolate::sinc(M_PI / 2.0) == doctest::Approx(2.0 / M_PI).epsilon(1e-15));
  for (double x : {1e-8, 1e-5, 9.9e-5, 1.1e-4, 1e-3}) {
    long double ref = std::sin((long double)x) / (long double)x;
    CHECK(prolate::sinc(x) == doctest::Approx((double)ref).epsilon(1e-15));
  }
}

TEST_CASE("cylindrical bessel wrapper") {
  CHECK(prolate::cyl_bessel_jn(2, 3.0) ==
        doctest::Approx(std::cyl_bessel_j(2.0, 3.0)).epsilon(1e-15));
  CHECK(prolate::cyl_bessel_jn(2, -3.0) == prolate::cyl_bessel_jn(2, 3.0));
  CHECK(prolate::cyl_bessel_jn(3, -3.0) == -prolate::cyl_bessel_jn(3, 3.0));
}

TEST_CASE("plane wave expansion over the normalized bessel basis") {
  const double sigma = 8.0;
  const int L = 60;
  const struct { double eta, t; } probes[] = {
      {0.3, 0.7}, {0.9, -0.4}, {0.51, 0.13}};
  for (const auto& p : probes) {
    std::vector<double> j = sph_bessel_j_seq(L, sigma * p.eta);
    prolate::LegendreSeq leg = prolate::legendre_p_seq(L, p.t);
    std::complex<double> acc(0.0, 0.0);
    std::complex<double> mi(0.0, -1.0);
    std::complex<double> phase(1.0, 0.0);
    for (int l = 0; l <= L; ++l) {
      double jbar = std::sqrt(sigma * (2.0 * l + 1.0) / M_PI) * j[l];
      double pbar = std::sqrt(l + 0.5) * leg.values[l];
      acc += phase * jbar * pbar;
      phase *= mi;
    }
    acc *= std::sqrt(2.0 * M_PI / sigma);
    std::complex<double> ref = std::exp(std::complex<double>(0.0, -sigma * p.eta * p.t));
    CHECK(std::abs(acc - ref) < 1e-10);
  }
}

}  // TEST_SUITE
