#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "oracles.hpp"
#include "prolate/blkernel.hpp"
#include "prolate/common.hpp"
#include "prolate/eigsolve.hpp"
#include "prolate/extrapolate.hpp"
#include "prolate/pswf.hpp"
#include "prolate/quadrature.hpp"
#include "prolate/specfun.hpp"

using prolate::BasisTag;
using prolate::builtin_kernel;
using prolate::gauss_legendre_rule;
using prolate::KernelEigenSet;
using prolate::KernelSpec;
using prolate::Matrix;
using prolate::QuadRule;

namespace {

KernelSpec flat_kernel(double sigma) {
  KernelSpec k;
  k.name = "flat";
  k.sigma = sigma;
  k.time_fn = [sigma](double t) { return (sigma / M_PI) * prolate::sinc(sigma * t); };
  k.freq_fn = [sigma](double xi) { return std::fabs(xi) <= sigma ? 1.0 : 0.0; };
  return k;
}

}  // namespace

TEST_SUITE("blkernel") {

TEST_CASE("built in kernels") {
  const double sigma = 8.0;
  KernelSpec k1 = builtin_kernel("K1", sigma);
  KernelSpec k2 = builtin_kernel("k2", sigma);
  CHECK(k1.name == "K1");
  CHECK(k2.name == "K2");

  CHECK(k1.freq_fn(0.5 * sigma) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(k1.freq_fn(-0.5 * sigma) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(k1.freq_fn(sigma) == 0.0);
  CHECK(k1.freq_fn(1.2 * sigma) == 0.0);
  CHECK(k2.freq_fn(0.5 * sigma) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(k2.freq_fn(sigma) == 0.0);
  CHECK(k2.freq_fn(-2.0 * sigma) == 0.0);

  CHECK(k1.time_fn(0.0) == doctest::Approx(sigma / (2.0 * M_PI)).epsilon(1e-15));
  CHECK(k2.time_fn(0.0) ==
        doctest::Approx(2.0 * sigma / (3.0 * M_PI)).epsilon(1e-14));
  // time value from the closed forms
  double t = 0.7;
  double z = sigma * t / 2.0;
  double s = std::sin(z) / z;
  CHECK(k1.time_fn(t) ==
        doctest::Approx(sigma / (2.0 * M_PI) * s * s).epsilon(1e-14));

  // the series branch of the second kernel is continuous across its switch
  double eps = 1e-2 / sigma;
  CHECK(k2.time_fn(eps * 0.999) == doctest::Approx(k2.time_fn(eps * 1.001))
                                       .epsilon(1e-7));

  CHECK_THROWS_AS(builtin_kernel("K9", sigma), prolate::argument_error);
  CHECK_THROWS_AS(builtin_kernel("K1", 0.0), prolate::argument_error);
}

TEST_CASE("time and frequency sides are a transform pair") {
  const double sigma = 8.0;
  for (const char* name : {"K1", "K2"}) {
    KernelSpec k = builtin_kernel(name, sigma);
    for (double t : {0.0, 0.3, 1.1, 3.7}) {
      double ref = oracle::integrate(
                       [&](double xi) { return k.freq_fn(xi) * std::cos(xi * t); },
                       0.0, sigma) /
                   M_PI;
      CHECK(k.time_fn(t) == doctest::Approx(ref).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("moment matrix entries against direct integrals") {
  const double sigma = 8.0;
  KernelSpec k1 = builtin_kernel("K1", sigma);
  KernelSpec k2 = builtin_kernel("K2", sigma);
  Matrix m1 = prolate::kernel_matrix_bessel(k1, 12);
  Matrix m2 = prolate::kernel_matrix_bessel(k2, 12);

  // triangular transform: (0,0) entry integrates (1/2)(1-|u|) exactly
  CHECK(m1(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  // and the (0,2) entry carries the fold-in phase: -integral = +sqrt(5)/8
  CHECK(m1(0, 2) == doctest::Approx(std::sqrt(5.0) / 8.0).epsilon(1e-12));
  CHECK(m1(2, 0) == doctest::Approx(std::sqrt(5.0) / 8.0).epsilon(1e-12));
  // parabolic transform diagonal: (1/2) int (1-u^2) du
  CHECK(m2(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  // opposite parity entries vanish identically
  CHECK(m1(0, 1) == 0.0);
  CHECK(m1(3, 6) == 0.0);
  CHECK(m2(2, 5) == 0.0);
  CHECK(prolate::sym_deviation(m1) == 0.0);

  // generic entry against an independent quadrature of the moment integral
  auto pbar = [](unsigned n, double u) {
    return std::sqrt(n + 0.5) * (double)oracle::legendre_binomial(n, u);
  };
  double ref24 = oracle::integrate(
      [&](double u) { return (1.0 - u * u) * pbar(2, u) * pbar(4, u); }, -1.0,
      1.0);
  // phase (-1)^((2-4)/2) = -1
  CHECK(m2(2, 4) == doctest::Approx(-ref24).epsilon(1e-11).scale(1.0));

  // explicit rule overload agrees where the integrand is smooth
  Matrix v2 = prolate::kernel_matrix_bessel(k2, 12, gauss_legendre_rule(200));
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j)
      CHECK(v2(i, j) == doctest::Approx(m2(i, j)).epsilon(1e-12).scale(1.0));
}

TEST_CASE("toeplitz matrix over sinc translates") {
  const double sigma = 8.0;
  KernelSpec k1 = builtin_kernel("K1", sigma);
  KernelSpec k2 = builtin_kernel("K2", sigma);
  Matrix t1 = prolate::kernel_matrix_sinc(k1, -5, 11);
  Matrix t2 = prolate::kernel_matrix_sinc(k2, -5, 11);

  for (std::size_t i = 0; i < 11; ++i) {
    CHECK(t1(i, i) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t2(i, i) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }
  // triangular kernel at lag d: (1/2) sinc^2(d pi / 2)
  CHECK(t1(0, 1) == doctest::Approx(2.0 / (M_PI * M_PI)).epsilon(1e-14));
  CHECK(std::fabs(t1(0, 2)) < 1e-30);
  CHECK(t1(0, 3) == doctest::Approx(2.0 / (9.0 * M_PI * M_PI)).epsilon(1e-13));
  // parabolic kernel at lag 3: (pi/sigma) K2(3 pi / sigma) = 2/(9 pi^2)
  CHECK(t2(0, 3) == doctest::Approx(2.0 / (9.0 * M_PI * M_PI)).epsilon(1e-13));
  // toeplitz structure
  for (std::size_t i = 0; i + 4 < 11; ++i)
    CHECK(t2(i, i + 4) == t2(0, 4));
  CHECK(prolate::sym_deviation(t2) == 0.0);
}

TEST_CASE("flat transform reduces to the concentration problem") {
  const double sigma = 8.0;
  KernelSpec k = flat_kernel(sigma);
  Matrix m = prolate::kernel_matrix_bessel(k, 30);
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = 0; j < 30; ++j)
      CHECK(m(i, j) == doctest::Approx(i == j ? 1.0 : 0.0)
                           .epsilon(1e-12)
                           .scale(1.0));

  QuadRule rule = gauss_legendre_rule(500);
  KernelEigenSet ks = prolate::kernel_eigen(k, BasisTag::Bessel, 60, 8, rule);
  prolate::PswfSet ref = prolate::pswf_bessel_ie(sigma, 60, 8, rule);
  for (std::size_t n = 0; n < 8; ++n)
    CHECK(ks.eigenvalues[n] ==
          doctest::Approx(ref.eigenvalues[n]).epsilon(1e-10).scale(1.0));
  // expected parity interleaving
  CHECK(ks.parities[0] == prolate::Parity::Even);
  CHECK(ks.parities[1] == prolate::Parity::Odd);
  CHECK(ks.parities[2] == prolate::Parity::Even);
}

TEST_CASE("eigen decomposition against an unsymmetrized solver") {
  const double sigma = 8.0;
  KernelSpec k2 = builtin_kernel("K2", sigma);
  QuadRule rule = gauss_legendre_rule(500);
  KernelEigenSet ks = prolate::kernel_eigen(k2, BasisTag::Bessel, 60, 12, rule);

  prolate::GramMatrix g = prolate::gram_bessel(sigma, 60, rule);
  Matrix km = prolate::kernel_matrix_bessel(k2, 60, rule);
  std::vector<double> qr = oracle::real_eigenvalues(prolate::matmul(g.entries, km));
  for (std::size_t n = 0; n < 12; ++n)
    CHECK(ks.eigenvalues[n] == doctest::Approx(qr[n]).epsilon(1e-8).scale(1.0));
}

TEST_CASE("operator traces match analytic invariants") {
  const double sigma = 8.0;
  KernelSpec k2 = builtin_kernel("K2", sigma);
  QuadRule rule = gauss_legendre_rule(600);
  prolate::GramMatrix g = prolate::gram_bessel(sigma, 120, rule);
  Matrix km = prolate::kernel_matrix_bessel(k2, 120);
  Matrix a = prolate::matmul(g.entries, km);
  double tr = 0.0;
  for (std::size_t i = 0; i < 120; ++i) tr += a(i, i);
  // sum of eigenvalues = int_{-1}^{1} K(0) dt
  CHECK(tr == doctest::Approx(2.0 * k2.time_fn(0.0)).epsilon(1e-10));

  // sum of squared eigenvalues = double integral of K(t-s)^2 over the square
  Matrix a2 = prolate::matmul(a, a);
  double tr2 = 0.0;
  for (std::size_t i = 0; i < 120; ++i) tr2 += a2(i, i);
  double ref = 2.0 * oracle::integrate(
                         [&](double u) {
                           double v = k2.time_fn(u);
                           return v * v * (2.0 - u);
                         },
                         0.0, 2.0);
  CHECK(tr2 == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("eigenpairs satisfy the matrix relations") {
  const double sigma = 8.0;
  KernelSpec k2 = builtin_kernel("K2", sigma);
  QuadRule rule = gauss_legendre_rule(500);
  std::size_t nb = 60;
  KernelEigenSet ks = prolate::kernel_eigen(k2, BasisTag::Bessel, nb, 6, rule);
  prolate::GramMatrix g = prolate::gram_bessel(sigma, nb, rule);
  Matrix km = prolate::kernel_matrix_bessel(k2, nb, rule);
  Matrix a = prolate::matmul(g.entries, km);

  for (std::size_t n = 0; n < 6; ++n) {
    REQUIRE(ks.coeffs[n].coeffs.size() == nb);
    REQUIRE(ks.recovered[n].coeffs.size() == nb);
    // recovered expansion has unit coefficient norm
    CHECK(prolate::norm2(ks.recovered[n].coeffs) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // synthesis relation: recovered is the kernel image of the coefficients
    std::vector<double> img = prolate::matvec(km, ks.coeffs[n].coeffs);
    for (std::size_t i = 0; i < nb; ++i)
      CHECK(img[i] ==
            doctest::Approx(ks.recovered[n].coeffs[i]).epsilon(1e-11).scale(1.0));
    // eigen relation for the product matrix
    std::vector<double> av = prolate::matvec(a, ks.coeffs[n].coeffs);
    for (std::size_t i = 0; i < nb; ++i)
      CHECK(av[i] == doctest::Approx(ks.eigenvalues[n] * ks.coeffs[n].coeffs[i])
                         .epsilon(1e-9)
                         .scale(1e-2));
  }

  // restricted eigenfunctions are orthogonal with respect to the overlap
  for (std::size_t n = 0; n < 6; ++n)
    for (std::size_t m = n + 1; m < 6; ++m) {
      std::vector<double> gv = prolate::matvec(g.entries, ks.recovered[m].coeffs);
      double dot = 0.0;
      for (std::size_t i = 0; i < nb; ++i)
        dot += ks.recovered[n].coeffs[i] * gv[i];
      CHECK(std::fabs(dot) < 1e-10);
    }
}

TEST_CASE("eigenfunctions are invariant under the integral operator") {
  const double sigma = 8.0;
  KernelSpec k2 = builtin_kernel("K2", sigma);
  QuadRule rule = gauss_legendre_rule(500);
  KernelEigenSet ks = prolate::kernel_eigen(k2, BasisTag::Bessel, 60, 3, rule);
  std::vector<double> pts = {-0.85, -0.4, 0.0, 0.33, 0.71, 0.98};
  QuadRule conv = gauss_legendre_rule(400);
  for (std::size_t n = 0; n < 3; ++n) {
    const prolate::CoeffVector& fn = ks.recovered[n];
    std::vector<double> img = prolate::apply_forward(
        k2, [&](double s) { return prolate::eval_expansion_at(fn, s); }, pts,
        conv);
    std::vector<double> direct = prolate::eval_expansion(fn, pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
      CHECK(img[i] == doctest::Approx(ks.eigenvalues[n] * direct[i])
                          .epsilon(1e-8)
                          .scale(1.0));
  }
}

TEST_CASE("sinc and bessel paths agree on the leading eigenvalues") {
  const double sigma = 8.0;
  KernelSpec k2 = builtin_kernel("K2", sigma);
  KernelEigenSet kb = prolate::kernel_eigen(k2, BasisTag::Bessel, 60, 4,
                                            gauss_legendre_rule(500));
  KernelEigenSet kt = prolate::kernel_eigen(k2, BasisTag::Sinc, 321, 4);
  for (std::size_t n = 0; n < 4; ++n)
    CHECK(kt.eigenvalues[n] ==
          doctest::Approx(kb.eigenvalues[n]).epsilon(1e-5).scale(1.0));
  for (std::size_t n = 0; n + 1 < 4; ++n)
    CHECK(kt.eigenvalues[n] > kt.eigenvalues[n + 1]);
  CHECK(kt.coeffs[0].first_index == -160);
}

TEST_CASE("indefinite transforms are allowed and produce negative tail modes") {
  const double sigma = 10.0;
  KernelSpec k;
  k.name = "wave";
  k.sigma = sigma;
  KernelSpec k2 = builtin_kernel("K2", sigma);
  KernelSpec kf = flat_kernel(sigma);
  k.freq_fn = [sigma](double xi) {
    double u = xi / sigma;
    return std::fabs(u) <= 1.0 ? 1.0 - 2.0 * u * u : 0.0;
  };
  k.time_fn = [k2, kf](double t) {
    return 2.0 * k2.time_fn(t) - kf.time_fn(t);
  };
  KernelEigenSet ks =
      prolate::kernel_eigen(k, BasisTag::Bessel, 50, 50, gauss_legendre_rule(400));
  CHECK(ks.eigenvalues.front() > 0.0);
  CHECK(ks.eigenvalues.back() < -1e-3);
}

TEST_CASE("forward map basics") {
  const double sigma = 8.0;
  KernelSpec kf = flat_kernel(sigma);
  QuadRule rule = gauss_legendre_rule(400);
  // flat kernel applied to a concentrated eigenfunction scales it by lambda
  prolate::PswfSet ps = prolate::pswf_bessel_ie(sigma, 60, 1, gauss_legendre_rule(500));
  std::vector<double> pts = {-0.6, 0.0, 0.45};
  std::vector<double> img = prolate::apply_forward(
      kf, [&](double s) { return prolate::eval_pswf(ps, 0, {s})[0]; }, pts, rule);
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(img[i] == doctest::Approx(ps.eigenvalues[0] *
                                    prolate::eval_pswf(ps, 0, {pts[i]})[0])
                        .epsilon(1e-10)
                        .scale(1.0));
  // zero signal maps to zero
  std::vector<double> zz = prolate::apply_forward(
      kf, [](double) { return 0.0; }, pts, rule);
  for (double v : zz) CHECK(v == 0.0);
}

TEST_CASE("closed form signal pairs round trip through the forward map") {
  prolate::SignalPair p1 = prolate::test_signal_pair("pair1", 4);
  CHECK(p1.sigma == doctest::Approx(4.0 * M_PI).epsilon(1e-15));
  KernelSpec k1 = builtin_kernel("K2", p1.sigma);
  QuadRule rule = gauss_legendre_rule(600);
  std::vector<double> pts = {-0.8, -0.31, 0.0, 0.5, 0.97};
  std::vector<double> img = prolate::apply_forward(k1, p1.y, pts, rule);
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(img[i] == doctest::Approx(p1.x(pts[i])).epsilon(1e-10).scale(1.0));

  prolate::SignalPair p2 = prolate::test_signal_pair("pair2", 2);
  CHECK(p2.sigma == doctest::Approx(4.0 * M_PI).epsilon(1e-15));
  KernelSpec k2 = builtin_kernel("K2", p2.sigma);
  std::vector<double> img2 = prolate::apply_forward(k2, p2.y, pts, rule);
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(img2[i] == doctest::Approx(p2.x(pts[i])).epsilon(1e-10).scale(1.0));

  // frozen spot value of the image
  CHECK(prolate::test_signal_pair("pair2", 1).x(0.3) ==
        doctest::Approx(0.520537374226).epsilon(1e-11));

  CHECK_THROWS_AS(prolate::test_signal_pair("pair3", 2), prolate::argument_error);
  CHECK_THROWS_AS(prolate::test_signal_pair("pair1", 0), prolate::argument_error);
}

TEST_CASE("inversion recovers a mid band signal") {
  const double sigma = 4.0 * M_PI;
  KernelSpec k2 = builtin_kernel("K2", sigma);
  QuadRule rule = gauss_legendre_rule(500);
  QuadRule conv = gauss_legendre_rule(400);
  auto y = [sigma](double s) { return std::sin(0.5 * sigma * s); };
  auto x = [&](double t) {
    return prolate::apply_forward(k2, y, {t}, conv)[0];
  };
  prolate::InvertConfig cfg;
  cfg.mu = 1e-8;
  prolate::InvertResult r =
      prolate::invert(k2, x, BasisTag::Bessel, 60, cfg, rule);
  QuadRule err = gauss_legendre_rule(300);
  double num = 0.0, den = 0.0;
  QuadRule win = prolate::map_rule(err, -0.9, 0.9);
  for (std::size_t q = 0; q < win.size(); ++q) {
    double d = r.evaluate(win.nodes[q]) - y(win.nodes[q]);
    num += win.weights[q] * d * d;
    den += win.weights[q] * y(win.nodes[q]) * y(win.nodes[q]);
  }
  CHECK(std::sqrt(num / den) < 1e-3);
  CHECK(r.solution_norm > 0.0);
  CHECK(std::isfinite(r.residual_norm));
  CHECK_THROWS_AS(r.evaluate(1.2), prolate::domain_error);
}

TEST_CASE("inversion round trip on the closed form pair") {
  prolate::SignalPair p1 = prolate::test_signal_pair("pair1", 4);
  KernelSpec k2 = builtin_kernel("K2", p1.sigma);
  QuadRule rule = gauss_legendre_rule(500);
  prolate::InvertConfig cfg;
  cfg.mu = 1e-8;
  prolate::InvertResult r =
      prolate::invert(k2, p1.x, BasisTag::Bessel, 60, cfg, rule);
  // the recovered signal reproduces the observed image through the kernel
  QuadRule conv = gauss_legendre_rule(400);
  std::vector<double> pts = {-0.7, -0.2, 0.25, 0.8};
  std::vector<double> img = prolate::apply_forward(k2, r.evaluate, pts, conv);
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(img[i] == doctest::Approx(p1.x(pts[i])).epsilon(1e-2).scale(0.1));

  // sobolev penalty variant stays close as well
  cfg.penalty = prolate::PenaltyKind::Sobolev;
  cfg.mu = 1e-6;
  prolate::InvertResult rs =
      prolate::invert(k2, p1.x, BasisTag::Bessel, 60, cfg, rule);
  std::vector<double> imgs = prolate::apply_forward(k2, rs.evaluate, pts, conv);
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(imgs[i] == doctest::Approx(p1.x(pts[i])).epsilon(5e-2).scale(0.1));
}

TEST_CASE("inversion guards and degenerate input") {
  const double sigma = 8.0;
  KernelSpec k2 = builtin_kernel("K2", sigma);
  QuadRule rule = gauss_legendre_rule(300);
  prolate::InvertConfig cfg;

  prolate::InvertResult rz = prolate::invert(
      k2, [](double) { return 0.0; }, BasisTag::Bessel, 40, cfg, rule);
  CHECK(rz.solution_norm == 0.0);
  CHECK(rz.evaluate(0.3) == 0.0);

  cfg.penalty = prolate::PenaltyKind::Sobolev;
  CHECK_THROWS_AS(prolate::invert(k2, [](double) { return 0.0; },
                                  BasisTag::Sinc, 41, cfg, rule),
                  prolate::config_error);
  cfg.penalty = prolate::PenaltyKind::Standard;
  CHECK_THROWS_AS(prolate::invert(k2, [](double) { return 0.0; },
                                  BasisTag::Legendre, 40, cfg, rule),
                  prolate::argument_error);
  cfg.mu = -1.0;
  CHECK_THROWS_AS(prolate::invert(k2, [](double) { return 0.0; },
                                  BasisTag::Bessel, 40, cfg, rule),
                  prolate::argument_error);
}

TEST_CASE("kernel validation") {
  KernelSpec bad;
  bad.name = "odd";
  bad.sigma = 4.0;
  bad.time_fn = [](double t) { return t; };
  bad.freq_fn = [](double xi) { return xi; };  // odd transform
  CHECK_THROWS_AS(prolate::kernel_matrix_sinc(bad, -5, 11),
                  prolate::argument_error);
  KernelSpec unset;
  unset.sigma = 4.0;
  CHECK_THROWS_AS(prolate::kernel_matrix_bessel(unset, 10),
                  prolate::argument_error);
  KernelSpec k2 = builtin_kernel("K2", 8.0);
  CHECK_THROWS_AS(prolate::kernel_eigen(k2, BasisTag::Legendre, 40, 4),
                  prolate::argument_error);
  CHECK_THROWS_AS(prolate::apply_forward(k2, nullptr, {0.0},
                                         gauss_legendre_rule(100)),
                  prolate::argument_error);
}

}  // TEST_SUITE
