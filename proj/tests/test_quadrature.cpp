#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "prolate/common.hpp"
#include "prolate/quadrature.hpp"
#include "prolate/specfun.hpp"

using prolate::gauss_legendre_rule;
using prolate::lgl_rule;
using prolate::QuadRule;

TEST_SUITE("quadrature") {

TEST_CASE("small gauss rules match closed forms") {
  QuadRule g2 = gauss_legendre_rule(2);
  double r3 = 1.0 / std::sqrt(3.0);
  CHECK(g2.nodes[0] == doctest::Approx(-r3).epsilon(1e-15));
  CHECK(g2.nodes[1] == doctest::Approx(r3).epsilon(1e-15));
  CHECK(g2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

  QuadRule g3 = gauss_legendre_rule(3);
  double r35 = std::sqrt(3.0 / 5.0);
  CHECK(g3.nodes[0] == doctest::Approx(-r35).epsilon(1e-15));
  CHECK(g3.nodes[1] == 0.0);
  CHECK(g3.nodes[2] == doctest::Approx(r35).epsilon(1e-15));
  CHECK(g3.weights[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
  CHECK(g3.weights[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));

  QuadRule g1 = gauss_legendre_rule(1);
  CHECK(g1.nodes[0] == 0.0);
  CHECK(g1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("gauss degree of exactness") {
  QuadRule g = gauss_legendre_rule(50);
  double s = 0.0;
  for (std::size_t q = 0; q < g.size(); ++q)
    s += g.weights[q] * std::pow(g.nodes[q], 98);
  CHECK(s == doctest::Approx(2.0 / 99.0).epsilon(1e-13));
}

TEST_CASE("small lobatto rules match closed forms") {
  QuadRule l2 = lgl_rule(2);
  CHECK(l2.nodes[0] == -1.0);
  CHECK(l2.nodes[1] == 1.0);
  CHECK(l2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(l2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

  QuadRule l3 = lgl_rule(3);
  CHECK(l3.nodes[1] == 0.0);
  CHECK(l3.weights[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(l3.weights[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));

  CHECK_THROWS_AS(lgl_rule(1), prolate::argument_error);
}

TEST_CASE("lobatto integrates legendre products exactly") {
  QuadRule l = lgl_rule(20);
  double s = 0.0;
  for (std::size_t q = 0; q < l.size(); ++q) {
    prolate::LegendreSeq seq = prolate::legendre_p_seq(7, l.nodes[q]);
    s += l.weights[q] * seq.values[5] * seq.values[7];
  }
  CHECK(std::fabs(s) < 1e-15);
}

TEST_CASE("mirror symmetry is exact in both rules") {
  for (std::size_t n : {2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 50u, 51u, 400u, 401u}) {
    for (int kind = 0; kind < 2; ++kind) {
      QuadRule r = kind == 0 ? gauss_legendre_rule(n) : lgl_rule(n);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(r.nodes[i] == -r.nodes[n - 1 - i]);
        CHECK(r.weights[i] == r.weights[n - 1 - i]);
      }
      for (std::size_t i = 0; i + 1 < n; ++i) CHECK(r.nodes[i] < r.nodes[i + 1]);
    }
  }
}

TEST_CASE("weights sum to the interval length") {
  for (std::size_t n : {5u, 64u, 1001u, 4001u}) {
    for (int kind = 0; kind < 2; ++kind) {
      QuadRule r = kind == 0 ? gauss_legendre_rule(n) : lgl_rule(n);
      double s = 0.0;
      for (double w : r.weights) s += w;
      CHECK(s == doctest::Approx(2.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("self convergence on a smooth integrand") {
  auto f = [](double x) { return std::exp(x); };
  double a = prolate::inner_product(f, [](double) { return 1.0; },
                                    gauss_legendre_rule(20));
  double b = prolate::inner_product(f, [](double) { return 1.0; },
                                    gauss_legendre_rule(40));
  CHECK(std::fabs(a - b) < 1e-12);
  CHECK(a == doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("inner products of basis members") {
  auto one = [](double) { return 1.0; };
  CHECK(prolate::inner_product(one, one, gauss_legendre_rule(10)) ==
        doctest::Approx(2.0).epsilon(1e-14));

  auto pbar3 = [](double x) {
    return std::sqrt(3.5) * prolate::legendre_p_seq(3, x).values[3];
  };
  CHECK(prolate::inner_product(pbar3, pbar3, gauss_legendre_rule(50)) ==
        doctest::Approx(1.0).epsilon(1e-14));

  const double sigma = 8.0;
  auto jbar = [sigma](unsigned n, double t) {
    return std::sqrt(sigma * (2.0 * n + 1.0) / M_PI) *
           prolate::sph_bessel_j_seq(n, sigma * t)[n];
  };
  auto j0 = [&](double t) { return jbar(0, t); };
  auto j2 = [&](double t) { return jbar(2, t); };
  double got = prolate::inner_product(j0, j2, gauss_legendre_rule(4000));
  double ref = oracle::integrate([&](double t) { return j0(t) * j2(t); }, -1.0, 1.0);
  CHECK(got == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
}

TEST_CASE("interval mapping") {
  QuadRule m = prolate::map_rule(gauss_legendre_rule(10), 0.0, 1.0);
  double s = 0.0;
  for (std::size_t q = 0; q < m.size(); ++q)
    s += m.weights[q] * m.nodes[q] * m.nodes[q];
  CHECK(s == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(prolate::map_rule(gauss_legendre_rule(4), 1.0, 1.0),
                  prolate::argument_error);
}

TEST_CASE("lobatto differentiation matrix") {
  QuadRule l = lgl_rule(10);
  prolate::Matrix d = prolate::lgl_diff_matrix(l);
  std::size_t n = l.size();
  double N = (double)(n - 1);
  CHECK(d(0, 0) == doctest::Approx(-N * (N + 1.0) / 4.0).epsilon(1e-15));
  CHECK(d(n - 1, n - 1) == doctest::Approx(N * (N + 1.0) / 4.0).epsilon(1e-15));
  // derivative of P3 sampled at the nodes
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      acc += d(j, k) * prolate::legendre_p_seq(3, l.nodes[k]).values[3];
    double ref = prolate::legendre_p_seq(3, l.nodes[j]).derivatives[3];
    CHECK(acc == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
    double rowsum = 0.0;
    for (std::size_t k = 0; k < n; ++k) rowsum += d(j, k);
    CHECK(std::fabs(rowsum) < 1e-12);
  }
  CHECK_THROWS_AS(prolate::lgl_diff_matrix(gauss_legendre_rule(5)),
                  prolate::argument_error);
}

}  // TEST_SUITE
