#include "prolate/quadrature.hpp"

#include <cmath>

#include "prolate/common.hpp"

namespace prolate {

namespace {

// legendre value/derivative pair at x for newton iterations
struct PnPair {
  double p;   // P_n(x)
  double pm;  // P_{n-1}(x)
};

PnPair legendre_pair(std::size_t n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (std::size_t k = 2; k <= n; ++k) {
    double p = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p;
  }
  return {p1, p0};
}

}  // namespace

QuadRule gauss_legendre_rule(std::size_t n) {
  if (n < 1) throw argument_error("gauss_legendre_rule: need n >= 1");
  QuadRule r;
  r.kind = QuadKind::GaussLegendre;
  r.nodes.assign(n, 0.0);
  r.weights.assign(n, 0.0);
  std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));  // i-th largest root
    double pd = 0.0;
    bool ok = false;
    for (int it = 0; it < 100; ++it) {
      PnPair pp = legendre_pair(n, x);
      pd = n * (x * pp.p - pp.pm) / (x * x - 1.0);
      double dx = pp.p / pd;
      x -= dx;
      if (std::fabs(dx) < 1e-15) {
        PnPair pf = legendre_pair(n, x);  // polish derivative at the root
        pd = n * (x * pf.p - pf.pm) / (x * x - 1.0);
        ok = true;
        break;
      }
    }
    if (!ok) throw numerical_error("gauss_legendre_rule: newton stalled");
    double w = 2.0 / ((1.0 - x * x) * pd * pd);
    r.nodes[n - 1 - i] = x;
    r.nodes[i] = -x;
    r.weights[n - 1 - i] = w;
    r.weights[i] = w;
  }
  if (n % 2 == 1) {
    PnPair pp = legendre_pair(n, 0.0);
    double pd = n * (0.0 - pp.pm) / (0.0 - 1.0);  // P'_n(0)
    r.nodes[half] = 0.0;
    r.weights[half] = 2.0 / (pd * pd);
  }
  return r;
}

QuadRule lgl_rule(std::size_t n) {
  if (n < 2) throw argument_error("lgl_rule: need n >= 2");
  std::size_t N = n - 1;
  QuadRule r;
  r.kind = QuadKind::LGL;
  r.nodes.assign(n, 0.0);
  r.weights.assign(n, 0.0);
  double we = 2.0 / (N * (N + 1.0));
  r.nodes[0] = -1.0;
  r.nodes[N] = 1.0;
  r.weights[0] = we;
  r.weights[N] = we;
  // interior nodes are the roots of P'_N; newton from chebyshev-lobatto guesses
  for (std::size_t i = 1; 2 * i < N; ++i) {
    double x = std::cos(M_PI * i / N);  // i-th largest interior guess
    double pn = 0.0;
    bool ok = false;
    for (int it = 0; it < 100; ++it) {
      PnPair pp = legendre_pair(N, x);
      double pd = N * (x * pp.p - pp.pm) / (x * x - 1.0);
      double pdd = (2.0 * x * pd - N * (N + 1.0) * pp.p) / (1.0 - x * x);
      double dx = pd / pdd;
      x -= dx;
      if (std::fabs(dx) < 1e-15) {
        pn = legendre_pair(N, x).p;
        ok = true;
        break;
      }
    }
    if (!ok) throw numerical_error("lgl_rule: newton stalled");
    double w = 2.0 / (N * (N + 1.0) * pn * pn);
    r.nodes[N - i] = x;
    r.nodes[i] = -x;
    r.weights[N - i] = w;
    r.weights[i] = w;
  }
  if (N % 2 == 0 && N >= 2) {
    double pn = legendre_pair(N, 0.0).p;
    r.nodes[N / 2] = 0.0;
    r.weights[N / 2] = 2.0 / (N * (N + 1.0) * pn * pn);
  }
  return r;
}

double inner_product(const std::function<double(double)>& f,
                     const std::function<double(double)>& g,
                     const QuadRule& rule) {
  double s = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q)
    s += rule.weights[q] * f(rule.nodes[q]) * g(rule.nodes[q]);
  return s;
}

QuadRule map_rule(const QuadRule& rule, double a, double b) {
  if (!(a < b)) throw argument_error("map_rule: need a < b");
  QuadRule out = rule;
  double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
  for (std::size_t q = 0; q < out.size(); ++q) {
    out.nodes[q] = mid + hw * rule.nodes[q];
    out.weights[q] = hw * rule.weights[q];
  }
  return out;
}

Matrix lgl_diff_matrix(const QuadRule& rule) {
  if (rule.kind != QuadKind::LGL)
    throw argument_error("lgl_diff_matrix: rule must be lobatto");
  std::size_t n = rule.size();
  std::size_t N = n - 1;
  std::vector<double> pn(n);
  for (std::size_t j = 0; j < n; ++j) pn[j] = legendre_pair(N, rule.nodes[j]).p;
  Matrix d(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) {
      if (j == l) continue;
      d(j, l) = pn[j] / (pn[l] * (rule.nodes[j] - rule.nodes[l]));
    }
  double nd = static_cast<double>(N);
  d(0, 0) = -nd * (nd + 1.0) / 4.0;
  d(N, N) = nd * (nd + 1.0) / 4.0;
  return d;
}

}  // namespace prolate
