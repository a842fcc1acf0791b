#include "prolate/basis.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "prolate/common.hpp"
#include "prolate/simd.hpp"
#include "prolate/specfun.hpp"

namespace prolate {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw argument_error("bandlimit must be positive and finite");
}

double bessel_norm(double sigma, std::size_t n) {
  return std::sqrt(sigma * (2.0 * static_cast<double>(n) + 1.0) / kPi);
}

double sinc_translate(double sigma, int n, double t) {
  return std::sqrt(sigma / kPi) * sinc(sigma * t - static_cast<double>(n) * kPi);
}

// doubled-resolution rule of the same family, for gram self-checks
QuadRule doubled_rule(const QuadRule& rule) {
  std::size_t m = 2 * rule.size();
  return rule.kind == QuadKind::GaussLegendre ? gauss_legendre_rule(m)
                                              : lgl_rule(m);
}

// recompute selected gram rows on a doubled rule and compare
template <typename RowsFn>
void self_check_rows(const Matrix& g, const QuadRule& rule, RowsFn rows_fn,
                     const char* what) {
  std::size_t n = g.rows;
  if (n == 0) return;
  std::vector<std::size_t> picks = {0, n / 2, n - 1};
  picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
  QuadRule fine = doubled_rule(rule);
  Matrix rows = rows_fn(fine.nodes);
  std::vector<double> wr(fine.size());
  double worst = 0.0;
  for (std::size_t r : picks) {
    for (std::size_t q = 0; q < fine.size(); ++q)
      wr[q] = fine.weights[q] * rows(r, q);
    for (std::size_t c = 0; c < n; ++c) {
      double ref = simd::dot(wr.data(), rows.row(c), fine.size());
      worst = std::max(worst, std::fabs(ref - g(r, c)));
    }
  }
  if (worst > 1e-10)
    throw accuracy_error(std::string("gram self-check failed for ") + what +
                         ": rule resolution insufficient (deviation " +
                         std::to_string(worst) + ")");
}

}  // namespace

Matrix bessel_rows(double sigma, std::size_t n_basis,
                   const std::vector<double>& t) {
  Matrix out(n_basis, t.size());
  if (n_basis == 0) return out;
  std::vector<double> norms(n_basis);
  for (std::size_t n = 0; n < n_basis; ++n) norms[n] = bessel_norm(sigma, n);
  for (std::size_t q = 0; q < t.size(); ++q) {
    std::vector<double> seq = sph_bessel_j_seq(n_basis - 1, sigma * t[q]);
    for (std::size_t n = 0; n < n_basis; ++n) out(n, q) = norms[n] * seq[n];
  }
  return out;
}

Matrix sinc_rows(double sigma, int lo, std::size_t count,
                 const std::vector<double>& t) {
  Matrix out(count, t.size());
  for (std::size_t q = 0; q < t.size(); ++q)
    for (std::size_t k = 0; k < count; ++k)
      out(k, q) = sinc_translate(sigma, lo + static_cast<int>(k), t[q]);
  return out;
}

Matrix pbar_rows(std::size_t n_max, const std::vector<double>& x) {
  Matrix out(n_max + 1, x.size());
  for (std::size_t q = 0; q < x.size(); ++q) {
    LegendreSeq seq = legendre_p_seq(n_max, x[q]);
    for (std::size_t n = 0; n <= n_max; ++n)
      out(n, q) = std::sqrt(static_cast<double>(n) + 0.5) * seq.values[n];
  }
  return out;
}

double eval_basis(const BasisKind& basis, int n, double t) {
  check_sigma(basis.sigma);
  switch (basis.tag) {
    case BasisTag::Bessel: {
      if (n < 0) throw argument_error("bessel basis index must be >= 0");
      std::vector<double> seq =
          sph_bessel_j_seq(static_cast<std::size_t>(n), basis.sigma * t);
      return bessel_norm(basis.sigma, static_cast<std::size_t>(n)) *
             seq[static_cast<std::size_t>(n)];
    }
    case BasisTag::Sinc:
      return sinc_translate(basis.sigma, n, t);
    case BasisTag::SincParitySplit:
      throw argument_error("parity-split members need a parity tag; evaluate via eval_expansion");
    case BasisTag::Legendre: {
      if (n < 0) throw argument_error("legendre basis index must be >= 0");
      if (!(std::fabs(t) <= 1.0))
        throw domain_error("legendre basis restricted to [-1,1]");
      LegendreSeq seq = legendre_p_seq(static_cast<std::size_t>(n), t);
      return std::sqrt(n + 0.5) * seq.values[static_cast<std::size_t>(n)];
    }
  }
  throw argument_error("unknown basis tag");
}

double eval_expansion_at(const CoeffVector& c, double t) {
  const double sigma = c.basis.sigma;
  check_sigma(sigma);
  const std::size_t n = c.coeffs.size();
  if (n == 0) return 0.0;
  switch (c.basis.tag) {
    case BasisTag::Bessel: {
      std::vector<double> seq = sph_bessel_j_seq(n - 1, sigma * t);
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += c.coeffs[k] * bessel_norm(sigma, k) * seq[k];
      return acc;
    }
    case BasisTag::Sinc: {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += c.coeffs[k] *
               sinc_translate(sigma, c.first_index + static_cast<int>(k), t);
      return acc;
    }
    case BasisTag::SincParitySplit: {
      // even: coeff k pairs with (psi_k + psi_-k)/sqrt(2), k=0 unpaired;
      // odd: coeff k pairs with (psi_{k+1} - psi_{-(k+1)})/sqrt(2)
      double acc = 0.0;
      const double inv_rt2 = 0.70710678118654752440;
      if (c.parity == Parity::Even) {
        acc += c.coeffs[0] * sinc_translate(sigma, 0, t);
        for (std::size_t k = 1; k < n; ++k)
          acc += c.coeffs[k] * inv_rt2 *
                 (sinc_translate(sigma, static_cast<int>(k), t) +
                  sinc_translate(sigma, -static_cast<int>(k), t));
      } else if (c.parity == Parity::Odd) {
        for (std::size_t k = 0; k < n; ++k)
          acc += c.coeffs[k] * inv_rt2 *
                 (sinc_translate(sigma, static_cast<int>(k) + 1, t) -
                  sinc_translate(sigma, -(static_cast<int>(k) + 1), t));
      } else {
        throw argument_error("parity-split coefficients need Even or Odd parity");
      }
      return acc;
    }
    case BasisTag::Legendre: {
      if (!(std::fabs(t) <= 1.0))
        throw domain_error("legendre expansion restricted to [-1,1]");
      LegendreSeq seq = legendre_p_seq(n - 1, t);
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += c.coeffs[k] * std::sqrt(static_cast<double>(k) + 0.5) *
               seq.values[k];
      return acc;
    }
  }
  throw argument_error("unknown basis tag");
}

std::vector<double> eval_expansion(const CoeffVector& c,
                                   const std::vector<double>& t) {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = eval_expansion_at(c, t[i]);
  return out;
}

GramMatrix gram_bessel(double sigma, std::size_t n_basis,
                       const QuadRule& rule) {
  check_sigma(sigma);
  if (n_basis == 0) throw argument_error("n_basis must be positive");
  if (n_basis < truncation_order(sigma, 1e-14))
    throw argument_error("n_basis below the truncation order for this bandlimit");
  if (rule.size() == 0) throw argument_error("empty quadrature rule");

  // parity folding: integrand j'bar_m j'bar_n is even for same parity and the
  // cross blocks vanish identically, so only nonnegative nodes are evaluated
  std::vector<double> pos, wpos;
  double w0 = 0.0;
  bool has_center = false;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    if (rule.nodes[q] > 0.0) {
      pos.push_back(rule.nodes[q]);
      wpos.push_back(2.0 * rule.weights[q]);
    } else if (rule.nodes[q] == 0.0) {
      has_center = true;
      w0 = rule.weights[q];
    }
  }
  Matrix rows = bessel_rows(sigma, n_basis, pos);

  const std::size_t ne = (n_basis + 1) / 2;  // even orders 0,2,...
  const std::size_t no = n_basis / 2;        // odd orders 1,3,...
  const std::size_t pq = pos.size();
  Matrix be(ne, pq + (has_center ? 1 : 0));
  Matrix bo(no, pq);
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t q = 0; q < pq; ++q) be(i, q) = rows(2 * i, q);
  for (std::size_t i = 0; i < no; ++i)
    for (std::size_t q = 0; q < pq; ++q) bo(i, q) = rows(2 * i + 1, q);
  std::vector<double> we = wpos;
  if (has_center) {
    // only even orders are nonzero at t=0; j_0(0)=1 and j_n(0)=0 otherwise
    for (std::size_t i = 0; i < ne; ++i) be(i, pq) = 0.0;
    be(0, pq) = bessel_norm(sigma, 0);
    we.push_back(w0);
  }
  Matrix ge = weighted_gram(be, we);
  Matrix go = weighted_gram(bo, wpos);

  GramMatrix out;
  out.basis = {BasisTag::Bessel, sigma};
  out.n_basis = n_basis;
  out.entries = Matrix(n_basis, n_basis);
  for (std::size_t i = 0; i < ne; ++i)
    for (std::size_t j = 0; j < ne; ++j) out.entries(2 * i, 2 * j) = ge(i, j);
  for (std::size_t i = 0; i < no; ++i)
    for (std::size_t j = 0; j < no; ++j)
      out.entries(2 * i + 1, 2 * j + 1) = go(i, j);

  self_check_rows(out.entries, rule,
                  [&](const std::vector<double>& t) {
                    return bessel_rows(sigma, n_basis, t);
                  },
                  "bessel basis");
  return out;
}

GramMatrix gram_sinc_range(double sigma, int lo, std::size_t count,
                           const QuadRule& rule) {
  check_sigma(sigma);
  if (count == 0) throw argument_error("count must be positive");
  if (rule.size() == 0) throw argument_error("empty quadrature rule");
  Matrix rows = sinc_rows(sigma, lo, count, rule.nodes);
  GramMatrix out;
  out.basis = {BasisTag::Sinc, sigma};
  out.n_basis = count;
  out.entries = weighted_gram(rows, rule.weights);
  self_check_rows(out.entries, rule,
                  [&](const std::vector<double>& t) {
                    return sinc_rows(sigma, lo, count, t);
                  },
                  "sinc translates");
  return out;
}

GramMatrix gram_sinc(double sigma, std::size_t m_max, const QuadRule& rule) {
  GramMatrix out = gram_sinc_range(sigma, -static_cast<int>(m_max),
                                   2 * m_max + 1, rule);
  return out;
}

std::pair<GramMatrix, GramMatrix> gram_sinc_parity_split(double sigma,
                                                         std::size_t m_max,
                                                         const QuadRule& rule) {
  check_sigma(sigma);
  if (rule.size() == 0) throw argument_error("empty quadrature rule");

  std::vector<double> pos, wpos;
  double w0 = 0.0;
  bool has_center = false;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    if (rule.nodes[q] > 0.0) {
      pos.push_back(rule.nodes[q]);
      wpos.push_back(2.0 * rule.weights[q]);
    } else if (rule.nodes[q] == 0.0) {
      has_center = true;
      w0 = rule.weights[q];
    }
  }
  const std::size_t pq = pos.size();
  const double inv_rt2 = 0.70710678118654752440;

  auto plus_rows = [&](const std::vector<double>& t) {
    Matrix m(m_max + 1, t.size());
    for (std::size_t q = 0; q < t.size(); ++q) {
      m(0, q) = sinc_translate(sigma, 0, t[q]);
      for (std::size_t k = 1; k <= m_max; ++k)
        m(k, q) = inv_rt2 * (sinc_translate(sigma, static_cast<int>(k), t[q]) +
                             sinc_translate(sigma, -static_cast<int>(k), t[q]));
    }
    return m;
  };
  auto minus_rows = [&](const std::vector<double>& t) {
    Matrix m(m_max, t.size());
    for (std::size_t q = 0; q < t.size(); ++q)
      for (std::size_t k = 0; k < m_max; ++k)
        m(k, q) =
            inv_rt2 * (sinc_translate(sigma, static_cast<int>(k) + 1, t[q]) -
                       sinc_translate(sigma, -(static_cast<int>(k) + 1), t[q]));
    return m;
  };

  Matrix bp = plus_rows(pos);
  std::vector<double> we = wpos;
  if (has_center) {
    Matrix bc(m_max + 1, pq + 1);
    for (std::size_t k = 0; k <= m_max; ++k) {
      for (std::size_t q = 0; q < pq; ++q) bc(k, q) = bp(k, q);
      double v0 = sinc_translate(sigma, 0, 0.0);
      bc(k, pq) = (k == 0) ? v0
                           : inv_rt2 * (sinc_translate(sigma, static_cast<int>(k), 0.0) +
                                        sinc_translate(sigma, -static_cast<int>(k), 0.0));
    }
    bp = std::move(bc);
    we.push_back(w0);
  }
  Matrix bm = minus_rows(pos);

  GramMatrix even, odd;
  even.basis = {BasisTag::SincParitySplit, sigma};
  even.n_basis = m_max + 1;
  even.entries = weighted_gram(bp, we);
  odd.basis = {BasisTag::SincParitySplit, sigma};
  odd.n_basis = m_max;
  odd.entries = weighted_gram(bm, wpos);

  self_check_rows(even.entries, rule, plus_rows, "even sinc combinations");
  if (m_max > 0)
    self_check_rows(odd.entries, rule, minus_rows, "odd sinc combinations");
  return {std::move(even), std::move(odd)};
}

Matrix diff_matrix_bessel(int order, double sigma, std::size_t n_basis) {
  check_sigma(sigma);
  if (order != 1 && order != 2)
    throw argument_error("derivative order must be 1 or 2");
  if (n_basis == 0) throw argument_error("n_basis must be positive");
  Matrix d(n_basis, n_basis);
  for (std::size_t m = 0; m + 1 < n_basis; ++m) {
    double dm = static_cast<double>(m);
    double c = sigma * (dm + 1.0) / std::sqrt((2.0 * dm + 1.0) * (2.0 * dm + 3.0));
    d(m, m + 1) = c;
    d(m + 1, m) = -c;
  }
  if (order == 2) return matmul(d, d);
  return d;
}

std::size_t truncation_order(double sigma, double tol) {
  check_sigma(sigma);
  if (!(tol > 0.0 && tol < 1.0))
    throw argument_error("tolerance must lie in (0,1)");
  const double e = 2.71828182845904523536;
  std::size_t n = static_cast<std::size_t>(std::ceil(e * sigma / 2.0)) + 8;
  const double log_tol = std::log(tol);
  const double log_pref = std::log(sigma * e * e / (4.0 * kPi * kPi));
  for (; n < 2000000; ++n) {
    double ln = static_cast<double>(n);
    double log_bound =
        log_pref + 2.0 * ln * std::log(e * sigma / (2.0 * ln + 2.0));
    if (log_bound < log_tol) return n;
  }
  throw argument_error("no truncation order below iteration cap");
}

}  // namespace prolate
