#include "prolate/pswf.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>

#include "prolate/common.hpp"
#include "prolate/eigsolve.hpp"
#include "prolate/linalg.hpp"
#include "prolate/simd.hpp"
#include "prolate/specfun.hpp"

namespace prolate {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw argument_error("bandlimit must be positive and finite");
}

// d/dz of sin(z)/z
double sincp(double z) {
  double z2 = z * z;
  if (std::fabs(z) < 1e-4) return -z / 3.0 * (1.0 - z2 / 10.0);
  return (z * std::cos(z) - std::sin(z)) / z2;
}

// value and derivative of the expansion at t = 1 for sign conventions
void boundary_value_bessel(double sigma, const std::vector<double>& beta,
                           double& val, double& deriv) {
  std::size_t n = beta.size();
  std::vector<double> j = sph_bessel_j_seq(n, sigma);
  val = 0.0;
  deriv = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double norm = std::sqrt(sigma * (2.0 * k + 1.0) / kPi);
    val += beta[k] * norm * j[k];
    double jp = (k == 0) ? -j[1] : j[k - 1] - (k + 1.0) * j[k] / sigma;
    deriv += beta[k] * norm * sigma * jp;
  }
}

void boundary_value_sinc(double sigma, const CoeffVector& c, double& val,
                         double& deriv) {
  val = 0.0;
  deriv = 0.0;
  double scale = std::sqrt(sigma / kPi);
  for (std::size_t k = 0; k < c.coeffs.size(); ++k) {
    double z = sigma - (c.first_index + static_cast<int>(k)) * kPi;
    val += c.coeffs[k] * scale * sinc(z);
    deriv += c.coeffs[k] * scale * sigma * sincp(z);
  }
}

void fix_sign(CoeffVector& c, std::size_t n, double val, double deriv) {
  double pick = (n % 2 == 0) ? val : deriv;
  if (pick == 0.0) pick = (n % 2 == 0) ? deriv : val;
  if (pick < 0.0)
    simd::scal(-1.0, c.coeffs.data(), c.coeffs.size());
}

struct Candidate {
  double lambda;
  CoeffVector coeff;
  std::size_t parity;  // 0 even, 1 odd
};

PswfSet assemble(PswfMethod method, double sigma, std::size_t n_basis,
                 std::vector<Candidate>& cands, std::size_t n_keep) {
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.lambda > b.lambda;
                   });
  if (cands.size() < n_keep)
    throw accuracy_error("fewer resolvable eigenfunctions than requested");
  PswfSet out;
  out.method = method;
  out.sigma = sigma;
  out.n_basis = n_basis;
  for (std::size_t n = 0; n < n_keep; ++n) {
    out.eigenvalues.push_back(cands[n].lambda);
    out.coeffs.push_back(std::move(cands[n].coeff));
  }
  return out;
}

}  // namespace

PswfSet pswf_bessel_ie(double sigma, std::size_t n_basis, std::size_t n_keep,
                       const QuadRule& rule) {
  check_sigma(sigma);
  if (n_keep == 0) throw argument_error("n_keep must be positive");
  if (n_keep > n_basis) throw argument_error("n_keep exceeds n_basis");
  GramMatrix g = gram_bessel(sigma, n_basis, rule);

  std::vector<Candidate> cands;
  for (std::size_t parity = 0; parity < 2; ++parity) {
    std::size_t bp = (n_basis + 1 - parity) / 2;
    if (bp == 0) continue;
    // trailing orders underflow to exactly zero rows; their eigenpairs are
    // exact zeros and drop out of the block without approximation
    std::size_t rp = 0;
    for (std::size_t k = 0; k < bp; ++k)
      if (g.entries(2 * k + parity, 2 * k + parity) != 0.0) rp = k + 1;
    if (rp == 0) continue;
    Matrix block(rp, rp);
    for (std::size_t i = 0; i < rp; ++i)
      for (std::size_t j = 0; j < rp; ++j)
        block(i, j) = g.entries(2 * i + parity, 2 * j + parity);
    EigenSystem eig = eig_sym_dense(block);
    for (std::size_t k = 0; k < rp; ++k) {
      Candidate c;
      c.lambda = eig.values[k];
      c.parity = parity;
      c.coeff.basis = {BasisTag::Bessel, sigma};
      c.coeff.parity = parity == 0 ? Parity::Even : Parity::Odd;
      c.coeff.first_index = 0;
      c.coeff.coeffs.assign(n_basis, 0.0);
      for (std::size_t i = 0; i < rp; ++i)
        c.coeff.coeffs[2 * i + parity] = eig.vectors(k, i);
      cands.push_back(std::move(c));
    }
  }
  PswfSet out = assemble(PswfMethod::BesselIE, sigma, n_basis, cands, n_keep);
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) {
    double val, deriv;
    boundary_value_bessel(sigma, out.coeffs[n].coeffs, val, deriv);
    fix_sign(out.coeffs[n], n, val, deriv);
  }
  return out;
}

PswfSet pswf_sinc_ie(double sigma, std::size_t m_max, std::size_t n_keep,
                     const QuadRule& rule, std::size_t margin) {
  check_sigma(sigma);
  if (n_keep == 0) throw argument_error("n_keep must be positive");
  std::size_t floor_m =
      static_cast<std::size_t>(std::ceil(sigma / kPi)) + margin;
  if (m_max < floor_m)
    throw argument_error("m_max must be at least ceil(sigma/pi) + margin = " +
                         std::to_string(floor_m));
  std::size_t count = 2 * m_max + 1;
  if (n_keep > count) throw argument_error("n_keep exceeds the translate count");

  auto blocks = gram_sinc_parity_split(sigma, m_max, rule);
  std::vector<Candidate> cands;
  for (std::size_t parity = 0; parity < 2; ++parity) {
    const GramMatrix& blk = parity == 0 ? blocks.first : blocks.second;
    std::size_t bp = blk.n_basis;
    if (bp == 0) continue;
    EigenSystem eig = eig_sym_dense(blk.entries);
    const double inv_rt2 = 0.70710678118654752440;
    for (std::size_t k = 0; k < bp; ++k) {
      Candidate c;
      c.lambda = eig.values[k];
      c.parity = parity;
      c.coeff.basis = {BasisTag::Sinc, sigma};
      c.coeff.parity = parity == 0 ? Parity::Even : Parity::Odd;
      c.coeff.first_index = -static_cast<int>(m_max);
      c.coeff.coeffs.assign(count, 0.0);
      if (parity == 0) {
        c.coeff.coeffs[m_max] = eig.vectors(k, 0);
        for (std::size_t i = 1; i < bp; ++i) {
          c.coeff.coeffs[m_max + i] = inv_rt2 * eig.vectors(k, i);
          c.coeff.coeffs[m_max - i] = inv_rt2 * eig.vectors(k, i);
        }
      } else {
        for (std::size_t i = 0; i < bp; ++i) {
          c.coeff.coeffs[m_max + i + 1] = inv_rt2 * eig.vectors(k, i);
          c.coeff.coeffs[m_max - i - 1] = -inv_rt2 * eig.vectors(k, i);
        }
      }
      cands.push_back(std::move(c));
    }
  }
  PswfSet out = assemble(PswfMethod::SincIE, sigma, count, cands, n_keep);
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) {
    double val, deriv;
    boundary_value_sinc(sigma, out.coeffs[n], val, deriv);
    fix_sign(out.coeffs[n], n, val, deriv);
  }
  return out;
}

PswfSet pswf_legendre_galerkin(double sigma, std::size_t n_keep,
                               std::size_t n_basis, std::size_t chain_points) {
  check_sigma(sigma);
  if (n_keep == 0) throw argument_error("n_keep must be positive");
  std::size_t floor_basis = std::max<std::size_t>(
      static_cast<std::size_t>(std::ceil(2.0 * sigma)), n_keep + 30);
  if (n_basis == 0) n_basis = floor_basis;
  if (n_basis < floor_basis)
    throw argument_error("n_basis must be at least max(2 sigma, n_keep + 30)");

  const double s2 = sigma * sigma;
  // kept functions: enough for the n=2 chain cross-check even when fewer are
  // requested
  std::size_t n_work = std::max<std::size_t>(n_keep, 3);

  std::vector<Candidate> cands;
  for (std::size_t parity = 0; parity < 2; ++parity) {
    std::size_t bp = (n_basis + 1 - parity) / 2;
    if (bp == 0) continue;
    std::vector<double> diag(bp), off(bp > 0 ? bp - 1 : 0);
    for (std::size_t i = 0; i < bp; ++i) {
      double k = static_cast<double>(2 * i + parity);
      diag[i] = k * (k + 1.0) +
                s2 * (2.0 * k * (k + 1.0) - 1.0) /
                    ((2.0 * k - 1.0) * (2.0 * k + 3.0));
      if (i + 1 < bp)
        off[i] = s2 * (k + 1.0) * (k + 2.0) /
                 ((2.0 * k + 3.0) *
                  std::sqrt((2.0 * k + 1.0) * (2.0 * k + 5.0)));
    }
    EigenSystem eig = eig_sym_tridiagonal(diag, off);
    // want ascending sturm-liouville values: take from the bottom
    std::size_t want = std::min<std::size_t>((n_work + 1 - parity) / 2, bp);
    for (std::size_t k = 0; k < want; ++k) {
      std::size_t src = bp - 1 - k;
      Candidate c;
      c.lambda = -static_cast<double>(2 * k + parity);  // placeholder order key
      c.parity = parity;
      c.coeff.basis = {BasisTag::Legendre, sigma};
      c.coeff.parity = parity == 0 ? Parity::Even : Parity::Odd;
      c.coeff.first_index = 0;
      c.coeff.coeffs.assign(n_basis, 0.0);
      for (std::size_t i = 0; i < bp; ++i)
        c.coeff.coeffs[2 * i + parity] = eig.vectors(src, i);
      cands.push_back(std::move(c));
    }
  }
  // order by function index (even/odd interleave by ascending sturm-liouville
  // value), carried in the placeholder key
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.lambda > b.lambda;
                   });

  PswfSet out;
  out.method = PswfMethod::LegendreGalerkin;
  out.sigma = sigma;
  out.n_basis = n_basis;
  for (std::size_t n = 0; n < std::min<std::size_t>(n_work, cands.size()); ++n)
    out.coeffs.push_back(std::move(cands[n].coeff));
  if (out.coeffs.size() < n_work)
    throw accuracy_error("fewer resolvable eigenfunctions than requested");

  // sign conventions: value at 1 for even orders, slope at 1 for odd orders;
  // P_k(1) = 1 and P_k'(1) = k(k+1)/2
  for (std::size_t n = 0; n < out.coeffs.size(); ++n) {
    double val = 0.0, deriv = 0.0;
    const std::vector<double>& al = out.coeffs[n].coeffs;
    for (std::size_t k = 0; k < al.size(); ++k) {
      double nk = std::sqrt(static_cast<double>(k) + 0.5);
      val += al[k] * nk;
      deriv += al[k] * nk * 0.5 * static_cast<double>(k) *
               (static_cast<double>(k) + 1.0);
    }
    fix_sign(out.coeffs[n], n, val, deriv);
  }

  out.eigenvalues = eigenvalue_chain(out, chain_points);
  out.eigenvalues.resize(n_keep <= out.eigenvalues.size() ? n_keep
                                                          : out.eigenvalues.size());
  out.coeffs.resize(out.eigenvalues.size());
  return out;
}

std::vector<double> eigenvalue_chain(const PswfSet& set,
                                     std::size_t lgl_points) {
  if (set.method != PswfMethod::LegendreGalerkin)
    throw argument_error("eigenvalue chain applies to legendre-galerkin sets");
  const double sigma = set.sigma;
  check_sigma(sigma);
  const std::size_t nf = set.coeffs.size();
  if (nf == 0) throw argument_error("empty function set");
  const std::size_t n_basis = set.n_basis;
  if (lgl_points == 0)
    lgl_points = std::max<std::size_t>(
        64, 2 * nf + 2 * static_cast<std::size_t>(std::ceil(sigma)) + 60);

  QuadRule rule = lgl_rule(lgl_points);
  Matrix d = lgl_diff_matrix(rule);
  Matrix p = pbar_rows(n_basis - 1, rule.nodes);

  Matrix coef(nf, n_basis);
  for (std::size_t f = 0; f < nf; ++f)
    std::copy(set.coeffs[f].coeffs.begin(), set.coeffs[f].coeffs.end(),
              coef.row(f));
  Matrix psi = matmul(coef, p);                 // nf x q samples
  Matrix dpsi = matmul(psi, transpose(d));      // derivative samples

  auto weighted_inner = [&](const Matrix& x, std::size_t i, const Matrix& y,
                            std::size_t j) {
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q)
      acc += rule.weights[q] * x(i, q) * y(j, q);
    return acc;
  };

  // values at t = 0 for the moment formula: P_k(0) via the raw sequence
  LegendreSeq p0 = legendre_p_seq(n_basis - 1, 0.0);
  auto psi_at_zero = [&](std::size_t f) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n_basis; ++k)
      acc += set.coeffs[f].coeffs[k] *
             std::sqrt(static_cast<double>(k) + 0.5) * p0.values[k];
    return acc;
  };

  double psi0 = psi_at_zero(0);
  if (std::fabs(psi0) < 1e-12)
    throw numerical_error("chain start value vanished at index 0");
  double nu0 = std::sqrt(2.0) * set.coeffs[0].coeffs[0] / psi0;
  std::vector<double> nu2(nf);
  nu2[0] = nu0 * nu0;
  for (std::size_t n = 1; n < nf; ++n) {
    double num = std::fabs(weighted_inner(dpsi, n - 1, psi, n));
    double den = std::fabs(weighted_inner(dpsi, n, psi, n - 1));
    if (den < 1e-300)
      throw numerical_error("chain ratio denominator vanished at index " +
                            std::to_string(n));
    nu2[n] = nu2[n - 1] * (num / den);
  }

  if (nf >= 3) {
    double psi2 = psi_at_zero(2);
    if (std::fabs(psi2) < 1e-12)
      throw numerical_error("chain cross-check value vanished at index 2");
    double direct = std::fabs(std::sqrt(2.0) * set.coeffs[2].coeffs[0] / psi2);
    double chained = std::sqrt(nu2[2]);
    if (std::fabs(direct - chained) > 1e-6 * std::fabs(direct))
      throw accuracy_error(
          "chain cross-check failed at index 2: n_basis too small");
  }

  std::vector<double> lambda(nf);
  for (std::size_t n = 0; n < nf; ++n) lambda[n] = nu2[n] * sigma / (2.0 * kPi);
  return lambda;
}

std::vector<double> eval_pswf(const PswfSet& set, std::size_t n,
                              const std::vector<double>& t) {
  if (n >= set.coeffs.size()) throw argument_error("function index out of range");
  if (set.method == PswfMethod::LegendreGalerkin) {
    for (double x : t)
      if (!(std::fabs(x) <= 1.0))
        throw domain_error(
            "legendre-galerkin functions are defined on [-1,1]; use "
            "bessel_series_extension outside");
    std::vector<double> v = eval_expansion(set.coeffs[n], t);
    double scale = std::sqrt(set.eigenvalues[n]);
    for (double& x : v) x *= scale;
    return v;
  }
  return eval_expansion(set.coeffs[n], t);
}

std::vector<double> pswf_fourier(const PswfSet& set, std::size_t n,
                                 const std::vector<double>& xi) {
  if (set.method != PswfMethod::BesselIE)
    throw argument_error("fourier profile is provided for bessel-ie sets");
  if (n >= set.coeffs.size()) throw argument_error("function index out of range");
  const double sigma = set.sigma;
  const std::vector<double>& beta = set.coeffs[n].coeffs;
  std::vector<double> out(xi.size(), 0.0);
  double scale = std::sqrt(2.0 * kPi / sigma);
  for (std::size_t q = 0; q < xi.size(); ++q) {
    if (std::fabs(xi[q]) > sigma) continue;
    LegendreSeq seq = legendre_p_seq(beta.size() - 1, xi[q] / sigma);
    double acc = 0.0;
    for (std::size_t k = n % 2; k < beta.size(); k += 2) {
      if (beta[k] == 0.0) continue;
      // i^{k-n} for even k-n is a sign: (-1)^{(k-n)/2}
      int half = (static_cast<int>(k) - static_cast<int>(n)) / 2;
      double sign = (half % 2 == 0) ? 1.0 : -1.0;
      acc += sign * beta[k] * std::sqrt(static_cast<double>(k) + 0.5) *
             seq.values[k];
    }
    out[q] = scale * acc;
  }
  return out;
}

ExtensionResult bessel_series_extension(const PswfSet& set, std::size_t n,
                                        const std::vector<double>& t) {
  if (set.method != PswfMethod::LegendreGalerkin)
    throw argument_error("series extension applies to legendre-galerkin sets");
  if (n >= set.coeffs.size()) throw argument_error("function index out of range");
  const double sigma = set.sigma;
  const std::vector<double>& al = set.coeffs[n].coeffs;
  ExtensionResult out;
  out.conditioning_warning =
      static_cast<double>(n) > 2.0 * sigma / kPi;
  out.values.resize(t.size());
  double scale = std::sqrt(2.0 * sigma / kPi);
  for (std::size_t q = 0; q < t.size(); ++q) {
    std::vector<double> j = sph_bessel_j_seq(al.size() - 1, sigma * t[q]);
    double acc = 0.0;
    for (std::size_t m = n % 2; m < al.size(); m += 2) {
      if (al[m] == 0.0) continue;
      int half = (static_cast<int>(m) - static_cast<int>(n)) / 2;
      double sign = (half % 2 == 0) ? 1.0 : -1.0;
      acc += sign * al[m] * std::sqrt(static_cast<double>(m) + 0.5) * j[m];
    }
    out.values[q] = scale * acc;
  }
  return out;
}

}  // namespace prolate
