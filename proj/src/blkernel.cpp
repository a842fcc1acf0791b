#include "prolate/blkernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include "prolate/common.hpp"
#include "prolate/eigsolve.hpp"
#include "prolate/simd.hpp"
#include "prolate/specfun.hpp"

namespace prolate {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_kernel(const KernelSpec& k) {
  if (!(k.sigma > 0.0) || !std::isfinite(k.sigma))
    throw argument_error("kernel band edge must be positive and finite");
  if (!k.time_fn || !k.freq_fn) throw argument_error("kernel functions not set");
  double mx = 0.0;
  for (int i = 0; i <= 10; ++i) {
    double u = 0.1 * i * k.sigma;
    mx = std::max({mx, std::fabs(k.freq_fn(u)), std::fabs(k.freq_fn(-u))});
  }
  for (int i = 1; i <= 9; ++i) {
    double u = 0.1 * i * k.sigma;
    if (std::fabs(k.freq_fn(u) - k.freq_fn(-u)) > 1e-10 * (1.0 + mx))
      throw argument_error("kernel transform must be even");
  }
}

bool freq_nonnegative(const KernelSpec& k) {
  double mx = 1.0;
  for (int i = 0; i <= 40; ++i)
    mx = std::max(mx, std::fabs(k.freq_fn(0.025 * i * k.sigma)));
  for (int i = 0; i <= 40; ++i)
    if (k.freq_fn(0.025 * i * k.sigma) < -1e-12 * mx) return false;
  return true;
}

// signed same-parity fill: out(m,n) = (-1)^((m-n)/2) raw(m,n), zero otherwise
Matrix apply_phases(const Matrix& raw) {
  Matrix out(raw.rows, raw.cols);
  for (std::size_t m = 0; m < raw.rows; ++m)
    for (std::size_t n = m % 2; n < raw.cols; n += 2) {
      int half = (static_cast<int>(m) - static_cast<int>(n)) / 2;
      out(m, n) = (half % 2 == 0) ? raw(m, n) : -raw(m, n);
    }
  return out;
}

Matrix raw_moment_matrix(const KernelSpec& k, std::size_t n_basis,
                         const QuadRule& rule) {
  Matrix rows = pbar_rows(n_basis - 1, rule.nodes);
  std::vector<double> w(rule.size());
  for (std::size_t q = 0; q < rule.size(); ++q)
    w[q] = rule.weights[q] * k.freq_fn(k.sigma * rule.nodes[q]);
  return weighted_gram(rows, w);
}

// half-interval variant for transforms with a kink at zero; same-parity
// entries only (the integrand is even there), doubled weights
Matrix raw_moment_matrix_half(const KernelSpec& k, std::size_t n_basis,
                              const QuadRule& half_rule) {
  Matrix rows = pbar_rows(n_basis - 1, half_rule.nodes);
  std::vector<double> w(half_rule.size());
  for (std::size_t q = 0; q < half_rule.size(); ++q)
    w[q] = 2.0 * half_rule.weights[q] * k.freq_fn(k.sigma * half_rule.nodes[q]);
  return weighted_gram(rows, w);
}

double max_row_deviation(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  std::size_t n = a.rows;
  for (std::size_t r : {std::size_t{0}, n / 2, n - 1})
    for (std::size_t c = 0; c < n; ++c)
      worst = std::max(worst, std::fabs(a(r, c) - b(r, c)));
  return worst;
}

struct Candidate {
  double lambda;
  std::size_t parity;
  std::vector<double> beta;       // block coordinates
  std::vector<double> recovered;  // block coordinates
};

// symmetrized solve of lambda beta = G Kblk beta for one (sub)block
std::vector<Candidate> block_eigen(const Matrix& g, const Matrix& kblk,
                                   std::size_t parity) {
  const std::size_t bp = g.rows;
  // exact-zero trailing gram rows contribute exact zero modes; drop them
  std::size_t rp = 0;
  for (std::size_t i = 0; i < bp; ++i)
    if (g(i, i) != 0.0) rp = i + 1;
  std::vector<Candidate> out;
  if (rp == 0) return out;

  Matrix gr(rp, rp), kr(rp, rp);
  for (std::size_t i = 0; i < rp; ++i)
    for (std::size_t j = 0; j < rp; ++j) {
      gr(i, j) = g(i, j);
      kr(i, j) = kblk(i, j);
    }
  EigenSystem eg = eig_sym_dense(gr);
  std::vector<double> s(rp);
  for (std::size_t i = 0; i < rp; ++i)
    s[i] = std::sqrt(std::max(eg.values[i], 0.0));

  Matrix u = matmul(eg.vectors, kr);
  Matrix m = matmul(u, transpose(eg.vectors));
  for (std::size_t i = 0; i < rp; ++i)
    for (std::size_t j = 0; j < rp; ++j) m(i, j) *= s[i] * s[j];
  for (std::size_t i = 0; i < rp; ++i)
    for (std::size_t j = i + 1; j < rp; ++j) {
      double v = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = v;
      m(j, i) = v;
    }
  EigenSystem em = eig_sym_dense(m);

  for (std::size_t kk = 0; kk < rp; ++kk) {
    Candidate c;
    c.lambda = em.values[kk];
    c.parity = parity;
    c.beta.assign(bp, 0.0);
    std::vector<double> tmp(rp);
    for (std::size_t i = 0; i < rp; ++i) tmp[i] = s[i] * em.vectors(kk, i);
    for (std::size_t i = 0; i < rp; ++i)
      simd::axpy(tmp[i], eg.vectors.row(i), c.beta.data(), rp);
    // recovered expansion: full-block kernel columns against the solved part
    c.recovered.assign(bp, 0.0);
    for (std::size_t r = 0; r < bp; ++r)
      c.recovered[r] = simd::dot(kblk.row(r), c.beta.data(), rp);
    double nrm = norm2(c.recovered);
    if (nrm > 0.0) {
      simd::scal(1.0 / nrm, c.recovered.data(), bp);
      simd::scal(1.0 / nrm, c.beta.data(), bp);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

Matrix kernel_matrix_bessel(const KernelSpec& k, std::size_t n_basis,
                            const QuadRule& rule) {
  check_kernel(k);
  if (n_basis == 0) throw argument_error("n_basis must be positive");
  if (rule.size() == 0) throw argument_error("empty quadrature rule");
  return apply_phases(raw_moment_matrix(k, n_basis, rule));
}

Matrix kernel_matrix_bessel(const KernelSpec& k, std::size_t n_basis) {
  check_kernel(k);
  if (n_basis == 0) throw argument_error("n_basis must be positive");
  QuadRule rule = gauss_legendre_rule(4 * n_basis);
  Matrix raw = raw_moment_matrix(k, n_basis, rule);
  Matrix fine = raw_moment_matrix(k, n_basis, gauss_legendre_rule(8 * n_basis));
  if (max_row_deviation(raw, fine) <= 1e-10) return apply_phases(raw);

  // transform likely non-smooth at zero: integrate each half interval
  QuadRule half = map_rule(gauss_legendre_rule(2 * n_basis), 0.0, 1.0);
  Matrix raw2 = raw_moment_matrix_half(k, n_basis, half);
  QuadRule half_fine = map_rule(gauss_legendre_rule(4 * n_basis), 0.0, 1.0);
  Matrix fine2 = raw_moment_matrix_half(k, n_basis, half_fine);
  if (max_row_deviation(raw2, fine2) > 1e-10)
    throw accuracy_error(
        "kernel moment matrix did not converge under rule refinement");
  return apply_phases(raw2);
}

Matrix kernel_matrix_sinc(const KernelSpec& k, int lo, std::size_t count) {
  check_kernel(k);
  if (count == 0) throw argument_error("count must be positive");
  std::vector<double> diag(count);
  double h = kPi / k.sigma;
  for (std::size_t d = 0; d < count; ++d)
    diag[d] = h * k.time_fn(static_cast<double>(d) * h);
  Matrix out(count, count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j)
      out(i, j) = diag[i >= j ? i - j : j - i];
  (void)lo;
  return out;
}

KernelEigenSet kernel_eigen(const KernelSpec& k, BasisTag basis,
                            std::size_t n_basis, std::size_t n_keep,
                            const QuadRule& rule) {
  check_kernel(k);
  if (n_basis == 0) throw argument_error("n_basis must be positive");
  if (n_keep == 0) throw argument_error("n_keep must be positive");
  const bool have_rule = rule.size() > 0;
  const bool psd = freq_nonnegative(k);

  KernelEigenSet out;
  out.kernel_name = k.name;
  out.sigma = k.sigma;
  out.basis = basis;
  out.n_basis = n_basis;

  std::vector<Candidate> cands;
  int lo = 0;
  if (basis == BasisTag::Bessel) {
    QuadRule grule = have_rule ? rule : gauss_legendre_rule(4 * n_basis);
    GramMatrix g = gram_bessel(k.sigma, n_basis, grule);
    Matrix km = have_rule ? kernel_matrix_bessel(k, n_basis, rule)
                          : kernel_matrix_bessel(k, n_basis);
    for (std::size_t parity = 0; parity < 2; ++parity) {
      std::size_t bp = (n_basis + 1 - parity) / 2;
      if (bp == 0) continue;
      Matrix gb(bp, bp), kb(bp, bp);
      for (std::size_t i = 0; i < bp; ++i)
        for (std::size_t j = 0; j < bp; ++j) {
          gb(i, j) = g.entries(2 * i + parity, 2 * j + parity);
          kb(i, j) = km(2 * i + parity, 2 * j + parity);
        }
      std::vector<Candidate> part = block_eigen(gb, kb, parity);
      for (Candidate& c : part) cands.push_back(std::move(c));
    }
  } else if (basis == BasisTag::Sinc) {
    lo = -static_cast<int>(n_basis / 2);
    QuadRule grule = have_rule ? rule : gauss_legendre_rule(4 * n_basis);
    GramMatrix g = gram_sinc_range(k.sigma, lo, n_basis, grule);
    Matrix km = kernel_matrix_sinc(k, lo, n_basis);
    std::vector<Candidate> part = block_eigen(g.entries, km, 2);
    for (Candidate& c : part) cands.push_back(std::move(c));
  } else {
    throw argument_error("kernel eigenproblem supports bessel or sinc bases");
  }

  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.lambda > b.lambda;
                   });
  if (psd && !cands.empty() && cands.back().lambda < -1e-10)
    throw accuracy_error(
        "kernel transform is nonnegative but a negative eigenvalue appeared");

  std::size_t keep = std::min(n_keep, cands.size());
  BasisKind bk{basis == BasisTag::Bessel ? BasisTag::Bessel : BasisTag::Sinc,
               k.sigma};
  for (std::size_t n = 0; n < keep; ++n) {
    Candidate& c = cands[n];
    out.eigenvalues.push_back(c.lambda);
    CoeffVector beta, rec;
    beta.basis = bk;
    rec.basis = bk;
    if (basis == BasisTag::Bessel) {
      beta.coeffs.assign(n_basis, 0.0);
      rec.coeffs.assign(n_basis, 0.0);
      for (std::size_t i = 0; i < c.beta.size(); ++i) {
        beta.coeffs[2 * i + c.parity] = c.beta[i];
        rec.coeffs[2 * i + c.parity] = c.recovered[i];
      }
      beta.parity = rec.parity = c.parity == 0 ? Parity::Even : Parity::Odd;
      out.parities.push_back(beta.parity);
    } else {
      beta.coeffs = c.beta;
      rec.coeffs = c.recovered;
      beta.first_index = rec.first_index = lo;
      beta.parity = rec.parity = Parity::None;
      out.parities.push_back(Parity::None);
    }
    out.coeffs.push_back(std::move(beta));
    out.recovered.push_back(std::move(rec));
  }
  return out;
}

std::vector<double> apply_forward(const KernelSpec& k,
                                  const std::function<double(double)>& y,
                                  const std::vector<double>& t,
                                  const QuadRule& rule) {
  check_kernel(k);
  if (!y) throw argument_error("signal is not set");
  if (rule.size() == 0) throw argument_error("empty quadrature rule");
  std::vector<double> ys(rule.size());
  for (std::size_t q = 0; q < rule.size(); ++q)
    ys[q] = rule.weights[q] * y(rule.nodes[q]);
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q)
      acc += ys[q] * k.time_fn(t[i] - rule.nodes[q]);
    out[i] = acc;
  }
  return out;
}

InvertResult invert(const KernelSpec& k,
                    const std::function<double(double)>& x, BasisTag basis,
                    std::size_t n_basis, const InvertConfig& config,
                    const QuadRule& rule) {
  check_kernel(k);
  if (!x) throw argument_error("signal is not set");
  if (n_basis == 0) throw argument_error("n_basis must be positive");
  if (rule.size() == 0) throw argument_error("empty quadrature rule");
  if (!(config.mu >= 0.0) || !std::isfinite(config.mu))
    throw argument_error("mu must be >= 0 and finite");
  if (basis != BasisTag::Bessel && basis != BasisTag::Sinc)
    throw argument_error("inversion supports bessel or sinc bases");
  if (config.penalty == PenaltyKind::Sobolev && basis == BasisTag::Sinc)
    throw config_error(
        "the smoothing penalty is defined for the bessel basis only");

  int lo = 0;
  Matrix g, km;
  if (basis == BasisTag::Bessel) {
    g = gram_bessel(k.sigma, n_basis, rule).entries;
    km = kernel_matrix_bessel(k, n_basis);
  } else {
    lo = -static_cast<int>(n_basis / 2);
    g = gram_sinc_range(k.sigma, lo, n_basis, rule).entries;
    km = kernel_matrix_sinc(k, lo, n_basis);
  }
  Matrix m = matmul(g, matmul(km, g));
  for (std::size_t i = 0; i < n_basis; ++i)
    for (std::size_t j = i + 1; j < n_basis; ++j) {
      double v = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = v;
      m(j, i) = v;
    }

  BasisKind bk{basis, k.sigma};
  std::vector<double> xhat = project_observed(x, bk, n_basis, rule);
  std::vector<double> y;
  if (config.penalty == PenaltyKind::Standard) {
    y = tikhonov_standard(m, xhat, config.mu);
  } else {
    Matrix d1 = diff_matrix_bessel(1, k.sigma, n_basis);
    Matrix d2 = diff_matrix_bessel(2, k.sigma, n_basis);
    y = tikhonov_sobolev(m, xhat, config.mu, d1, d2);
  }

  InvertResult res;
  res.ytilde.basis = bk;
  res.ytilde.first_index = lo;
  res.ytilde.coeffs = std::move(y);
  std::vector<double> r = matvec(m, res.ytilde.coeffs);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= xhat[i];
  res.residual_norm = norm2(r);
  res.solution_norm = norm2(res.ytilde.coeffs);
  CoeffVector c = res.ytilde;
  res.evaluate = [c](double t) {
    if (!(std::fabs(t) <= 1.0))
      throw domain_error("the recovered signal is reported on [-1,1]");
    return eval_expansion_at(c, t);
  };
  return res;
}

KernelSpec builtin_kernel(const std::string& name, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw argument_error("kernel band edge must be positive and finite");
  KernelSpec k;
  k.sigma = sigma;
  if (name == "K1" || name == "k1") {
    k.name = "K1";
    k.time_fn = [sigma](double t) {
      double s = sinc(0.5 * sigma * t);
      return sigma / (2.0 * kPi) * s * s;
    };
    k.freq_fn = [sigma](double xi) {
      double u = std::fabs(xi) / sigma;
      return u <= 1.0 ? 1.0 - u : 0.0;
    };
    return k;
  }
  if (name == "K2" || name == "k2") {
    k.name = "K2";
    k.time_fn = [sigma](double t) {
      double z = sigma * t;
      double g;
      if (std::fabs(z) < 0.5) {
        // (sin z / z - cos z) / z^2 = sum_j (-1)^j 2(j+1) z^(2j) / (2j+3)!
        // direct evaluation cancels to O(eps/z^2), so use the series while
        // it converges at full precision
        double z2 = z * z;
        g = 1.0 / 3.0 +
            z2 * (-1.0 / 30.0 +
                  z2 * (1.0 / 840.0 +
                        z2 * (-1.0 / 45360.0 +
                              z2 * (1.0 / 3991680.0 +
                                    z2 * (-1.0 / 518918400.0 +
                                          z2 * (1.0 / 93405312000.0 -
                                                z2 / 22230464256000.0))))));
      } else {
        g = (std::sin(z) / z - std::cos(z)) / (z * z);
      }
      return 2.0 * sigma / kPi * g;
    };
    k.freq_fn = [sigma](double xi) {
      double u = xi / sigma;
      return std::fabs(u) <= 1.0 ? 1.0 - u * u : 0.0;
    };
    return k;
  }
  throw argument_error("unknown kernel name: " + name);
}

SignalPair test_signal_pair(const std::string& name, int nu) {
  if (nu < 1) throw argument_error("oscillation count nu must be >= 1");
  SignalPair p;
  const double dnu = static_cast<double>(nu);
  if (name == "pair1") {
    p.sigma = dnu * kPi;
    p.y = [dnu](double t) { return std::sin(dnu * kPi * t); };
    // the periodic shift sin(nu pi t) = (-1)^nu sin(nu pi (t-1)) turns the
    // removable endpoint singularity into an explicit sinc factor
    double sgn = (nu % 2 == 0) ? 1.0 : -1.0;
    p.x = [dnu, sgn](double t) {
      double u = std::fabs(t);
      double v = -2.0 / kPi * sgn * sinc(dnu * kPi * (1.0 - u)) / (1.0 + u);
      return t >= 0.0 ? v : -v;
    };
    return p;
  }
  if (name == "pair2") {
    p.sigma = 2.0 * dnu * kPi;
    p.y = [dnu](double t) {
      double s = std::sin(dnu * kPi * t);
      return s * s;
    };
    p.x = [dnu](double t) {
      return (sine_integral(2.0 * dnu * kPi * (1.0 - t)) +
              sine_integral(2.0 * dnu * kPi * (1.0 + t))) /
             (2.0 * kPi);
    };
    return p;
  }
  throw argument_error("unknown signal pair: " + name);
}

}  // namespace prolate
