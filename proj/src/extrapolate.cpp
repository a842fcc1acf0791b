#include "prolate/extrapolate.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "prolate/common.hpp"
#include "prolate/eigsolve.hpp"
#include "prolate/linalg.hpp"
#include "prolate/simd.hpp"
#include "prolate/specfun.hpp"

namespace prolate {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate(const ExtrapolationProblem& p) {
  if (!p.observed) throw argument_error("observed signal is not set");
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma))
    throw argument_error("bandlimit must be positive and finite");
  if (p.n_basis == 0) throw argument_error("n_basis must be positive");
  if (p.n_quad < p.n_basis)
    throw config_error("n_quad must be at least n_basis");
  if (!(p.mu >= 0.0) || !std::isfinite(p.mu))
    throw argument_error("mu must be >= 0 and finite");
  if (p.basis != BasisTag::Bessel && p.basis != BasisTag::Sinc)
    throw config_error("extrapolation runs in the bessel or sinc basis");
  if (p.penalty == PenaltyKind::Sobolev && p.basis == BasisTag::Sinc)
    throw config_error(
        "the smoothing penalty is defined for the bessel basis only");
}

int sinc_lo(std::size_t n_basis) {
  return -static_cast<int>(n_basis / 2);
}

struct Prepared {
  QuadRule rule;
  GramMatrix gram;
  std::vector<double> xhat;
  int lo = 0;
};

Prepared prepare(const ExtrapolationProblem& p) {
  Prepared out;
  out.rule = gauss_legendre_rule(p.n_quad);
  BasisKind bk{p.basis, p.sigma};
  if (p.basis == BasisTag::Bessel) {
    out.gram = gram_bessel(p.sigma, p.n_basis, out.rule);
    out.lo = 0;
  } else {
    out.lo = sinc_lo(p.n_basis);
    out.gram = gram_sinc_range(p.sigma, out.lo, p.n_basis, out.rule);
  }
  out.xhat = project_observed(p.observed, bk, p.n_basis, out.rule);
  return out;
}

ExtrapolationResult finish(const ExtrapolationProblem& p, const Prepared& pre,
                           std::vector<double> y, double mu) {
  ExtrapolationResult res;
  res.coeffs.basis = {p.basis, p.sigma};
  res.coeffs.first_index = pre.lo;
  res.coeffs.coeffs = std::move(y);
  res.mu = mu;
  std::vector<double> gy = matvec(pre.gram.entries, res.coeffs.coeffs);
  for (std::size_t i = 0; i < gy.size(); ++i) gy[i] -= pre.xhat[i];
  res.residual_norm = norm2(gy);
  res.solution_norm = norm2(res.coeffs.coeffs);
  CoeffVector c = res.coeffs;
  res.extrapolant = [c](double t) { return eval_expansion_at(c, t); };
  return res;
}

}  // namespace

std::vector<double> project_observed(const std::function<double(double)>& fn,
                                     const BasisKind& basis,
                                     std::size_t n_basis,
                                     const QuadRule& rule) {
  if (!fn) throw argument_error("signal is not set");
  if (n_basis == 0) throw argument_error("n_basis must be positive");
  if (rule.size() == 0) throw argument_error("empty quadrature rule");
  Matrix rows;
  if (basis.tag == BasisTag::Bessel) {
    rows = bessel_rows(basis.sigma, n_basis, rule.nodes);
  } else if (basis.tag == BasisTag::Sinc) {
    rows = sinc_rows(basis.sigma, sinc_lo(n_basis), n_basis, rule.nodes);
  } else {
    throw argument_error("projection supports the bessel and sinc bases");
  }
  std::vector<double> wx(rule.size());
  for (std::size_t q = 0; q < rule.size(); ++q)
    wx[q] = rule.weights[q] * fn(rule.nodes[q]);
  std::vector<double> out(n_basis);
  for (std::size_t n = 0; n < n_basis; ++n)
    out[n] = simd::dot(rows.row(n), wx.data(), rule.size());
  return out;
}

ExtrapolationResult extrapolate(const ExtrapolationProblem& p) {
  validate(p);
  Prepared pre = prepare(p);
  std::vector<double> y;
  if (p.penalty == PenaltyKind::Standard) {
    y = tikhonov_standard(pre.gram.entries, pre.xhat, p.mu);
  } else {
    Matrix d1 = diff_matrix_bessel(1, p.sigma, p.n_basis);
    Matrix d2 = diff_matrix_bessel(2, p.sigma, p.n_basis);
    y = tikhonov_sobolev(pre.gram.entries, pre.xhat, p.mu, d1, d2);
  }
  return finish(p, pre, std::move(y), p.mu);
}

std::vector<SweepRow> mu_sweep(const ExtrapolationProblem& problem,
                               const std::vector<double>& mus, double lo,
                               double hi) {
  validate(problem);
  if (!(lo < hi)) throw argument_error("error interval must satisfy lo < hi");
  Prepared pre = prepare(problem);
  const std::size_t n = problem.n_basis;

  // error quadrature over (lo, hi)
  QuadRule err_rule = map_rule(gauss_legendre_rule(800), lo, hi);
  const std::function<double(double)>& exact =
      problem.exact ? problem.exact : problem.observed;
  std::vector<double> ex(err_rule.size());
  double den = 0.0;
  for (std::size_t q = 0; q < err_rule.size(); ++q) {
    ex[q] = exact(err_rule.nodes[q]);
    den += err_rule.weights[q] * ex[q] * ex[q];
  }
  if (!(den > 0.0))
    throw domain_error("reference signal has zero norm on the error interval");

  // factor once, reuse per mu
  EigenSystem eig;
  Matrix s0, p1, p2;
  std::vector<double> rhs0;
  if (problem.penalty == PenaltyKind::Standard) {
    eig = eig_sym_dense(pre.gram.entries);
  } else {
    s0 = matmul(pre.gram.entries, pre.gram.entries);
    Matrix d1 = diff_matrix_bessel(1, problem.sigma, n);
    Matrix d2 = diff_matrix_bessel(2, problem.sigma, n);
    p1 = ata(d1);
    p2 = ata(d2);
    rhs0 = matvec(pre.gram.entries, pre.xhat);
  }

  std::vector<SweepRow> rows;
  rows.reserve(mus.size());
  for (double mu : mus) {
    SweepRow row;
    row.mu = mu;
    try {
      std::vector<double> y;
      if (problem.penalty == PenaltyKind::Standard) {
        y = tikhonov_standard(eig, pre.xhat, mu);
      } else {
        if (!(mu >= 0.0) || !std::isfinite(mu))
          throw argument_error("mu must be >= 0 and finite");
        Matrix s = s0;
        double mu2 = mu * mu;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j)
            s(i, j) += mu2 * (p1(i, j) + p2(i, j));
          s(i, i) += mu2;
        }
        y = cholesky_solve(std::move(s), rhs0);
      }
      ExtrapolationResult res = finish(problem, pre, std::move(y), mu);
      double num = 0.0;
      for (std::size_t q = 0; q < err_rule.size(); ++q) {
        double d = ex[q] - res.extrapolant(err_rule.nodes[q]);
        num += err_rule.weights[q] * d * d;
      }
      row.e_rel = std::sqrt(num / den);
      row.residual_norm = res.residual_norm;
      row.solution_norm = res.solution_norm;
    } catch (const std::exception&) {
      row.failed = true;
      row.e_rel = std::numeric_limits<double>::quiet_NaN();
      row.residual_norm = row.e_rel;
      row.solution_norm = row.e_rel;
    }
    rows.push_back(row);
  }
  return rows;
}

double relative_error(const std::function<double(double)>& exact,
                      const std::function<double(double)>& approx, double lo,
                      double hi, const QuadRule& rule) {
  if (!exact || !approx) throw argument_error("signal is not set");
  if (!(lo < hi)) throw argument_error("error interval must satisfy lo < hi");
  if (rule.size() == 0) throw argument_error("empty quadrature rule");
  QuadRule mapped = map_rule(rule, lo, hi);
  double num = 0.0, den = 0.0;
  for (std::size_t q = 0; q < mapped.size(); ++q) {
    double e = exact(mapped.nodes[q]);
    double d = e - approx(mapped.nodes[q]);
    num += mapped.weights[q] * d * d;
    den += mapped.weights[q] * e * e;
  }
  if (!(den > 0.0))
    throw domain_error("reference signal has zero norm on the interval");
  return std::sqrt(num / den);
}

std::function<double(double)> test_signal(int which, double sigma, int nu) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw argument_error("bandlimit must be positive and finite");
  if (which < 1 || which > 3) throw argument_error("test signal index is 1..3");
  if (which == 2 && nu < 2)
    throw argument_error("signal 2 requires bump order nu >= 2");
  static const double kappa[5] = {5.0, 8.0, 8.0, 10.0, 10.0};
  static const double tau[5] = {0.0, -0.1, 0.2, -0.3, 0.4};

  if (which == 1) {
    return [sigma](double t) {
      double acc = 0.0;
      for (int j = 0; j < 5; ++j) {
        double u = t - tau[j];
        double arg = sigma / kappa[j] * std::sqrt(1.0 + kappa[j] * kappa[j] * u * u);
        acc += sinc(arg);
      }
      return acc;
    };
  }
  if (which == 2) {
    return [sigma, nu](double t) {
      double acc = 0.0;
      for (int j = 0; j < 5; ++j) {
        double z = sigma * (t - tau[j]);
        double az = std::fabs(z);
        if (nu == 2 && az < 1e-2) {
          double z2 = z * z;
          acc += sigma * (1.0 / 8.0 - z2 / 96.0 + z2 * z2 / 3072.0);
        } else if (az < 1e-8) {
          // orders above 2 vanish at the center
        } else {
          acc += sigma * cyl_bessel_jn(nu, z) / (z * z);
        }
      }
      return acc;
    };
  }
  return [sigma](double t) {
    double acc = 0.0;
    for (int j = 0; j < 5; ++j) {
      double u = t - tau[j];
      double arg =
          sigma / (2.0 * kappa[j]) * std::sqrt(1.0 + kappa[j] * kappa[j] * u * u);
      double s = sinc(arg);
      acc += s * s;
    }
    return acc;
  };
}

std::function<double(double)> sampled_signal(const std::vector<double>& ts,
                                             const std::vector<double>& xs) {
  const std::size_t n = ts.size();
  if (n != xs.size()) throw argument_error("sample arrays differ in length");
  if (n < 4) throw argument_error("need at least four samples");
  if (std::fabs(ts.front() + 1.0) > 1e-12 || std::fabs(ts.back() - 1.0) > 1e-12)
    throw argument_error("samples must cover [-1,1]");
  const double h = 2.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    if (std::fabs(ts[i] - (-1.0 + h * static_cast<double>(i))) > 1e-9 * (1.0 + h))
      throw argument_error("samples must be uniform on [-1,1]");

  // resample onto chebyshev-lobatto points by local cubics, then evaluate with
  // the barycentric formula (weights (-1)^j, halved at the ends)
  const std::size_t m = std::min<std::size_t>(n, 129);
  std::vector<double> un(m), uv(m), uw(m);
  for (std::size_t j = 0; j < m; ++j) {
    double u = std::cos(kPi * static_cast<double>(j) / static_cast<double>(m - 1));
    un[j] = u;
    uw[j] = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j + 1 == m) uw[j] *= 0.5;
    double pos = (u + 1.0) / h;
    long idx = std::lround(std::floor(pos));
    idx = std::max<long>(1, std::min<long>(idx, static_cast<long>(n) - 3));
    double acc = 0.0;
    for (long a = idx - 1; a <= idx + 2; ++a) {
      double lag = 1.0;
      for (long b = idx - 1; b <= idx + 2; ++b) {
        if (a == b) continue;
        lag *= (u - ts[static_cast<std::size_t>(b)]) /
               (ts[static_cast<std::size_t>(a)] - ts[static_cast<std::size_t>(b)]);
      }
      acc += lag * xs[static_cast<std::size_t>(a)];
    }
    uv[j] = acc;
  }

  return [un, uv, uw](double t) {
    if (!(std::fabs(t) <= 1.0))
      throw domain_error("sampled signals are defined on [-1,1]");
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < un.size(); ++j) {
      double d = t - un[j];
      if (d == 0.0) return uv[j];
      double c = uw[j] / d;
      num += c * uv[j];
      den += c;
    }
    return num / den;
  };
}

}  // namespace prolate
