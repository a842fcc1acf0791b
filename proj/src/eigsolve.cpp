#include "prolate/eigsolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>

#include "prolate/common.hpp"
#include "prolate/simd.hpp"

namespace prolate {

namespace {

// householder reduction to tridiagonal form with full symmetric updates so
// every inner loop runs over contiguous rows.  on return d holds the diagonal,
// e[i] couples d[i] and d[i+1], and zt rows accumulate the transpose of the
// orthogonal factor (row k of zt maps back to coordinate space).
void tridiagonalize(Matrix& a, std::vector<double>& d, std::vector<double>& e,
                    Matrix& zt) {
  const std::size_t n = a.rows;
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  std::vector<double> hs(n, 0.0);

  std::vector<double> p(n), w(n);
  for (std::size_t i = n; i-- > 2;) {
    const std::size_t l = i - 1;
    double* v = a.row(i);
    double scale = 0.0;
    for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(v[k]);
    if (scale == 0.0) {
      e[i] = v[l];
      continue;
    }
    simd::scal(1.0 / scale, v, l + 1);
    double h = simd::dot(v, v, l + 1);
    double f = v[l];
    double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
    e[i] = scale * g;
    h -= f * g;
    v[l] = f - g;

    for (std::size_t j = 0; j <= l; ++j)
      p[j] = simd::dot(a.row(j), v, l + 1) / h;
    double kk = simd::dot(v, p.data(), l + 1) / (2.0 * h);
    for (std::size_t j = 0; j <= l; ++j) w[j] = p[j] - kk * v[j];
    for (std::size_t j = 0; j <= l; ++j) {
      simd::axpy(-v[j], w.data(), a.row(j), l + 1);
      simd::axpy(-w[j], v, a.row(j), l + 1);
    }
    hs[i] = h;
  }
  if (n >= 2) e[1] = a(1, 0);

  zt = Matrix::identity(n);
  for (std::size_t i = 2; i < n; ++i) {
    if (hs[i] == 0.0) continue;
    const std::size_t l = i - 1;
    const double* u = a.row(i);
    for (std::size_t j = 0; j <= l; ++j) {
      double g = simd::dot(u, zt.row(j), l + 1) / hs[i];
      simd::axpy(-g, u, zt.row(j), l + 1);
    }
  }

  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);
  // shift couplings down: e[k] links d[k], d[k+1]
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = e[i + 1];
  if (n) e[n - 1] = 0.0;
}

// implicit-shift ql sweeps on the tridiagonal (d, e); plane rotations are
// applied to rows of zt so eigenvectors stay contiguous
void ql_implicit(std::vector<double>& d, std::vector<double>& e, Matrix& zt) {
  const std::size_t n = d.size();
  if (n <= 1) return;
  // absolute deflation floor: couplings this far below the matrix scale
  // shift eigenvalues by less than 1e-18*norm (weyl), and keeping them makes
  // blocks graded into denormals iterate without progress
  double tnorm = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    tnorm = std::max(tnorm, std::fabs(d[i]) + std::fabs(e[i]));
  const double floor_abs = 1e-18 * tnorm + 1e-300;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= floor_abs || std::fabs(e[m]) + dd == dd) break;
      }
      if (m != l) {
        if (iter++ == 50)
          throw numerical_error(
              "tridiagonal eigensolve failed to converge at index " +
              std::to_string(l));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          simd::rot(zt.row(i), zt.row(i + 1), c, s, zt.cols);
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

EigenSystem finish(std::vector<double>& d, Matrix& zt) {
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });

  EigenSystem out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    const double* src = zt.row(order[k]);
    double* dst = out.vectors.row(k);
    std::copy(src, src + n, dst);
    std::size_t imax = 0;
    double amax = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      double aj = std::fabs(dst[j]);
      if (aj > amax) {
        amax = aj;
        imax = j;
      }
    }
    if (dst[imax] < 0.0) simd::scal(-1.0, dst, n);
  }
  return out;
}

}  // namespace

EigenSystem eig_sym_tridiagonal(const std::vector<double>& diag,
                                const std::vector<double>& offdiag) {
  const std::size_t n = diag.size();
  if (n == 0) throw argument_error("empty tridiagonal matrix");
  if (offdiag.size() + 1 != n)
    throw argument_error("offdiagonal length must be diagonal length - 1");
  std::vector<double> d = diag;
  std::vector<double> e(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = offdiag[i];
  Matrix zt = Matrix::identity(n);
  ql_implicit(d, e, zt);
  return finish(d, zt);
}

EigenSystem eig_sym_dense(const Matrix& m) {
  if (m.rows != m.cols) throw argument_error("matrix must be square");
  const std::size_t n = m.rows;
  if (n == 0) throw argument_error("empty matrix");
  double scale = max_abs(m);
  if (scale > 0.0 && sym_deviation(m) > 1e-10 * scale)
    throw argument_error("matrix is not symmetric within tolerance");

  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + m(j, i));

  std::vector<double> d, e;
  Matrix zt;
  tridiagonalize(a, d, e, zt);
  ql_implicit(d, e, zt);
  return finish(d, zt);
}

std::vector<double> tikhonov_standard(const EigenSystem& eig,
                                      const std::vector<double>& rhs,
                                      double mu) {
  const std::size_t n = eig.values.size();
  if (rhs.size() != n) throw argument_error("rhs length mismatch");
  if (!(mu >= 0.0) || !std::isfinite(mu))
    throw argument_error("regularization parameter must be >= 0 and finite");
  std::vector<double> y(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double lam = eig.values[k];
    double f;
    if (mu == 0.0) {
      if (std::fabs(lam) <= 1e-300) continue;
      f = 1.0 / lam;
    } else {
      f = lam / (lam * lam + mu * mu);
    }
    double proj = simd::dot(eig.vectors.row(k), rhs.data(), n);
    simd::axpy(f * proj, eig.vectors.row(k), y.data(), n);
  }
  return y;
}

std::vector<double> tikhonov_standard(const Matrix& m,
                                      const std::vector<double>& rhs,
                                      double mu) {
  return tikhonov_standard(eig_sym_dense(m), rhs, mu);
}

std::vector<double> tikhonov_sobolev(const Matrix& m,
                                     const std::vector<double>& rhs, double mu,
                                     const Matrix& d1, const Matrix& d2) {
  const std::size_t n = m.rows;
  if (m.cols != n) throw argument_error("matrix must be square");
  if (rhs.size() != n) throw argument_error("rhs length mismatch");
  if (d1.rows != n || d1.cols != n || d2.rows != n || d2.cols != n)
    throw argument_error("penalty matrices must match the system size");
  if (!(mu >= 0.0) || !std::isfinite(mu))
    throw argument_error("regularization parameter must be >= 0 and finite");

  Matrix s = matmul(m, m);
  Matrix p1 = ata(d1);
  Matrix p2 = ata(d2);
  const double mu2 = mu * mu;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      s(i, j) += mu2 * (p1(i, j) + p2(i, j));
    s(i, i) += mu2;
  }
  return cholesky_solve(s, matvec(m, rhs));
}

}  // namespace prolate
