#include "prolate/linalg.hpp"

#include <cmath>

#include "prolate/common.hpp"
#include "prolate/simd.hpp"

namespace prolate {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix matmul(const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw argument_error("matmul: shape mismatch");
  Matrix yt = transpose(y);
  Matrix out(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < y.cols; ++j)
      out(i, j) = simd::dot(x.row(i), yt.row(j), x.cols);
  return out;
}

Matrix transpose(const Matrix& x) {
  Matrix out(x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) out(j, i) = x(i, j);
  return out;
}

std::vector<double> matvec(const Matrix& x, const std::vector<double>& v) {
  if (x.cols != v.size()) throw argument_error("matvec: shape mismatch");
  std::vector<double> out(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    out[i] = simd::dot(x.row(i), v.data(), x.cols);
  return out;
}

double max_abs(const Matrix& x) {
  double m = 0.0;
  for (double v : x.a) m = std::max(m, std::fabs(v));
  return m;
}

double sym_deviation(const Matrix& x) {
  if (x.rows != x.cols) throw argument_error("sym_deviation: not square");
  double m = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = i + 1; j < x.cols; ++j)
      m = std::max(m, std::fabs(x(i, j) - x(j, i)));
  return m;
}

Matrix weighted_gram(const Matrix& rows, const std::vector<double>& w) {
  if (rows.cols != w.size()) throw argument_error("weighted_gram: weight size");
  Matrix scaled = rows;
  for (std::size_t i = 0; i < scaled.rows; ++i) {
    double* r = scaled.row(i);
    for (std::size_t q = 0; q < scaled.cols; ++q) r[q] *= w[q];
  }
  Matrix g(rows.rows, rows.rows);
  for (std::size_t i = 0; i < rows.rows; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double v = simd::dot(scaled.row(i), rows.row(j), rows.cols);
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

Matrix ata(const Matrix& x) {
  Matrix xt = transpose(x);
  Matrix g(x.cols, x.cols);
  for (std::size_t i = 0; i < x.cols; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double v = simd::dot(xt.row(i), xt.row(j), x.rows);
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

std::vector<double> cholesky_solve(Matrix m, std::vector<double> b) {
  if (m.rows != m.cols || m.rows != b.size())
    throw argument_error("cholesky_solve: shape mismatch");
  std::size_t n = m.rows;
  // lower-triangular factor kept in place
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j) - simd::dot(m.row(j), m.row(j), j);
    if (!(d > 0.0)) throw numerical_error("cholesky_solve: not positive definite");
    d = std::sqrt(d);
    m(j, j) = d;
    for (std::size_t i = j + 1; i < n; ++i)
      m(i, j) = (m(i, j) - simd::dot(m.row(i), m.row(j), j)) / d;
  }
  // forward then backward substitution
  for (std::size_t i = 0; i < n; ++i)
    b[i] = (b[i] - simd::dot(m.row(i), b.data(), i)) / m(i, i);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= m(k, ii) * b[k];
    b[ii] = s / m(ii, ii);
  }
  return b;
}

double norm2(const std::vector<double>& v) {
  return std::sqrt(simd::dot(v.data(), v.data(), v.size()));
}

}  // namespace prolate
