#pragma once
#include <cstddef>
#include <vector>

namespace prolate {

// dense row-major matrix; rows are contiguous so the simd kernels apply to them
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  double* row(std::size_t i) { return a.data() + i * cols; }
  const double* row(std::size_t i) const { return a.data() + i * cols; }

  static Matrix identity(std::size_t n);
};

Matrix matmul(const Matrix& x, const Matrix& y);
Matrix transpose(const Matrix& x);
std::vector<double> matvec(const Matrix& x, const std::vector<double>& v);

double max_abs(const Matrix& x);
// max_ij |x_ij - x_ji|
double sym_deviation(const Matrix& x);

// rows * diag(w) * rows^T, exploiting symmetry of the result
Matrix weighted_gram(const Matrix& rows, const std::vector<double>& w);

// x^T x for a row-major x (column gram)
Matrix ata(const Matrix& x);

// solve m y = b for symmetric positive definite m (Cholesky); throws
// numerical_error if a pivot is not strictly positive
std::vector<double> cholesky_solve(Matrix m, std::vector<double> b);

double norm2(const std::vector<double>& v);

}  // namespace prolate
