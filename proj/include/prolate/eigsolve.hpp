#pragma once
#include <cstddef>
#include <vector>

#include "prolate/linalg.hpp"

namespace prolate {

// symmetric eigensolution.  values sorted descending (ties keep original
// order); vectors stored as rows, unit length, sign fixed so the largest
// magnitude component (lowest index on ties) is positive.
struct EigenSystem {
  std::vector<double> values;
  Matrix vectors;  // row k is the eigenvector for values[k]
};

EigenSystem eig_sym_dense(const Matrix& m);
EigenSystem eig_sym_tridiagonal(const std::vector<double>& diag,
                                const std::vector<double>& offdiag);

// spectral-filter solve of m y = rhs with factor lambda/(lambda^2 + mu^2);
// mu = 0 degrades to a pseudoinverse with cutoff 1e-300 on |lambda|
std::vector<double> tikhonov_standard(const Matrix& m,
                                      const std::vector<double>& rhs,
                                      double mu);
std::vector<double> tikhonov_standard(const EigenSystem& eig,
                                      const std::vector<double>& rhs,
                                      double mu);

// smoothing-penalty solve: (m m + mu^2 (I + d1'd1 + d2'd2)) y = m rhs,
// factored by cholesky; failure to factor raises numerical_error
std::vector<double> tikhonov_sobolev(const Matrix& m,
                                     const std::vector<double>& rhs, double mu,
                                     const Matrix& d1, const Matrix& d2);

}  // namespace prolate
