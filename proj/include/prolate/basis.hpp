#pragma once
#include <cstddef>
#include <utility>
#include <vector>

#include "prolate/linalg.hpp"
#include "prolate/quadrature.hpp"

namespace prolate {

// bandlimited bases: normalized spherical bessel j'bar_n(t) = sqrt(sigma(2n+1)/pi) j_n(sigma t)
// and sinc translates psi_n(t) = sqrt(sigma/pi) sinc(sigma t - n pi), plus the
// parity-split sinc combinations.  Legendre tags the P'bar_n coefficient space
// used by the Galerkin solver (domain restricted to [-1,1]).
enum class BasisTag { Bessel, Sinc, SincParitySplit, Legendre };
enum class Parity { Even, Odd, None };

struct BasisKind {
  BasisTag tag = BasisTag::Bessel;
  double sigma = 0.0;
};

// coefficient vector in one of the bases.  bessel/legendre indices start at 0;
// sinc translate sets cover signed indices [first_index, first_index+size).
struct CoeffVector {
  BasisKind basis;
  std::vector<double> coeffs;
  Parity parity = Parity::None;
  int first_index = 0;
};

struct GramMatrix {
  BasisKind basis;
  Matrix entries;
  std::size_t n_basis = 0;
};

double eval_basis(const BasisKind& basis, int n, double t);
std::vector<double> eval_expansion(const CoeffVector& c,
                                   const std::vector<double>& t);
double eval_expansion_at(const CoeffVector& c, double t);

// overlap matrices over (-1,1).  parity zero structure is enforced exactly in
// the bessel gram; a rule-doubling self-check guards quadrature resolution.
GramMatrix gram_bessel(double sigma, std::size_t n_basis, const QuadRule& rule);
GramMatrix gram_sinc(double sigma, std::size_t m_max, const QuadRule& rule);
GramMatrix gram_sinc_range(double sigma, int lo, std::size_t count,
                           const QuadRule& rule);
std::pair<GramMatrix, GramMatrix> gram_sinc_parity_split(double sigma,
                                                         std::size_t m_max,
                                                         const QuadRule& rule);

// first/second derivative in bessel coefficient space (skew-symmetric,
// bandwidth 1, entries proportional to sigma; order 2 is the square)
Matrix diff_matrix_bessel(int order, double sigma, std::size_t n_basis);

// smallest basis order n such that every gram entry with both indices >= n is
// below tol per the stirling tail estimate; never less than ceil(e sigma/2)+8
std::size_t truncation_order(double sigma, double tol);

// sample matrices: row n holds basis function n evaluated at the points
Matrix bessel_rows(double sigma, std::size_t n_basis,
                   const std::vector<double>& t);
Matrix sinc_rows(double sigma, int lo, std::size_t count,
                 const std::vector<double>& t);
Matrix pbar_rows(std::size_t n_max, const std::vector<double>& x);

}  // namespace prolate
