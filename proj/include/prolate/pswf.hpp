#pragma once
#include <cstddef>
#include <vector>

#include "prolate/basis.hpp"
#include "prolate/quadrature.hpp"

namespace prolate {

enum class PswfMethod { LegendreGalerkin, BesselIE, SincIE };

// prolate spheroidal wave functions at bandlimit sigma.  coeffs hold one
// unit-l2 coefficient vector per function:
//   LegendreGalerkin: legendre coefficients of the unit-L2(-1,1) solution;
//     eval_pswf rescales by sqrt(lambda_n) to the common normalization
//   BesselIE / SincIE: basis coefficients of the bandlimited eigenfunction,
//     unit L2 norm on the whole line
// eigenvalues are the operator eigenvalues lambda_n, strictly decreasing.
struct PswfSet {
  PswfMethod method = PswfMethod::BesselIE;
  double sigma = 0.0;
  std::size_t n_basis = 0;
  std::vector<double> eigenvalues;
  std::vector<CoeffVector> coeffs;
};

// sturm-liouville galerkin solve in the legendre basis; eigenvalues follow
// from the ratio chain (see eigenvalue_chain).  zero arguments pick defaults:
// n_basis = max(2 sigma, n_keep+30) and an internal lgl rule sized to the
// effective polynomial degree.
PswfSet pswf_legendre_galerkin(double sigma, std::size_t n_keep,
                               std::size_t n_basis = 0,
                               std::size_t chain_points = 0);

// integral-equation solve in the normalized spherical bessel basis; the
// operator matrix coincides with the basis gram, so lambda/beta come from its
// parity-blocked symmetric eigenproblem
PswfSet pswf_bessel_ie(double sigma, std::size_t n_basis, std::size_t n_keep,
                       const QuadRule& rule);

// integral-equation solve over sinc translates with indices -m_max..m_max;
// requires m_max >= ceil(sigma/pi) + margin
PswfSet pswf_sinc_ie(double sigma, std::size_t m_max, std::size_t n_keep,
                     const QuadRule& rule, std::size_t margin = 40);

// lambda_n recovered from the first-moment start value and adjacent ratio
// chain, evaluated with the lgl differentiation matrix and lgl quadrature.
// legendre-galerkin sets only.  a direct recomputation at n=2 cross-checks
// the chain when at least three functions are present.
std::vector<double> eigenvalue_chain(const PswfSet& set,
                                     std::size_t lgl_points = 0);

std::vector<double> eval_pswf(const PswfSet& set, std::size_t n,
                              const std::vector<double>& t);

// real fourier profile of function n on |xi| <= sigma (zero outside); the
// unimodular phase i^n is factored out.  bessel-ie sets only.
std::vector<double> pswf_fourier(const PswfSet& set, std::size_t n,
                                 const std::vector<double>& xi);

struct ExtensionResult {
  std::vector<double> values;
  bool conditioning_warning = false;  // set when n > 2 sigma / pi
};

// evaluate a legendre-galerkin solution outside [-1,1] through its bandlimited
// bessel series; accuracy degrades for orders past the plunge region
ExtensionResult bessel_series_extension(const PswfSet& set, std::size_t n,
                                        const std::vector<double>& t);

}  // namespace prolate
