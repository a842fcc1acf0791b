#pragma once
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "prolate/basis.hpp"
#include "prolate/extrapolate.hpp"
#include "prolate/linalg.hpp"
#include "prolate/quadrature.hpp"

namespace prolate {

// self-adjoint convolution kernel with band region [-sigma, sigma]: time_fn is
// K(t), freq_fn its transform, required even and zero outside the band
struct KernelSpec {
  std::string name;
  double sigma = 0.0;
  std::function<double(double)> time_fn;
  std::function<double(double)> freq_fn;
};

// built-in kernels: "K1" (triangular transform) and "K2" (parabolic transform)
KernelSpec builtin_kernel(const std::string& name, double sigma);

// signed kernel matrix in the bessel basis with the unimodular phases folded
// in: entry (m,n) is (-1)^((m-n)/2) times the legendre-weighted transform
// moment for same-parity m,n and exactly zero otherwise.  the rule overload
// applies the given quadrature verbatim; the overload without a rule sizes a
// gauss rule automatically, self-checks it by doubling, and falls back to a
// half-interval split when the transform has a kink at zero
Matrix kernel_matrix_bessel(const KernelSpec& k, std::size_t n_basis,
                            const QuadRule& rule);
Matrix kernel_matrix_bessel(const KernelSpec& k, std::size_t n_basis);

// kernel matrix over sinc translates lo..lo+count-1: symmetric toeplitz with
// entries (pi/sigma) K((m-n) pi / sigma)
Matrix kernel_matrix_sinc(const KernelSpec& k, int lo, std::size_t count);

// eigenpairs of the restricted kernel operator.  beta are synthesis
// coefficients normalized so the recovered expansion (kernel matrix times
// beta) has unit coefficient norm; recovered holds that expansion.
struct KernelEigenSet {
  std::string kernel_name;
  double sigma = 0.0;
  BasisTag basis = BasisTag::Bessel;
  std::size_t n_basis = 0;
  std::vector<double> eigenvalues;
  std::vector<CoeffVector> coeffs;
  std::vector<CoeffVector> recovered;
  std::vector<Parity> parities;
};

// solve the generalized problem in the chosen basis via gram symmetrization.
// sinc translate indices run from -floor(n_basis/2).  an empty rule picks a
// gauss rule of 4 n_basis points.  modes killed exactly by gram underflow are
// omitted, so fewer than n_keep pairs may return for large n_keep.
KernelEigenSet kernel_eigen(const KernelSpec& k, BasisTag basis,
                            std::size_t n_basis, std::size_t n_keep,
                            const QuadRule& rule = QuadRule{});

// forward map: (T y)(t) = int_{-1}^{1} K(t - s) y(s) ds at the given points
std::vector<double> apply_forward(const KernelSpec& k,
                                  const std::function<double(double)>& y,
                                  const std::vector<double>& t,
                                  const QuadRule& rule);

struct InvertConfig {
  PenaltyKind penalty = PenaltyKind::Standard;
  double mu = 1e-12;
};

struct InvertResult {
  CoeffVector ytilde;
  std::function<double(double)> evaluate;  // on [-1,1]
  double residual_norm = 0.0;
  double solution_norm = 0.0;
};

// regularized solve of T y = x from samples of x on (-1,1)
InvertResult invert(const KernelSpec& k,
                    const std::function<double(double)>& x, BasisTag basis,
                    std::size_t n_basis, const InvertConfig& config,
                    const QuadRule& rule);

// closed-form forward/inverse pairs for the K2 kernel family at sigma tied to
// the oscillation count nu: "pair1" (odd) and "pair2" (even)
struct SignalPair {
  std::function<double(double)> y;
  std::function<double(double)> x;
  double sigma = 0.0;
};

SignalPair test_signal_pair(const std::string& name, int nu);

}  // namespace prolate
