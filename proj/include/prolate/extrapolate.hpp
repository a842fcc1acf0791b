#pragma once
#include <cstddef>
#include <functional>
#include <vector>

#include "prolate/basis.hpp"
#include "prolate/quadrature.hpp"

namespace prolate {

enum class PenaltyKind { Standard, Sobolev };

// bandlimited extrapolation from samples on (-1,1).  observed is evaluated
// only inside the interval; exact (when set) supplies the global reference
// used for relative errors, otherwise observed is reused.
struct ExtrapolationProblem {
  std::function<double(double)> observed;
  std::function<double(double)> exact;
  double sigma = 0.0;
  BasisTag basis = BasisTag::Bessel;
  PenaltyKind penalty = PenaltyKind::Standard;
  std::size_t n_basis = 400;
  std::size_t n_quad = 1600;
  double mu = 1e-12;
};

struct ExtrapolationResult {
  CoeffVector coeffs;
  std::function<double(double)> extrapolant;
  double residual_norm = 0.0;
  double solution_norm = 0.0;
  double mu = 0.0;
};

struct SweepRow {
  double mu = 0.0;
  double e_rel = 0.0;
  double residual_norm = 0.0;
  double solution_norm = 0.0;
  bool failed = false;
};

// inner products of a function against the first n_basis basis members; sinc
// translate indices start at -floor(n_basis/2)
std::vector<double> project_observed(const std::function<double(double)>& fn,
                                     const BasisKind& basis,
                                     std::size_t n_basis,
                                     const QuadRule& rule);

ExtrapolationResult extrapolate(const ExtrapolationProblem& problem);

// one extrapolation per mu with shared factorizations; rows never throw, a
// per-mu failure is flagged instead.  e_rel integrates over (lo, hi).
std::vector<SweepRow> mu_sweep(const ExtrapolationProblem& problem,
                               const std::vector<double>& mus,
                               double lo = -5.0, double hi = 5.0);

// sqrt( int (exact-approx)^2 / int exact^2 ) over (lo, hi)
double relative_error(const std::function<double(double)>& exact,
                      const std::function<double(double)>& approx, double lo,
                      double hi, const QuadRule& rule);

// built-in extrapolation test signals 1..3 (sums of five bandlimited bumps
// with fixed widths and centers); nu orders the bessel bump of signal 2
std::function<double(double)> test_signal(int which, double sigma, int nu = 2);

// dense uniform samples on [-1,1] -> smooth evaluator: local cubic
// interpolation onto at most 129 chebyshev points, then barycentric evaluation
std::function<double(double)> sampled_signal(const std::vector<double>& ts,
                                             const std::vector<double>& xs);

}  // namespace prolate
