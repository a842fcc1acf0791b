#pragma once
#include <cstddef>
#include <functional>
#include <vector>

#include "prolate/linalg.hpp"

namespace prolate {

enum class QuadKind { GaussLegendre, LGL };

// quadrature rule on [-1,1]: ascending nodes, positive weights.  nodes and
// weights mirror exactly under x -> -x by construction.
struct QuadRule {
  QuadKind kind = QuadKind::GaussLegendre;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

// n-point gauss-legendre rule, exact through degree 2n-1
QuadRule gauss_legendre_rule(std::size_t n);

// n-point lobatto rule including both endpoints, exact through degree 2n-3
QuadRule lgl_rule(std::size_t n);

// sum_q w_q f(x_q) g(x_q)
double inner_product(const std::function<double(double)>& f,
                     const std::function<double(double)>& g,
                     const QuadRule& rule);

// affine image of a rule on [a,b]
QuadRule map_rule(const QuadRule& rule, double a, double b);

// spectral differentiation matrix on lobatto nodes: (d v)_j = v'(x_j) for v a
// polynomial of degree < n sampled at the nodes
Matrix lgl_diff_matrix(const QuadRule& rule);

}  // namespace prolate
