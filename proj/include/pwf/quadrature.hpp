#pragma once

#include <span>
#include <vector>

namespace pwf {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, nodes by Newton iteration on P_n. Cached per n.
const GaussRule& gauss_legendre(int n);

/// Fixed-order pairwise summation; deterministic for a given input order.
double pairwise_sum(std::span<const double> values);

}  // namespace pwf
