#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pwf/errors.hpp"

namespace pwf {

using cplx = std::complex<double>;

/// Fourier coefficients c_k, |k| <= N, plus a declared estimate of sum_{|k|>N} |c_k|^2.
struct CoefficientSeries {
  std::int64_t N = 0;
  std::vector<cplx> c;  // c[k + N]
  double tail = 0.0;

  CoefficientSeries() = default;
  CoefficientSeries(std::int64_t n, std::vector<cplx> values, double tail_estimate = 0.0)
      : N(n), c(std::move(values)), tail(tail_estimate) {
    if (static_cast<std::int64_t>(c.size()) != 2 * N + 1) {
      throw StructuralError("coefficient series needs 2N + 1 entries");
    }
    if (tail < 0.0) throw StructuralError("coefficient tail must be nonnegative");
  }

  cplx at(std::int64_t k) const {
    return (k < -N || k > N) ? cplx{} : c[static_cast<std::size_t>(k + N)];
  }
  double energy() const {
    double acc = 0.0;
    for (const auto& v : c) acc += std::norm(v);
    return acc;
  }
};

}  // namespace pwf
