#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace pwf {

/// Truncated Taylor series f(x0 + t) = sum c[i] t^i, i < size.
using Jet = std::vector<double>;

/// Coefficients of sin(u(t)) and cos(u(t)) for a jet u.
inline void jet_sin_cos(const Jet& u, Jet& s, Jet& c) {
  const std::size_t n = u.size();
  s.assign(n, 0.0);
  c.assign(n, 0.0);
  if (n == 0) return;
  s[0] = std::sin(u[0]);
  c[0] = std::cos(u[0]);
  // k s_k = sum i u_i c_{k-i},  k c_k = -sum i u_i s_{k-i}
  for (std::size_t k = 1; k < n; ++k) {
    double ss = 0.0;
    double cc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      ss += static_cast<double>(i) * u[i] * c[k - i];
      cc -= static_cast<double>(i) * u[i] * s[k - i];
    }
    s[k] = ss / static_cast<double>(k);
    c[k] = cc / static_cast<double>(k);
  }
}

/// Jet of t -> f(x0 - t) from the jet of f at x0.
inline Jet jet_reflect(Jet u) {
  for (std::size_t i = 1; i < u.size(); i += 2) u[i] = -u[i];
  return u;
}

/// d-th derivative at the expansion point.
inline double jet_derivative(const Jet& u, std::size_t d) {
  double f = 1.0;
  for (std::size_t i = 2; i <= d; ++i) f *= static_cast<double>(i);
  return d < u.size() ? u[d] * f : 0.0;
}

}  // namespace pwf
