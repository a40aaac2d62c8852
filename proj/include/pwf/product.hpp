#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pwf/mask_family.hpp"

namespace pwf {

inline constexpr int kMaxDepth = 64;

struct Truncation {
  int depth = 0;
  /// Certified sup over the intervals of 1 - prod_{r > depth} (lower factors).
  double bound = 0.0;
  /// First relative level from which the quadratic tail estimate applies.
  int tail_start = 0;
};

/**
 * Smallest R such that 1 - prod_{r>R} min(m_{j+r}(k 2^{-j-r}), m_{j+r}((k+1) 2^{-j-r}))
 * is at most tol for every level-j interval k in [k_lo, k_hi].
 *
 * Explicit terms are summed until the stationary tail is reached and the
 * scaled argument is below 1/4; beyond that 1 - cos z <= (L |eta|)^2 / 2.
 * Throws ConvergenceError if R would exceed kMaxDepth.
 */
Truncation truncation_depth(const MaskFamily& family, int j, std::int64_t k_lo,
                            std::int64_t k_hi, double tol);

/// phi_j(xi) = prod_{r>=1} m_{j+r}(xi / 2^r), truncated for |xi| <= span.
class ScalingSpectrum {
 public:
  ScalingSpectrum(const MaskFamily& family, int j, double span, double tol);

  int j() const { return j_; }
  double span() const { return span_; }
  double tol() const { return tol_; }
  int depth() const { return trunc_.depth; }
  int derivative_depth() const { return der_depth_; }
  const Truncation& truncation() const { return trunc_; }
  const MaskFamily& family() const { return *family_; }

  double value(double xi) const;
  /// One-sided value, first and second derivative (product rule over factors).
  Deriv2 derivs(double xi, Side side = Side::kRight) const;
  /// xi on the level-j lattice k 2^-j.
  bool is_breakpoint(double xi) const;

 private:
  const MaskFamily* family_;
  int j_;
  double span_;
  double tol_;
  Truncation trunc_;
  int der_depth_;
};

/// Interval bounds a^j_k <= phi_j <= b^j_k from min/max node factors.
struct ProductBounds {
  int j = 0;
  std::int64_t k_lo = 0;
  int depth = 0;
  double tol = 0.0;
  std::vector<double> a;
  std::vector<double> b;
  /// lower[r-1][k - k_lo] = min(nu^{j+r}_k, nu^{j+r}_{k+1}); upper likewise with max.
  std::vector<std::vector<double>> lower;
  std::vector<std::vector<double>> upper;

  std::int64_t k_hi() const { return k_lo + static_cast<std::int64_t>(a.size()) - 1; }
  double a_at(std::int64_t k) const { return a.at(static_cast<std::size_t>(k - k_lo)); }
  double b_at(std::int64_t k) const { return b.at(static_cast<std::size_t>(k - k_lo)); }
};

ProductBounds product_bounds(const MaskFamily& family, int j, std::int64_t k_lo,
                             std::int64_t k_hi, double tol);
ProductBounds product_bounds(const PeriodicMaskTable& table, int j, std::int64_t k_lo,
                             std::int64_t k_hi, double tol);

/// Samples on the dyadic grid n 2^{-j-G}, |n 2^{-j-G}| <= span (auxiliary units).
struct SpectrumGrid {
  int j = 0;
  int G = 0;
  double span = 0.0;
  int depth = 0;
  double tail_bound = 0.0;
  std::vector<double> xi;
  std::vector<double> value;
  /// Left limit; differs from value only at breakpoints of derivative grids.
  std::vector<double> left_value;
  std::vector<std::int64_t> interval_k;
  std::vector<double> lower_a;
  std::vector<double> upper_b;
  std::vector<char> exact_zero;
};

SpectrumGrid eval_scaling_spectrum(const MaskFamily& family, int j, double span, int G,
                                   double tol);

/// First and second derivative grids; breakpoints carry both one-sided values.
std::pair<SpectrumGrid, SpectrumGrid> eval_spectrum_derivatives(const MaskFamily& family,
                                                                int j, double span, int G,
                                                                double tol);

/// "xi,value,interval_k,lower_a,upper_b,tail_bound", 17 significant digits.
void write_spectrum_csv(std::ostream& out, const SpectrumGrid& grid);

struct ConvergenceReport {
  bool applicable = true;
  std::string reason;
  int j_first = 0;
  std::vector<double> terms;
  std::vector<double> partial_sums;
  /// Geometric extrapolation of the series; +inf when inconclusive.
  double limit_estimate = 0.0;
  std::string verdict;  // "converges" | "inconclusive" | "not-applicable"
};

/// Partial sums of sum_j norms[j - j_first] / 2^j.
ConvergenceReport check_prodL2(const std::vector<double>& second_derivative_norms, int j_first);
/// ||m_s''||_2 per level from the exact phase integrals; not applicable for K < 2.
ConvergenceReport check_prodL2(const LiftedFamily& family);
/// Partial sums of sum_j 2^-j (int_0^{1/4} (z')^4 + (z'')^2)^{1/2}.
ConvergenceReport check_my_prodL2(const std::vector<SplinePhase>& phases);

struct NormCheck {
  double norm_sq = 0.0;
  double quadrature_error = 0.0;
  double tail_estimate = 0.0;
  bool ok = false;
};

/// ||phi_j||_2^2 over [-span, span] plus sum of (b^j_k)^2 2^-j on the next
/// three spans; ok when the total stays below 1 within the error estimates.
NormCheck check_spectrum_norm(const MaskFamily& family, int j, double span, double tol);

}  // namespace pwf
