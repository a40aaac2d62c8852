#pragma once

#include <span>
#include <string>
#include <vector>

#include "pwf/jet.hpp"
#include "pwf/mask_table.hpp"

namespace pwf {

/// Which one-sided limit to take at a breakpoint.
enum class Side { kLeft, kRight };

inline constexpr int kMaxSplineOrder = 8;

/**
 * Phase spline z on [0, 1/4] with uniform knots k 2^-j, k = 0 .. 2^{j-2}.
 *
 * Pieces are stored in the local variable s = (xi - x_i) 2^j in [0, 1].
 * All pieces have degree K except the first, which carries floor((K-1)/2)
 * extra coefficients to absorb the right-end conditions
 * z^{(l)}(1/4) = 0, l even in 2..K-1.
 */
class SplinePhase {
 public:
  SplinePhase(int j, int K, std::vector<std::vector<double>> coeffs, double condition);

  int j() const { return j_; }
  int K() const { return K_; }
  int pieces() const { return static_cast<int>(coeffs_.size()); }
  double knot(int i) const;
  std::vector<double> knots() const;
  const std::vector<std::vector<double>>& coeffs() const { return coeffs_; }
  /// 1-norm condition estimate of the interpolation system (1 for K = 1).
  double condition() const { return condition_; }
  /// Number of right-end derivative conditions imposed.
  int right_conditions() const { return (K_ - 1) / 2; }

  /// z^{(d)}(xi) for xi in [0, 1/4]; at a knot, side picks the piece.
  double eval(double xi, int d = 0, Side side = Side::kRight) const;
  /// Taylor jet of z at xi with `order` + 1 coefficients.
  Jet jet(double xi, int order, Side side) const;

  /// sup |z'| and sup |z''| over [0, 1/4], upper bounds from coefficient sums.
  double slope_bound() const;
  double curvature_bound() const;

  /// Largest relative mismatch of derivatives 0..K-1 across interior knots.
  double continuity_residual() const;

  /// Exact integral of (z')^4 + (z'')^2 over [0, 1/4].
  double energy_integral() const;

 private:
  int piece_index(double xi, Side side) const;

  int j_;
  int K_;
  std::vector<std::vector<double>> coeffs_;
  double condition_;
};

/// Spline through theta^j_k, k = 0..2^{j-2}, with z^{(l)}(0) = 0 for l < K.
SplinePhase fit_phase_spline(std::span<const double> theta_level, int j, int K);
SplinePhase fit_phase_spline(const ThetaTable& theta, int j, int K);

/// Condition numbers above this are rejected.
inline constexpr double kMaxSplineCondition = 1e12;

}  // namespace pwf
