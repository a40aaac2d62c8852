#pragma once

#include <array>
#include <vector>

#include "pwf/spline_phase.hpp"

namespace pwf {

/// Value and first two derivatives at a point.
using Deriv2 = std::array<double, 3>;

/**
 * Even, 1-periodic mask built from a phase spline:
 *   m(xi) = cos z(xi)        on [0, 1/4]
 *   m(xi) = sin z(1/2 - xi)  on (1/4, 1/2]
 * Breakpoints sit at the knot images k 2^-j.
 */
class LiftedMask {
 public:
  explicit LiftedMask(SplinePhase phase) : phase_(std::move(phase)) {}

  const SplinePhase& phase() const { return phase_; }
  int j() const { return phase_.j(); }
  int K() const { return phase_.K(); }

  double value(double xi) const;
  /// One-sided value, m', m''.
  Deriv2 derivs(double xi, Side side = Side::kRight) const;
  /// One-sided Taylor jet of m with order + 1 coefficients.
  Jet jet(double xi, int order, Side side) const;
  bool is_breakpoint(double xi) const;

 private:
  SplinePhase phase_;
};

/// Tolerance for one-sided derivative agreement in eval_mask.
inline constexpr double kBreakpointTol = 1e-9;

/// m^{(d)}(xi), d in 0..2. Throws BreakpointError if the one-sided values
/// at a breakpoint differ by more than kBreakpointTol (relative).
double eval_mask(const LiftedMask& mask, double xi, int d);

struct SmoothnessReport {
  /// Max relative one-sided mismatch of m^{(l)} over the checked points, l = 0..K-1.
  std::vector<double> mismatch_by_order;
  double worst_xi = 0.0;
  /// max |m^{(l)}(1/2)|, l = 1..K-1 (0 when K = 1).
  double half_derivative_max = 0.0;
  /// Largest relative derivative jump of the phase spline at interior knots.
  double spline_continuity = 0.0;
  double tol = 0.0;

  double max_mismatch() const;
  bool ok() const;
};

/// One-sided jet comparison at every knot image k 2^-j in [0, 1/2].
SmoothnessReport verify_mask_smoothness(const LiftedMask& mask, double tol);

}  // namespace pwf
