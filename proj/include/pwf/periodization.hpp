#pragma once

#include "pwf/frame.hpp"

namespace pwf {

enum class SpectrumKind { kScaling, kWavelet };

/// c_k = spectrum at xi = k, |k| <= N. The tail sums squared envelopes over
/// the remaining integer grid points plus the level's beyond-grid tail.
/// Throws StructuralError if the grid does not reach N.
CoefficientSeries periodize(const NonstationaryFrameLevel& level, SpectrumKind kind,
                            std::int64_t N);

struct RoundTripReport {
  int j = 0;
  std::int64_t N = 0;
  double max_phi = 0.0;
  double max_psi = 0.0;
  /// max |m_s(k 2^-s) - nu^s_k| over the factors used.
  double sampling_part = 0.0;
  /// Truncation allowance: both sides are within tol (relative) of their limits.
  double truncation_part = 0.0;

  double max_discrepancy() const { return max_phi > max_psi ? max_phi : max_psi; }
};

RoundTripReport roundtrip_check(const PeriodicMaskTable& table, const MaskFamily& masks, int j,
                                std::int64_t N, double tol);

}  // namespace pwf
