#pragma once

#include <functional>
#include <string>
#include <utility>

#include "pwf/frame.hpp"

namespace pwf {

/**
 * Heisenberg report. Frequency quantities are in angular units w = 2 pi xi,
 * so the Gaussian exp(-pi x^2) gives exactly 1/2.
 */
struct UCHReport {
  double norm_sq = 0.0;
  double time_centre = 0.0;
  double time_var = 0.0;
  double freq_centre = 0.0;
  double freq_var = 0.0;
  double uc = 0.0;
  double quadrature_error = 0.0;
  double tail_error = 0.0;
  double derivative_error = 0.0;
  double error_budget = 0.0;
  /// false: a second moment grows with the span; uc, time_var or freq_var is +inf.
  bool converged = true;
  /// log2 of the ratio between the two outermost octave contributions.
  double growth_exponent = 0.0;
  std::string verdict = "finite";
};

/// f-hat and its derivative at xi.
using SpectrumFn = std::function<std::pair<cplx, cplx>(double)>;

/**
 * Composite Gauss-Legendre over [-span, span] split into cells of width h
 * (chosen so that breakpoints fall on cell edges); 16-node values with the
 * 8-node difference as the error estimate. Throws DomainError on zero norm
 * or when a convergent spectrum has not decayed at the span edges.
 */
UCHReport uc_heisenberg(const SpectrumFn& f, double span, double h);

/// Real spectrum sampled on a uniform grid; derivative from the second grid
/// or central differences when it is null. Trapezoid with a Simpson check.
UCHReport uc_heisenberg(const SpectrumGrid& spectrum, const SpectrumGrid* derivative = nullptr);

struct UCBReport {
  double norm_sq = 0.0;
  cplx tau{};
  double var_a = 0.0;
  double var_f = 0.0;
  double uc = 0.0;
  double tail_budget = 0.0;
  bool degenerate = false;
};

/// Breitenberger constant from a coefficient sequence. Throws DomainError on
/// zero norm or a single harmonic.
UCBReport uc_breitenberger(const CoefficientSeries& series);

struct UCPair {
  int j = 0;
  UCBReport periodic;
  UCHReport nonstationary;
  /// Same constant on the auxiliary wavelet psi_j; dilation cross-check.
  UCHReport auxiliary;
  double gap = 0.0;  // NaN when either side is undefined
  std::string flags;
};

/// psi-hat^N_j and its derivative; the auxiliary form when `auxiliary`.
SpectrumFn wavelet_spectrum(const MaskFamily& masks, const ScalingSpectrum& phi_next, int j,
                            bool auxiliary);

/// span in auxiliary units; the nonstationary side uses span 2^j.
UCPair uc_pair_for_level(const PeriodicMaskTable& table, const MaskFamily& masks, int j,
                         std::int64_t N, double span, double tol);

/// UC_H of exp(-pi x^2) through the general routine.
UCHReport gaussian_self_test();

}  // namespace pwf
