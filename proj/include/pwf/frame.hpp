#pragma once

#include <string>
#include <vector>

#include "pwf/product.hpp"
#include "pwf/series.hpp"

namespace pwf {

/// 2^{-j/2} prod_{r=1}^{depth} m_{j+r}(k 2^{-j-r}).
double periodic_scaling_coefficient(const MaskFamily& family, int j, std::int64_t k, int depth);

/// e^{2 pi i x} sqrt(2) nu phi: the wavelet mask applied to a scaling coefficient.
cplx wavelet_coefficient(double x, double nu, double phi);

/// lambda^j_k = e^{2 pi i 2^-j k} mu^j_{k + 2^{j-1}}
cplx lambda(const PeriodicMaskTable& table, int j, std::int64_t k);

struct PeriodicFrameLevel {
  int j = 0;
  std::int64_t N = 0;
  double tol = 0.0;
  int depth = 0;       // product depth for phi_j
  int next_depth = 0;  // product depth for phi_{j+1} inside psi_j
  CoefficientSeries phi;
  CoefficientSeries psi;
};

PeriodicFrameLevel build_periodic_level(const PeriodicMaskTable& table, int j, std::int64_t N,
                                        double tol);

/// Spectra on xi = n 2^-G, |xi| <= span 2^j, with b-bound envelopes.
struct NonstationaryFrameLevel {
  int j = 0;
  int G = 0;
  double span = 0.0;  // auxiliary units
  double tol = 0.0;
  int depth = 0;
  std::string masks;
  std::vector<double> xi;
  std::vector<double> phi;
  std::vector<cplx> psi;
  std::vector<double> phi_envelope;
  std::vector<double> psi_envelope;
  /// Squared envelopes summed over the integers past the grid, up to four times its extent.
  double phi_outer_tail = 0.0;
  double psi_outer_tail = 0.0;

  /// Index of xi = n 2^-G, or -1 when outside the grid.
  std::int64_t index_of(double x) const;
};

NonstationaryFrameLevel build_nonstationary_level(const MaskFamily& family, int j, double span,
                                                  int G, double tol);

/// Piecewise-constant masks mu^j_k on [k 2^-j, (k+1) 2^-j); integer-aligned
/// spectra on |xi| <= N share the arithmetic of build_periodic_level.
NonstationaryFrameLevel step_mask_lift(const PeriodicMaskTable& table, int j, std::int64_t N,
                                       int G, double tol);

struct EnergyCheck {
  double series = 0.0;    // sum |phi^P_j(k)|^2, |k| <= N
  double integral = 0.0;  // int |phi^N_j|^2 over [-N, N + 1)
  double residual = 0.0;
};

/// Step lift energy identity on integer intervals.
EnergyCheck step_energy_identity(const PeriodicMaskTable& table, int j, std::int64_t N,
                                 double tol);

struct LimitTrend {
  double probe = 0.0;
  std::vector<double> values;  // 2^{j/2} phi_j at the probe, one per level
  std::string verdict;         // "approaching" | "not-monotone"
};

struct UEPReport {
  std::string setting;
  std::vector<int> levels;
  double con2 = 0.0;
  double con3 = 0.0;
  double con4 = 0.0;
  double wavelet_quadrature = 0.0;
  std::vector<LimitTrend> con1;
  std::string phase_convention = "exp(2 pi i 2^-j k), real masks";

  bool ok(double tol) const { return con2 <= tol && con3 <= tol && con4 <= tol; }
};

/// Residuals over consecutive levels of the list (sorted by j).
UEPReport check_uep_conditions(const PeriodicMaskTable& table,
                               const std::vector<PeriodicFrameLevel>& levels);
UEPReport check_uep_conditions(const MaskFamily& family,
                               const std::vector<NonstationaryFrameLevel>& levels);

struct SplitResult {
  double fine = 0.0;    // sum_k |<f, phi_{j+1,k}>|^2
  double coarse = 0.0;  // sum_k |<f, phi_{j,k}>|^2
  double detail = 0.0;  // sum_k |<f, psi_{j,k}>|^2
  double relative_residual = 0.0;
};

/// Analysis energy over 2^j shifts: sum_k |sum_n f(n) conj(g(n)) e^{2 pi i n k / 2^j}|^2.
double analysis_energy(const CoefficientSeries& f, const CoefficientSeries& g, int j);

/// One-level split identity for a trigonometric polynomial f.
SplitResult parseval_split(const PeriodicMaskTable& table, int j, const CoefficientSeries& f,
                           double tol);

}  // namespace pwf
