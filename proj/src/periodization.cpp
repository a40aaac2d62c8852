#include "pwf/periodization.hpp"

#include <algorithm>
#include <cmath>

namespace pwf {

CoefficientSeries periodize(const NonstationaryFrameLevel& level, SpectrumKind kind,
                            std::int64_t N) {
  if (N < 0) throw StructuralError("coefficient cutoff must be nonnegative");
  std::vector<cplx> c;
  for (std::int64_t k = -N; k <= N; ++k) {
    const std::int64_t p = level.index_of(static_cast<double>(k));
    if (p < 0) {
      throw StructuralError("spectrum grid does not reach frequency " + std::to_string(k));
    }
    const auto i = static_cast<std::size_t>(p);
    c.push_back(kind == SpectrumKind::kScaling ? cplx(level.phi[i], 0.0) : level.psi[i]);
  }
  double tail = kind == SpectrumKind::kScaling ? level.phi_outer_tail : level.psi_outer_tail;
  const auto& env = kind == SpectrumKind::kScaling ? level.phi_envelope : level.psi_envelope;
  for (std::size_t i = 0; i < level.xi.size(); ++i) {
    const double x = level.xi[i];
    if (x == std::floor(x) && std::abs(x) > static_cast<double>(N)) tail += env[i] * env[i];
  }
  return CoefficientSeries(N, std::move(c), tail);
}

RoundTripReport roundtrip_check(const PeriodicMaskTable& table, const MaskFamily& masks, int j,
                                std::int64_t N, double tol) {
  RoundTripReport report;
  report.j = j;
  report.N = N;
  const PeriodicFrameLevel periodic = build_periodic_level(table, j, N, tol);
  const double span = std::ldexp(static_cast<double>(N), -j);
  const NonstationaryFrameLevel lifted = build_nonstationary_level(masks, j, span, 0, tol);
  const CoefficientSeries phi = periodize(lifted, SpectrumKind::kScaling, N);
  const CoefficientSeries psi = periodize(lifted, SpectrumKind::kWavelet, N);
  for (std::int64_t k = -N; k <= N; ++k) {
    report.max_phi = std::max(report.max_phi, std::abs(phi.at(k) - periodic.phi.at(k)));
    report.max_psi = std::max(report.max_psi, std::abs(psi.at(k) - periodic.psi.at(k)));
  }

  const StepFamily nodes(table);
  const int deepest = j + 1 + std::max(periodic.depth, periodic.next_depth);
  for (int s = j + 1; s <= deepest; ++s) {
    for (std::int64_t k = -N; k <= N; ++k) {
      for (std::int64_t kk : {k, k + pow2(j)}) {
        report.sampling_part =
            std::max(report.sampling_part, std::abs(masks.node(s, kk) - nodes.node(s, kk)));
      }
    }
  }
  report.truncation_part = 2.0 * tol * std::pow(2.0, -0.5 * j) * std::sqrt(2.0);
  return report;
}

}  // namespace pwf
