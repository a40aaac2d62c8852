#include "pwf/frame.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pwf/quadrature.hpp"

namespace pwf {

namespace {

// sum_{N < |k| <= 4N} (scale b^j_k)^2
double envelope_tail(const MaskFamily& family, int j, std::int64_t N, double scale, double tol) {
  const ProductBounds right = product_bounds(family, j, N + 1, 4 * N, tol);
  const ProductBounds left = product_bounds(family, j, -4 * N, -N - 1, tol);
  double acc = 0.0;
  for (double b : right.b) acc += (scale * b) * (scale * b);
  for (double b : left.b) acc += (scale * b) * (scale * b);
  return acc;
}

std::string trend_verdict(const std::vector<double>& values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (std::abs(1.0 - values[i]) > std::abs(1.0 - values[i - 1]) + 1e-15) {
      return "not-monotone";
    }
  }
  return "approaching";
}

}  // namespace

double periodic_scaling_coefficient(const MaskFamily& family, int j, std::int64_t k,
                                    int depth) {
  double p = std::pow(2.0, -0.5 * j);
  for (int r = 1; r <= depth; ++r) {
    p *= family.node(j + r, k);
    if (p == 0.0) return 0.0;
  }
  return p;
}

cplx wavelet_coefficient(double x, double nu, double phi) {
  const double angle = 2.0 * std::numbers::pi * x;
  const double mag = std::numbers::sqrt2 * nu * phi;
  return {mag * std::cos(angle), mag * std::sin(angle)};
}

cplx lambda(const PeriodicMaskTable& table, int j, std::int64_t k) {
  const double angle = 2.0 * std::numbers::pi * std::ldexp(static_cast<double>(k), -j);
  return std::polar(table.mu(j, k + pow2(j - 1)), angle);
}

PeriodicFrameLevel build_periodic_level(const PeriodicMaskTable& table, int j, std::int64_t N,
                                        double tol) {
  if (N < 1) throw StructuralError("coefficient cutoff N must be >= 1");
  const StepFamily family(table);
  PeriodicFrameLevel level;
  level.j = j;
  level.N = N;
  level.tol = tol;
  level.depth = truncation_depth(family, j, -N, N, tol).depth;
  level.next_depth = truncation_depth(family, j + 1, -N, N, tol).depth;

  const std::int64_t shift = pow2(j);
  std::vector<cplx> phi;
  std::vector<cplx> psi;
  for (std::int64_t k = -N; k <= N; ++k) {
    phi.emplace_back(periodic_scaling_coefficient(family, j, k, level.depth), 0.0);
    const double next = periodic_scaling_coefficient(family, j + 1, k, level.next_depth);
    psi.push_back(wavelet_coefficient(std::ldexp(static_cast<double>(k), -(j + 1)),
                                      family.node(j + 1, k + shift), next));
  }
  const double phi_tail = envelope_tail(family, j, N, std::pow(2.0, -0.5 * j), tol);
  const double psi_tail =
      envelope_tail(family, j + 1, N, std::numbers::sqrt2 * std::pow(2.0, -0.5 * (j + 1)), tol);
  level.phi = CoefficientSeries(N, std::move(phi), phi_tail);
  level.psi = CoefficientSeries(N, std::move(psi), psi_tail);
  return level;
}

std::int64_t NonstationaryFrameLevel::index_of(double x) const {
  if (xi.empty()) return -1;
  const double n = std::ldexp(x, G);
  if (n != std::floor(n)) return -1;
  const auto idx = static_cast<std::int64_t>(n - std::ldexp(xi.front(), G));
  return (idx < 0 || idx >= static_cast<std::int64_t>(xi.size())) ? -1 : idx;
}

NonstationaryFrameLevel build_nonstationary_level(const MaskFamily& family, int j, double span,
                                                  int G, double tol) {
  if (G < 0) throw StructuralError("grid resolution G must be >= 0");
  const ScalingSpectrum phi_j(family, j, span, tol);
  const ScalingSpectrum phi_next(family, j + 1, span, tol);

  NonstationaryFrameLevel level;
  level.j = j;
  level.G = G;
  level.span = span;
  level.tol = tol;
  level.depth = phi_j.depth();
  level.masks = family.label();

  const double extent = std::ldexp(span, j);
  const auto n_max = static_cast<std::int64_t>(std::floor(std::ldexp(extent, G)));
  const auto k_max = static_cast<std::int64_t>(std::ceil(extent)) + 1;
  const ProductBounds b_j = product_bounds(family, j, -k_max, k_max, tol);
  const ProductBounds b_next = product_bounds(family, j + 1, -k_max, k_max, tol);
  const double scale_j = std::pow(2.0, -0.5 * j);
  const double scale_next = std::pow(2.0, -0.5 * (j + 1));

  for (std::int64_t n = -n_max; n <= n_max; ++n) {
    const double xi = std::ldexp(static_cast<double>(n), -G);
    const double x = std::ldexp(xi, -(j + 1));
    const auto k = static_cast<std::int64_t>(std::floor(xi));
    level.xi.push_back(xi);
    level.phi.push_back(scale_j * phi_j.value(std::ldexp(xi, -j)));
    level.psi.push_back(wavelet_coefficient(x, family.value(j + 1, x + 0.5),
                                            scale_next * phi_next.value(x)));
    level.phi_envelope.push_back(scale_j * b_j.b_at(k));
    level.psi_envelope.push_back(std::numbers::sqrt2 * scale_next * b_next.b_at(k));
  }
  const auto edge = static_cast<std::int64_t>(std::floor(extent));
  if (edge >= 1) {
    level.phi_outer_tail = envelope_tail(family, j, edge, scale_j, tol);
    level.psi_outer_tail = envelope_tail(family, j + 1, edge, std::numbers::sqrt2 * scale_next, tol);
  }
  return level;
}

NonstationaryFrameLevel step_mask_lift(const PeriodicMaskTable& table, int j, std::int64_t N,
                                       int G, double tol) {
  if (G < 0) throw StructuralError("grid resolution G must be >= 0");
  if (N < 1) throw StructuralError("coefficient cutoff N must be >= 1");
  const StepFamily family(table);
  const int depth = truncation_depth(family, j, -N, N, tol).depth;
  const int next_depth = truncation_depth(family, j + 1, -N, N, tol).depth;
  const ProductBounds b_j = product_bounds(family, j, -N - 1, N + 1, tol);
  const ProductBounds b_next = product_bounds(family, j + 1, -N - 1, N + 1, tol);

  NonstationaryFrameLevel level;
  level.j = j;
  level.G = G;
  level.span = std::ldexp(static_cast<double>(N), -j);
  level.tol = tol;
  level.depth = depth;
  level.masks = "step";
  const double scale_next = std::pow(2.0, -0.5 * (j + 1));
  const std::int64_t n_max = N << G;
  for (std::int64_t n = -n_max; n <= n_max; ++n) {
    const double xi = std::ldexp(static_cast<double>(n), -G);
    const auto k = static_cast<std::int64_t>(std::floor(xi));
    const double x = std::ldexp(xi, -(j + 1));
    level.xi.push_back(xi);
    level.phi.push_back(periodic_scaling_coefficient(family, j, k, depth));
    level.psi.push_back(wavelet_coefficient(
        x, family.value(j + 1, x + 0.5), periodic_scaling_coefficient(family, j + 1, k, next_depth)));
    level.phi_envelope.push_back(std::pow(2.0, -0.5 * j) * b_j.b_at(k));
    level.psi_envelope.push_back(std::numbers::sqrt2 * scale_next * b_next.b_at(k));
  }
  level.phi_outer_tail = envelope_tail(family, j, N, std::pow(2.0, -0.5 * j), tol);
  level.psi_outer_tail = envelope_tail(family, j + 1, N, std::numbers::sqrt2 * scale_next, tol);
  return level;
}

EnergyCheck step_energy_identity(const PeriodicMaskTable& table, int j, std::int64_t N,
                                 double tol) {
  const PeriodicFrameLevel periodic = build_periodic_level(table, j, N, tol);
  const int G = 2;
  const NonstationaryFrameLevel step = step_mask_lift(table, j, N + 1, G, tol);
  EnergyCheck out;
  std::vector<double> terms;
  for (const auto& c : periodic.phi.c) terms.push_back(std::norm(c));
  out.series = pairwise_sum(terms);
  terms.clear();
  const double h = std::ldexp(1.0, -G);
  for (std::size_t i = 0; i < step.xi.size(); ++i) {
    if (step.xi[i] >= -static_cast<double>(N) && step.xi[i] < static_cast<double>(N + 1)) {
      terms.push_back(step.phi[i] * step.phi[i] * h);
    }
  }
  out.integral = pairwise_sum(terms);
  out.residual = std::abs(out.series - out.integral);
  return out;
}

UEPReport check_uep_conditions(const PeriodicMaskTable& table,
                               const std::vector<PeriodicFrameLevel>& levels) {
  UEPReport report;
  report.setting = "periodic";
  for (const auto& lv : levels) {
    report.levels.push_back(lv.j);
    for (int s : {lv.j, lv.j + 1}) {
      if (!table.has_level(s)) continue;
      const std::int64_t half = pow2(s - 1);
      for (std::int64_t k = 0; k < half; ++k) {
        const double a = table.mu(s, k);
        const double b = table.mu(s, k + half);
        report.con2 = std::max(report.con2, std::abs(a * a + b * b - 2.0));
      }
    }
  }
  const StepFamily family(table);
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const auto& lo = levels[i];
    const auto& hi = levels[i + 1];
    if (hi.j != lo.j + 1) continue;
    const std::int64_t N = std::min(lo.N, hi.N);
    for (std::int64_t k = -N; k <= N; ++k) {
      const double mu = std::numbers::sqrt2 * family.node(hi.j, k);
      report.con3 = std::max(report.con3, std::abs(lo.phi.at(k) - mu * hi.phi.at(k)));
      const cplx lam = std::polar(std::numbers::sqrt2 * family.node(hi.j, k + pow2(lo.j)),
                                  2.0 * std::numbers::pi *
                                      std::ldexp(static_cast<double>(k), -hi.j));
      report.con4 = std::max(report.con4, std::abs(lo.psi.at(k) - lam * hi.phi.at(k)));
    }
  }
  for (std::int64_t probe : {0, 1, 2, 4}) {
    LimitTrend t;
    t.probe = static_cast<double>(probe);
    for (const auto& lv : levels) {
      if (probe > lv.N) continue;
      t.values.push_back(std::pow(2.0, 0.5 * lv.j) * lv.phi.at(probe).real());
    }
    t.verdict = trend_verdict(t.values);
    report.con1.push_back(std::move(t));
  }
  return report;
}

UEPReport check_uep_conditions(const MaskFamily& family,
                               const std::vector<NonstationaryFrameLevel>& levels) {
  UEPReport report;
  report.setting = "nonstationary";
  constexpr int kSamples = 4096;
  for (const auto& lv : levels) {
    report.levels.push_back(lv.j);
    for (int s : {lv.j, lv.j + 1}) {
      if (s < family.min_level()) continue;
      for (int i = 0; i < kSamples; ++i) {
        const double x = static_cast<double>(i) / kSamples;
        const double a = std::numbers::sqrt2 * family.value(s, x);
        const double b = std::numbers::sqrt2 * family.value(s, x + 0.5);
        report.con2 = std::max(report.con2, std::abs(a * a + b * b - 2.0));
        // |m1(x)| = |m0(x + 1/2)|, |m1(x + 1/2)| = |m0(x + 1)|
        const cplx m1a = std::exp(cplx(0.0, 2.0 * std::numbers::pi * x)) * b;
        const cplx m1b =
            std::exp(cplx(0.0, 2.0 * std::numbers::pi * (x + 0.5))) * std::numbers::sqrt2 *
            family.value(s, x + 1.0);
        report.wavelet_quadrature =
            std::max(report.wavelet_quadrature, std::abs(std::norm(m1a) + std::norm(m1b) - 2.0));
      }
    }
  }
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const auto& lo = levels[i];
    const auto& hi = levels[i + 1];
    if (hi.j != lo.j + 1 || hi.G != lo.G) continue;
    for (std::size_t p = 0; p < lo.xi.size(); ++p) {
      const std::int64_t q = hi.index_of(lo.xi[p]);
      if (q < 0) continue;
      const double x = std::ldexp(lo.xi[p], -hi.j);
      const double m0 = std::numbers::sqrt2 * family.value(hi.j, x);
      report.con3 = std::max(report.con3,
                             std::abs(lo.phi[p] - m0 * hi.phi[static_cast<std::size_t>(q)]));
      const cplx m1 = std::exp(cplx(0.0, 2.0 * std::numbers::pi * x)) * std::numbers::sqrt2 *
                      family.value(hi.j, x + 0.5);
      report.con4 = std::max(report.con4,
                             std::abs(lo.psi[p] - m1 * hi.phi[static_cast<std::size_t>(q)]));
    }
  }
  for (double probe : {1.0, 2.0, 4.0}) {
    LimitTrend t;
    t.probe = probe;
    for (const auto& lv : levels) {
      const std::int64_t p = lv.index_of(probe);
      if (p < 0) continue;
      t.values.push_back(std::pow(2.0, 0.5 * lv.j) * lv.phi[static_cast<std::size_t>(p)]);
    }
    t.verdict = trend_verdict(t.values);
    report.con1.push_back(std::move(t));
  }
  return report;
}

double analysis_energy(const CoefficientSeries& f, const CoefficientSeries& g, int j) {
  const std::int64_t P = pow2(j);
  std::vector<double> terms;
  for (std::int64_t k = 0; k < P; ++k) {
    cplx acc{};
    for (std::int64_t n = -f.N; n <= f.N; ++n) {
      const double angle = 2.0 * std::numbers::pi *
                           std::ldexp(static_cast<double>(wrap_index(n * k, P)), -j);
      acc += f.at(n) * std::conj(g.at(n)) * cplx(std::cos(angle), std::sin(angle));
    }
    terms.push_back(std::norm(acc));
  }
  return pairwise_sum(terms);
}

SplitResult parseval_split(const PeriodicMaskTable& table, int j, const CoefficientSeries& f,
                           double tol) {
  const PeriodicFrameLevel coarse = build_periodic_level(table, j, f.N, tol);
  const PeriodicFrameLevel fine = build_periodic_level(table, j + 1, f.N, tol);
  SplitResult out;
  out.fine = analysis_energy(f, fine.phi, j + 1);
  out.coarse = analysis_energy(f, coarse.phi, j);
  out.detail = analysis_energy(f, coarse.psi, j);
  out.relative_residual =
      std::abs(out.fine - out.coarse - out.detail) / std::max(out.fine, 1e-300);
  return out;
}

}  // namespace pwf
