#include "pwf/product.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "pwf/quadrature.hpp"

namespace pwf {

namespace {

double lower_factor(const MaskFamily& f, int s, std::int64_t k) {
  return std::min(f.node(s, k), f.node(s, k + 1));
}

double upper_factor(const MaskFamily& f, int s, std::int64_t k) {
  return std::max(f.node(s, k), f.node(s, k + 1));
}

// Intervals k 2^-j covering [-span, span].
std::pair<std::int64_t, std::int64_t> interval_range(int j, double span) {
  const double scaled = std::ldexp(span, j);
  return {static_cast<std::int64_t>(std::floor(-scaled)),
          static_cast<std::int64_t>(std::ceil(scaled))};
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ConvergenceReport extrapolate(std::vector<double> terms, int j_first) {
  ConvergenceReport report;
  report.j_first = j_first;
  report.terms = std::move(terms);
  double acc = 0.0;
  for (double t : report.terms) {
    acc += t;
    report.partial_sums.push_back(acc);
  }
  const auto& t = report.terms;
  if (!t.empty() && std::all_of(t.begin(), t.end(), [](double v) { return v == 0.0; })) {
    report.verdict = "converges";
    report.limit_estimate = 0.0;
    return report;
  }
  report.verdict = "inconclusive";
  report.limit_estimate = std::numeric_limits<double>::infinity();
  if (t.size() < 3) return report;
  double q = 0.0;
  for (std::size_t i = t.size() - 2; i < t.size(); ++i) {
    if (t[i - 1] <= 0.0) return report;
    q = std::max(q, t[i] / t[i - 1]);
  }
  if (q <= 0.75) {
    report.verdict = "converges";
    report.limit_estimate = acc + t.back() * q / (1.0 - q);
  }
  return report;
}

}  // namespace

Truncation truncation_depth(const MaskFamily& family, int j, std::int64_t k_lo,
                            std::int64_t k_hi, double tol) {
  if (!(tol > 0.0)) throw StructuralError("truncation tolerance must be positive");
  if (k_hi < k_lo) std::swap(k_lo, k_hi);
  family.check_level(j + 1);

  const double M = static_cast<double>(std::max(std::abs(k_lo), std::abs(k_hi + 1)));
  const double L = family.tail_slope();
  const int top = family.top_level();

  int r0 = 1;
  while (!(j + r0 > top && std::ldexp(M, -(j + r0)) <= 0.25)) ++r0;

  // sum_{r > R} (L M 2^{-j-r})^2 / 2, valid for R >= r0 - 1
  auto tail = [&](int R) { return 0.5 * L * L * M * M * std::ldexp(1.0, -2 * (j + R)) / 3.0; };

  // best[R] = max_k sum_{r=R+1}^{r0-1} t_r(k)
  std::vector<double> best(static_cast<std::size_t>(r0), 0.0);
  if (r0 > 1) {
    std::vector<double> suffix(static_cast<std::size_t>(r0));
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      double acc = 0.0;
      suffix[static_cast<std::size_t>(r0 - 1)] = 0.0;
      for (int r = r0 - 1; r >= 1; --r) {
        acc += std::max(0.0, 1.0 - lower_factor(family, j + r, k));
        suffix[static_cast<std::size_t>(r - 1)] = acc;
      }
      for (int R = 0; R < r0; ++R) {
        best[static_cast<std::size_t>(R)] =
            std::max(best[static_cast<std::size_t>(R)], suffix[static_cast<std::size_t>(R)]);
      }
    }
  }

  Truncation out;
  out.tail_start = r0;
  for (int R = 0; R <= kMaxDepth; ++R) {
    const double bound =
        R < r0 ? best[static_cast<std::size_t>(R)] + tail(r0 - 1) : tail(R);
    if (bound <= tol) {
      out.depth = R;
      out.bound = bound;
      return out;
    }
  }
  const double best_bound = kMaxDepth < r0 ? best[kMaxDepth] + tail(r0 - 1) : tail(kMaxDepth);
  throw ConvergenceError("product tail criterion not reached within depth " +
                             std::to_string(kMaxDepth),
                         best_bound);
}

ScalingSpectrum::ScalingSpectrum(const MaskFamily& family, int j, double span, double tol)
    : family_(&family), j_(j), span_(span), tol_(tol) {
  const auto [k_lo, k_hi] = interval_range(j, span);
  trunc_ = truncation_depth(family, j, k_lo, k_hi, tol);

  const double X = std::ldexp(static_cast<double>(std::max(-k_lo, k_hi + 1)), -j);
  const double L = family.tail_slope();
  const double L2 = family.tail_curvature();
  const double C = std::max(L * L * X, L * L + L * L2 * X);
  der_depth_ = std::max(trunc_.depth, trunc_.tail_start - 1);
  while (der_depth_ < kMaxDepth && C * std::ldexp(1.0, -2 * der_depth_) / 3.0 > tol) {
    ++der_depth_;
  }
}

double ScalingSpectrum::value(double xi) const {
  double p = 1.0;
  for (int r = 1; r <= trunc_.depth; ++r) {
    p *= family_->value(j_ + r, std::ldexp(xi, -r));
    if (p == 0.0) return 0.0;
  }
  return p;
}

Deriv2 ScalingSpectrum::derivs(double xi, Side side) const {
  double p0 = 1.0;
  double p1 = 0.0;
  double p2 = 0.0;
  for (int r = 1; r <= der_depth_; ++r) {
    const Deriv2 f = family_->derivs(j_ + r, std::ldexp(xi, -r), side);
    const double f1 = std::ldexp(f[1], -r);
    const double f2 = std::ldexp(f[2], -2 * r);
    p2 = p2 * f[0] + 2.0 * p1 * f1 + p0 * f2;
    p1 = p1 * f[0] + p0 * f1;
    p0 = p0 * f[0];
  }
  return {p0, p1, p2};
}

bool ScalingSpectrum::is_breakpoint(double xi) const {
  const double scaled = std::ldexp(xi, j_);
  return scaled == std::floor(scaled);
}

ProductBounds product_bounds(const MaskFamily& family, int j, std::int64_t k_lo,
                             std::int64_t k_hi, double tol) {
  if (k_hi < k_lo) std::swap(k_lo, k_hi);
  ProductBounds out;
  out.j = j;
  out.k_lo = k_lo;
  out.tol = tol;
  const Truncation trunc = truncation_depth(family, j, k_lo, k_hi, tol);
  out.depth = trunc.depth;
  const auto count = static_cast<std::size_t>(k_hi - k_lo + 1);
  out.a.assign(count, 1.0);
  out.b.assign(count, 1.0);
  for (int r = 1; r <= out.depth; ++r) {
    std::vector<double> lo(count);
    std::vector<double> hi(count);
    for (std::size_t i = 0; i < count; ++i) {
      const std::int64_t k = k_lo + static_cast<std::int64_t>(i);
      lo[i] = lower_factor(family, j + r, k);
      hi[i] = upper_factor(family, j + r, k);
      out.a[i] *= lo[i];
      out.b[i] *= hi[i];
    }
    out.lower.push_back(std::move(lo));
    out.upper.push_back(std::move(hi));
  }
  return out;
}

ProductBounds product_bounds(const PeriodicMaskTable& table, int j, std::int64_t k_lo,
                             std::int64_t k_hi, double tol) {
  const StepFamily family(table);
  return product_bounds(family, j, k_lo, k_hi, tol);
}

SpectrumGrid eval_scaling_spectrum(const MaskFamily& family, int j, double span, int G,
                                   double tol) {
  if (G < 0) throw StructuralError("grid resolution G must be >= 0");
  const ScalingSpectrum spectrum(family, j, span, tol);
  const auto [k_lo, k_hi] = interval_range(j, span);
  const ProductBounds bounds = product_bounds(family, j, k_lo, k_hi, tol);

  SpectrumGrid grid;
  grid.j = j;
  grid.G = G;
  grid.span = span;
  grid.depth = spectrum.depth();
  grid.tail_bound = tol;
  const auto n_max = static_cast<std::int64_t>(std::floor(std::ldexp(span, j + G)));
  for (std::int64_t n = -n_max; n <= n_max; ++n) {
    const double xi = std::ldexp(static_cast<double>(n), -(j + G));
    const auto k = static_cast<std::int64_t>(std::floor(std::ldexp(xi, j)));
    const double v = spectrum.value(xi);
    grid.xi.push_back(xi);
    grid.value.push_back(v);
    grid.left_value.push_back(v);
    grid.interval_k.push_back(k);
    grid.lower_a.push_back(bounds.a_at(k));
    grid.upper_b.push_back(bounds.b_at(k));
    grid.exact_zero.push_back(v == 0.0 ? 1 : 0);
  }
  return grid;
}

std::pair<SpectrumGrid, SpectrumGrid> eval_spectrum_derivatives(const MaskFamily& family,
                                                                int j, double span, int G,
                                                                double tol) {
  if (G < 0) throw StructuralError("grid resolution G must be >= 0");
  const ScalingSpectrum spectrum(family, j, span, tol);
  std::pair<SpectrumGrid, SpectrumGrid> out;
  for (auto* g : {&out.first, &out.second}) {
    g->j = j;
    g->G = G;
    g->span = span;
    g->depth = spectrum.derivative_depth();
    g->tail_bound = tol;
  }
  const auto n_max = static_cast<std::int64_t>(std::floor(std::ldexp(span, j + G)));
  for (std::int64_t n = -n_max; n <= n_max; ++n) {
    const double xi = std::ldexp(static_cast<double>(n), -(j + G));
    const auto k = static_cast<std::int64_t>(std::floor(std::ldexp(xi, j)));
    const Deriv2 right = spectrum.derivs(xi, Side::kRight);
    const Deriv2 left = spectrum.is_breakpoint(xi) ? spectrum.derivs(xi, Side::kLeft) : right;
    for (int d = 1; d <= 2; ++d) {
      SpectrumGrid& g = d == 1 ? out.first : out.second;
      g.xi.push_back(xi);
      g.value.push_back(right[static_cast<std::size_t>(d)]);
      g.left_value.push_back(left[static_cast<std::size_t>(d)]);
      g.interval_k.push_back(k);
      g.lower_a.push_back(std::numeric_limits<double>::quiet_NaN());
      g.upper_b.push_back(std::numeric_limits<double>::quiet_NaN());
      g.exact_zero.push_back(right[static_cast<std::size_t>(d)] == 0.0 ? 1 : 0);
    }
  }
  return out;
}

void write_spectrum_csv(std::ostream& out, const SpectrumGrid& grid) {
  out << "xi,value,interval_k,lower_a,upper_b,tail_bound\n";
  for (std::size_t i = 0; i < grid.xi.size(); ++i) {
    out << fmt17(grid.xi[i]) << ',' << fmt17(grid.value[i]) << ',' << grid.interval_k[i] << ','
        << fmt17(grid.lower_a[i]) << ',' << fmt17(grid.upper_b[i]) << ','
        << fmt17(grid.tail_bound) << '\n';
  }
}

ConvergenceReport check_prodL2(const std::vector<double>& norms, int j_first) {
  std::vector<double> terms;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    terms.push_back(std::ldexp(norms[i], -(j_first + static_cast<int>(i))));
  }
  return extrapolate(std::move(terms), j_first);
}

ConvergenceReport check_prodL2(const LiftedFamily& family) {
  if (family.K() < 2) {
    ConvergenceReport report;
    report.applicable = false;
    report.verdict = "not-applicable";
    report.reason = "K = 1 masks have no square-integrable second derivative";
    report.j_first = family.min_level();
    return report;
  }
  std::vector<double> norms;
  for (int s = family.min_level(); s <= family.top_level(); ++s) {
    // |m''|^2 over a period folds to 2 * int_0^{1/4} (z')^4 + (z'')^2
    norms.push_back(std::sqrt(2.0 * family.mask(s).phase().energy_integral()));
  }
  return check_prodL2(norms, family.min_level());
}

ConvergenceReport check_my_prodL2(const std::vector<SplinePhase>& phases) {
  std::vector<double> terms;
  int j_first = phases.empty() ? 0 : phases.front().j();
  for (const auto& p : phases) terms.push_back(std::ldexp(std::sqrt(p.energy_integral()), -p.j()));
  return extrapolate(std::move(terms), j_first);
}

NormCheck check_spectrum_norm(const MaskFamily& family, int j, double span, double tol) {
  const ScalingSpectrum spectrum(family, j, span, tol);
  const auto [k_lo, k_hi] = interval_range(j, span);
  const GaussRule& g8 = gauss_legendre(8);
  const GaussRule& g16 = gauss_legendre(16);
  const double h = std::ldexp(1.0, -j);
  std::vector<double> parts8;
  std::vector<double> parts16;
  for (std::int64_t k = k_lo; k < k_hi; ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * h;
    for (int pass = 0; pass < 2; ++pass) {
      const GaussRule& rule = pass == 0 ? g8 : g16;
      double acc = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = spectrum.value(mid + 0.5 * h * rule.nodes[i]);
        acc += rule.weights[i] * v * v;
      }
      (pass == 0 ? parts8 : parts16).push_back(0.5 * h * acc);
    }
  }
  NormCheck out;
  const double i8 = pairwise_sum(parts8);
  out.norm_sq = pairwise_sum(parts16);
  out.quadrature_error = std::abs(out.norm_sq - i8);

  const std::int64_t width = k_hi - k_lo;
  const ProductBounds right = product_bounds(family, j, k_hi, k_hi + 3 * width / 2, tol);
  const ProductBounds left = product_bounds(family, j, k_lo - 3 * width / 2, k_lo - 1, tol);
  double tail = 0.0;
  for (double b : right.b) tail += b * b * h;
  for (double b : left.b) tail += b * b * h;
  out.tail_estimate = tail;
  out.ok = out.norm_sq - out.quadrature_error <= 1.0 + 1e-12;
  return out;
}

}  // namespace pwf
