#include "pwf/localization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pwf/quadrature.hpp"

namespace pwf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDecayRatio = 1e-8;
// A convergent verdict needs its extrapolated tail below this fraction of the moment.
constexpr double kTailRatio = 1e-6;
// Outer-octave contributions below this fraction of the total are treated as noise.
constexpr double kOctaveFloor = 1e-9;

// Running sums of the five moment integrals.
struct Moments {
  double i0 = 0.0;  // |F|^2
  double i1 = 0.0;  // xi |F|^2
  double i2 = 0.0;  // xi^2 |F|^2
  double j = 0.0;   // |F'|^2
  double c = 0.0;   // Im F' conj(F)
};

struct Octaves {
  double outer = 0.0;  // span/2 < |xi| <= span
  double inner = 0.0;  // span/4 < |xi| <= span/2
};

struct OctaveVerdict {
  bool diverges = false;
  double exponent = 0.0;
  double tail = 0.0;
};

OctaveVerdict classify(const Octaves& o, double total) {
  OctaveVerdict v;
  if (!(total > 0.0) || o.outer <= kOctaveFloor * total) return v;
  if (o.inner > 0.0 && o.outer >= o.inner) {
    v.diverges = true;
    v.exponent = std::log2(o.outer / o.inner);
    return v;
  }
  if (o.inner > 0.0) {
    const double q = o.outer / o.inner;
    v.tail = o.outer * q / (1.0 - q);
  }
  return v;
}

UCHReport finish(const Moments& m, const Moments& err, double deriv_err, const OctaveVerdict& freq,
                 const OctaveVerdict& time) {
  if (!(m.i0 > 0.0)) throw DomainError("spectrum has zero norm");
  UCHReport r;
  r.norm_sq = m.i0;
  r.freq_centre = kTwoPi * m.i1 / m.i0;
  r.time_centre = -m.c / (kTwoPi * m.i0);
  r.freq_var = std::max(0.0, kTwoPi * kTwoPi * (m.i2 / m.i0 - (m.i1 / m.i0) * (m.i1 / m.i0)));
  r.time_var = std::max(0.0, m.j / (kTwoPi * kTwoPi * m.i0) - r.time_centre * r.time_centre);
  r.quadrature_error = err.i2 + err.j + err.i0;
  r.tail_error = freq.tail + time.tail;
  r.derivative_error = deriv_err;

  if (freq.diverges || time.diverges) {
    r.converged = false;
    r.verdict = "infinite-variance";
    r.growth_exponent = std::max(freq.diverges ? freq.exponent : 0.0,
                                 time.diverges ? time.exponent : 0.0);
    if (freq.diverges) r.freq_var = kInf;
    if (time.diverges) r.time_var = kInf;
    r.uc = kInf;
    r.error_budget = kInf;
    return r;
  }
  r.uc = std::sqrt(r.time_var * r.freq_var);
  const double rel_freq = (m.i2 > 0.0 ? (err.i2 + freq.tail) / m.i2 : 0.0) + 2.0 * err.i0 / m.i0;
  const double rel_time =
      (m.j > 0.0 ? (err.j + time.tail + deriv_err) / m.j : 0.0) + 2.0 * err.i0 / m.i0;
  r.error_budget = 0.5 * r.uc * (rel_freq + rel_time) + 1e-12;
  return r;
}

void check_decay(const OctaveVerdict& fv, const OctaveVerdict& tv, const Moments& m, double edge,
                 double peak) {
  if (fv.diverges || tv.diverges) return;
  if (edge > kDecayRatio * peak) {
    throw DomainError("spectrum has not decayed within the span (edge/peak = " +
                      std::to_string(edge / peak) + ")");
  }
  if (fv.tail > kTailRatio * m.i2 || tv.tail > kTailRatio * m.j) {
    throw DomainError("second-moment tail beyond the span is not negligible");
  }
}

void octave_add(Octaves& o, double at, double span, double value) {
  const double a = std::abs(at);
  if (a > 0.5 * span) {
    o.outer += value;
  } else if (a > 0.25 * span) {
    o.inner += value;
  }
}

}  // namespace

UCHReport uc_heisenberg(const SpectrumFn& f, double span, double h) {
  if (!(span > 0.0) || !(h > 0.0)) throw StructuralError("span and cell width must be positive");
  const auto cells = static_cast<std::int64_t>(std::llround(2.0 * span / h));
  const GaussRule& g8 = gauss_legendre(8);
  const GaussRule& g16 = gauss_legendre(16);
  const double fd_step = 1e-5 * h;

  std::vector<double> s0, s1, s2, sj, sc;
  std::vector<double> e0, e2, ej, efd;
  Octaves freq_oct;
  Octaves time_oct;
  double peak = 0.0;
  double edge = 0.0;

  for (std::int64_t cell = 0; cell < cells; ++cell) {
    const double a = -span + static_cast<double>(cell) * h;
    const double mid = a + 0.5 * h;
    Moments m16;
    Moments m8;
    double jfd = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
      const GaussRule& rule = pass == 0 ? g16 : g8;
      Moments& m = pass == 0 ? m16 : m8;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = mid + 0.5 * h * rule.nodes[i];
        const double w = 0.5 * h * rule.weights[i];
        const auto [v, d] = f(x);
        const double p = std::norm(v);
        m.i0 += w * p;
        m.i1 += w * x * p;
        m.i2 += w * x * x * p;
        m.j += w * std::norm(d);
        m.c += w * std::imag(d * std::conj(v));
        if (pass == 0) {
          peak = std::max(peak, std::abs(v));
          if (cell == 0 || cell == cells - 1) edge = std::max(edge, std::abs(v));
        } else {
          const cplx fd = (f(x + fd_step).first - f(x - fd_step).first) / (2.0 * fd_step);
          jfd += w * std::norm(fd);
        }
      }
    }
    s0.push_back(m16.i0);
    s1.push_back(m16.i1);
    s2.push_back(m16.i2);
    sj.push_back(m16.j);
    sc.push_back(m16.c);
    e0.push_back(m16.i0 - m8.i0);
    e2.push_back(m16.i2 - m8.i2);
    ej.push_back(m16.j - m8.j);
    efd.push_back(m8.j - jfd);
    octave_add(freq_oct, mid, span, m16.i2);
    octave_add(time_oct, mid, span, m16.j);
  }

  Moments m{pairwise_sum(s0), pairwise_sum(s1), pairwise_sum(s2), pairwise_sum(sj),
            pairwise_sum(sc)};
  Moments err;
  err.i0 = std::abs(pairwise_sum(e0));
  err.i2 = std::abs(pairwise_sum(e2));
  err.j = std::abs(pairwise_sum(ej));
  const double deriv_err = std::abs(pairwise_sum(efd));

  const OctaveVerdict fv = classify(freq_oct, m.i2);
  const OctaveVerdict tv = classify(time_oct, m.j);
  check_decay(fv, tv, m, edge, peak);
  return finish(m, err, deriv_err, fv, tv);
}

UCHReport uc_heisenberg(const SpectrumGrid& spectrum, const SpectrumGrid* derivative) {
  const std::size_t n = spectrum.xi.size();
  if (n < 3) throw StructuralError("spectrum grid needs at least three points");
  if (derivative != nullptr && derivative->xi.size() != n) {
    throw StructuralError("derivative grid does not match the spectrum grid");
  }
  const double h = spectrum.xi[1] - spectrum.xi[0];
  const double span = std::max(std::abs(spectrum.xi.front()), std::abs(spectrum.xi.back()));

  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (derivative != nullptr) {
      d[i] = derivative->value[i];
    } else if (i == 0) {
      d[i] = (spectrum.value[1] - spectrum.value[0]) / h;
    } else if (i + 1 == n) {
      d[i] = (spectrum.value[i] - spectrum.value[i - 1]) / h;
    } else {
      d[i] = (spectrum.value[i + 1] - spectrum.value[i - 1]) / (2.0 * h);
    }
  }

  // Trapezoid sums; Simpson on the same points for the error estimate.
  auto integrate = [&](auto&& g, bool simpson) {
    std::vector<double> terms;
    for (std::size_t i = 0; i < n; ++i) {
      double w = h;
      if (simpson && n % 2 == 1) {
        w = (i == 0 || i + 1 == n) ? h / 3.0 : (i % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
      } else if (i == 0 || i + 1 == n) {
        w = 0.5 * h;
      }
      terms.push_back(w * g(i));
    }
    return pairwise_sum(terms);
  };
  auto p0 = [&](std::size_t i) { return spectrum.value[i] * spectrum.value[i]; };
  auto p1 = [&](std::size_t i) { return spectrum.xi[i] * p0(i); };
  auto p2 = [&](std::size_t i) { return spectrum.xi[i] * spectrum.xi[i] * p0(i); };
  auto pj = [&](std::size_t i) { return d[i] * d[i]; };

  Moments m{integrate(p0, false), integrate(p1, false), integrate(p2, false),
            integrate(pj, false), 0.0};
  Moments err;
  err.i0 = std::abs(m.i0 - integrate(p0, true));
  err.i2 = std::abs(m.i2 - integrate(p2, true));
  err.j = std::abs(m.j - integrate(pj, true));

  Octaves freq_oct;
  Octaves time_oct;
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    octave_add(freq_oct, spectrum.xi[i], span, h * p2(i));
    octave_add(time_oct, spectrum.xi[i], span, h * pj(i));
    peak = std::max(peak, std::abs(spectrum.value[i]));
  }
  const double edge = std::max(std::abs(spectrum.value.front()), std::abs(spectrum.value.back()));
  const OctaveVerdict fv = classify(freq_oct, m.i2);
  const OctaveVerdict tv = classify(time_oct, m.j);
  check_decay(fv, tv, m, edge, peak);
  return finish(m, err, 0.0, fv, tv);
}

UCBReport uc_breitenberger(const CoefficientSeries& series) {
  UCBReport r;
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  int nonzero = 0;
  for (std::int64_t k = -series.N; k <= series.N; ++k) {
    const double p = std::norm(series.at(k));
    if (p > 0.0) ++nonzero;
    const auto kd = static_cast<double>(k);
    s0 += p;
    s1 += kd * p;
    s2 += kd * kd * p;
    r.tau += series.at(k - 1) * std::conj(series.at(k));
  }
  if (!(s0 > 0.0)) throw DomainError("zero-norm coefficient series");
  if (nonzero == 1 && series.tail == 0.0) {
    throw DomainError("single harmonic C e^{ikx}: the uncertainty product is undefined");
  }
  r.norm_sq = s0;
  // Missing terms change tau by at most 2 sqrt(tail * energy) + tail.
  r.tail_budget = 2.0 * std::sqrt(series.tail * s0) + series.tail;
  r.var_f = std::max(0.0, s2 / s0 - (s1 / s0) * (s1 / s0));
  const double t = std::abs(r.tau);
  if (t <= std::max(r.tail_budget, 1e-15 * s0)) {
    r.degenerate = true;
    r.var_a = kInf;
    r.uc = kInf;
    return r;
  }
  r.var_a = std::max(0.0, s0 * s0 / (t * t) - 1.0);
  r.uc = std::sqrt(r.var_a * r.var_f);
  return r;
}

SpectrumFn wavelet_spectrum(const MaskFamily& masks, const ScalingSpectrum& phi_next, int j,
                            bool auxiliary) {
  const int level = j + 1;
  auto aux = [&masks, &phi_next, level](double eta) -> std::pair<cplx, cplx> {
    const double x = 0.5 * eta;
    const cplx e = std::exp(cplx(0.0, std::numbers::pi * eta));
    const Deriv2 m = masks.derivs(level, x + 0.5, Side::kRight);
    const Deriv2 p = phi_next.derivs(x, Side::kRight);
    const cplx value = e * m[0] * p[0];
    const cplx deriv = cplx(0.0, std::numbers::pi) * value + e * (0.5 * m[1]) * p[0] +
                       e * m[0] * (0.5 * p[1]);
    return {value, deriv};
  };
  if (auxiliary) return aux;
  const double scale = std::pow(2.0, -0.5 * j);
  return [aux, j, scale](double xi) -> std::pair<cplx, cplx> {
    const auto [v, d] = aux(std::ldexp(xi, -j));
    return {scale * v, std::ldexp(scale, -j) * d};
  };
}

UCPair uc_pair_for_level(const PeriodicMaskTable& table, const MaskFamily& masks, int j,
                         std::int64_t N, double span, double tol) {
  UCPair pair;
  pair.j = j;
  std::vector<std::string> flags;
  const PeriodicFrameLevel periodic = build_periodic_level(table, j, N, tol);
  try {
    pair.periodic = uc_breitenberger(periodic.psi);
    if (pair.periodic.degenerate) flags.push_back("VARA_INF");
  } catch (const DomainError&) {
    pair.periodic.uc = std::numeric_limits<double>::quiet_NaN();
    flags.push_back("UCB_UNDEFINED");
  }

  const ScalingSpectrum phi_next(masks, j + 1, span, tol);
  auto heisenberg = [&](bool auxiliary, UCHReport& out) {
    try {
      const double s = auxiliary ? span : std::ldexp(span, j);
      const double h = auxiliary ? std::ldexp(1.0, -j) : 1.0;
      out = uc_heisenberg(wavelet_spectrum(masks, phi_next, j, auxiliary), s, h);
      return true;
    } catch (const DomainError&) {
      out.uc = std::numeric_limits<double>::quiet_NaN();
      out.converged = false;
      out.verdict = "insufficient-decay";
      return false;
    }
  };
  if (!heisenberg(false, pair.nonstationary)) flags.push_back("UCH_DECAY");
  heisenberg(true, pair.auxiliary);
  if (pair.nonstationary.verdict == "infinite-variance") flags.push_back("UCH_INF");

  const double b = pair.periodic.uc;
  const double h = pair.nonstationary.uc;
  pair.gap = (std::isfinite(b) && std::isfinite(h)) ? std::abs(b - h)
                                                     : std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < flags.size(); ++i) {
    pair.flags += (i ? "|" : "") + flags[i];
  }
  return pair;
}

UCHReport gaussian_self_test() {
  const SpectrumFn gaussian = [](double xi) -> std::pair<cplx, cplx> {
    const double v = std::exp(-std::numbers::pi * xi * xi);
    return {cplx(v, 0.0), cplx(-2.0 * std::numbers::pi * xi * v, 0.0)};
  };
  return uc_heisenberg(gaussian, 8.0, 0.5);
}

}  // namespace pwf
