#include "pwf/lifted_mask.hpp"

#include <algorithm>
#include <cmath>

namespace pwf {

namespace {

Side flip(Side s) { return s == Side::kLeft ? Side::kRight : Side::kLeft; }

struct Branch {
  double a = 0.0;     // reduced argument in [0, 1/2]
  Side side = Side::kRight;
  bool mirrored = false;
  bool cosine = true;
  double u = 0.0;     // 1/2 - a on the sine branch
  Side u_side = Side::kRight;
};

Branch reduce(double xi, Side side) {
  Branch b;
  const double x = side == Side::kRight ? xi - std::floor(xi + 0.5) : xi - std::ceil(xi - 0.5);
  if (x < 0.0 || (x == 0.0 && side == Side::kLeft)) {
    b.a = -x;
    b.side = flip(side);
    b.mirrored = true;
  } else {
    b.a = x;
    b.side = side;
  }
  b.cosine = b.side == Side::kRight ? b.a < 0.25 : b.a <= 0.25;
  if (!b.cosine) {
    b.u = 0.5 - b.a;
    b.u_side = flip(b.side);
  }
  return b;
}

}  // namespace

double LiftedMask::value(double xi) const {
  const Branch b = reduce(xi, Side::kRight);
  return b.cosine ? std::cos(phase_.eval(b.a, 0, b.side))
                  : std::sin(phase_.eval(b.u, 0, b.u_side));
}

Deriv2 LiftedMask::derivs(double xi, Side side) const {
  const Branch b = reduce(xi, side);
  Deriv2 out{};
  if (b.cosine) {
    const double z = phase_.eval(b.a, 0, b.side);
    const double z1 = phase_.eval(b.a, 1, b.side);
    const double z2 = phase_.eval(b.a, 2, b.side);
    const double c = std::cos(z);
    const double s = std::sin(z);
    out = {c, -s * z1, -c * z1 * z1 - s * z2};
  } else {
    const double z = phase_.eval(b.u, 0, b.u_side);
    const double z1 = phase_.eval(b.u, 1, b.u_side);
    const double z2 = phase_.eval(b.u, 2, b.u_side);
    const double c = std::cos(z);
    const double s = std::sin(z);
    out = {s, -c * z1, -s * z1 * z1 + c * z2};
  }
  if (b.mirrored) out[1] = -out[1];
  return out;
}

Jet LiftedMask::jet(double xi, int order, Side side) const {
  const Branch b = reduce(xi, side);
  Jet s;
  Jet c;
  Jet out;
  if (b.cosine) {
    jet_sin_cos(phase_.jet(b.a, order, b.side), s, c);
    out = c;
  } else {
    jet_sin_cos(jet_reflect(phase_.jet(b.u, order, b.u_side)), s, c);
    out = s;
  }
  return b.mirrored ? jet_reflect(out) : out;
}

bool LiftedMask::is_breakpoint(double xi) const {
  const double scaled = std::ldexp(xi, j());
  return scaled == std::floor(scaled);
}

double eval_mask(const LiftedMask& mask, double xi, int d) {
  if (d < 0 || d > 2) throw StructuralError("eval_mask supports derivative orders 0..2");
  if (d == 0) return mask.value(xi);
  const auto right = mask.derivs(xi, Side::kRight);
  if (!mask.is_breakpoint(xi)) return right[static_cast<std::size_t>(d)];
  const auto left = mask.derivs(xi, Side::kLeft);
  const double l = left[static_cast<std::size_t>(d)];
  const double r = right[static_cast<std::size_t>(d)];
  if (std::abs(l - r) > kBreakpointTol * std::max(1.0, std::max(std::abs(l), std::abs(r)))) {
    throw BreakpointError("one-sided derivatives of order " + std::to_string(d) +
                              " differ at xi = " + std::to_string(xi),
                          l, r);
  }
  return 0.5 * (l + r);
}

double SmoothnessReport::max_mismatch() const {
  double worst = 0.0;
  for (double v : mismatch_by_order) worst = std::max(worst, v);
  return worst;
}

bool SmoothnessReport::ok() const {
  return max_mismatch() <= tol && half_derivative_max <= tol;
}

SmoothnessReport verify_mask_smoothness(const LiftedMask& mask, double tol) {
  SmoothnessReport report;
  report.tol = tol;
  const int K = mask.K();
  report.mismatch_by_order.assign(static_cast<std::size_t>(K), 0.0);
  report.spline_continuity = mask.phase().continuity_residual();

  double worst = -1.0;
  const std::int64_t count = pow2(mask.j()) / 2;
  for (std::int64_t k = 0; k <= count; ++k) {
    const double xi = std::ldexp(static_cast<double>(k), -mask.j());
    const Jet left = mask.jet(xi, K - 1, Side::kLeft);
    const Jet right = mask.jet(xi, K - 1, Side::kRight);
    for (int l = 0; l < K; ++l) {
      const double a = jet_derivative(left, static_cast<std::size_t>(l));
      const double b = jet_derivative(right, static_cast<std::size_t>(l));
      const double diff = std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
      auto& slot = report.mismatch_by_order[static_cast<std::size_t>(l)];
      slot = std::max(slot, diff);
      if (diff > worst) {
        worst = diff;
        report.worst_xi = xi;
      }
    }
  }
  const Jet half = mask.jet(0.5, K - 1, Side::kRight);
  const Jet half_left = mask.jet(0.5, K - 1, Side::kLeft);
  for (int l = 1; l < K; ++l) {
    report.half_derivative_max =
        std::max({report.half_derivative_max,
                  std::abs(jet_derivative(half, static_cast<std::size_t>(l))),
                  std::abs(jet_derivative(half_left, static_cast<std::size_t>(l)))});
  }
  return report;
}

}  // namespace pwf
