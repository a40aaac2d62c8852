#include "pwf/spline_phase.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace pwf {

namespace {

// m! / (m - l)!
double falling(int m, int l) {
  double f = 1.0;
  for (int i = 0; i < l; ++i) f *= static_cast<double>(m - i);
  return f;
}

// p^{(d)}(s) / d! for p = sum c_m s^m
double taylor_coeff(const std::vector<double>& c, double s, int d) {
  double acc = 0.0;
  for (int m = static_cast<int>(c.size()) - 1; m >= d; --m) {
    acc = acc * s + c[static_cast<std::size_t>(m)] * falling(m, d) / falling(d, d);
  }
  return acc;
}

std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> out;
  for (std::size_t m = 1; m < c.size(); ++m) out.push_back(static_cast<double>(m) * c[m]);
  if (out.empty()) out.push_back(0.0);
  return out;
}

std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) out[i + k] += a[i] * b[k];
  return out;
}

double integral01(const std::vector<double>& c) {
  double acc = 0.0;
  for (std::size_t m = 0; m < c.size(); ++m) acc += c[m] / static_cast<double>(m + 1);
  return acc;
}

double abs_sum(const std::vector<double>& c) {
  double acc = 0.0;
  for (double v : c) acc += std::abs(v);
  return acc;
}

struct Row {
  std::vector<std::pair<int, double>> entries;
  double rhs = 0.0;
};

}  // namespace

SplinePhase::SplinePhase(int j, int K, std::vector<std::vector<double>> coeffs,
                         double condition)
    : j_(j), K_(K), coeffs_(std::move(coeffs)), condition_(condition) {
  if (static_cast<std::int64_t>(coeffs_.size()) != pow2(j) / 4) {
    throw StructuralError("spline at level " + std::to_string(j) + " needs " +
                          std::to_string(pow2(j) / 4) + " pieces");
  }
}

double SplinePhase::knot(int i) const { return std::ldexp(static_cast<double>(i), -j_); }

std::vector<double> SplinePhase::knots() const {
  std::vector<double> out;
  for (int i = 0; i <= pieces(); ++i) out.push_back(knot(i));
  return out;
}

int SplinePhase::piece_index(double xi, Side side) const {
  const double scaled = std::ldexp(xi, j_);
  int i = static_cast<int>(std::floor(scaled));
  if (side == Side::kLeft && scaled == std::floor(scaled)) --i;
  return std::clamp(i, 0, pieces() - 1);
}

double SplinePhase::eval(double xi, int d, Side side) const {
  const int i = piece_index(xi, side);
  const double s = std::ldexp(xi, j_) - static_cast<double>(i);
  const auto& c = coeffs_[static_cast<std::size_t>(i)];
  double acc = 0.0;
  for (int m = static_cast<int>(c.size()) - 1; m >= d; --m) {
    acc = acc * s + c[static_cast<std::size_t>(m)] * falling(m, d);
  }
  return std::ldexp(acc, d * j_);
}

Jet SplinePhase::jet(double xi, int order, Side side) const {
  const int i = piece_index(xi, side);
  const double s = std::ldexp(xi, j_) - static_cast<double>(i);
  const auto& c = coeffs_[static_cast<std::size_t>(i)];
  Jet out(static_cast<std::size_t>(order + 1));
  for (int d = 0; d <= order; ++d) {
    out[static_cast<std::size_t>(d)] = std::ldexp(taylor_coeff(c, s, d), d * j_);
  }
  return out;
}

double SplinePhase::slope_bound() const {
  double best = 0.0;
  for (const auto& c : coeffs_) best = std::max(best, abs_sum(derivative(c)));
  return std::ldexp(best, j_);
}

double SplinePhase::curvature_bound() const {
  double best = 0.0;
  for (const auto& c : coeffs_) best = std::max(best, abs_sum(derivative(derivative(c))));
  return std::ldexp(best, 2 * j_);
}

double SplinePhase::continuity_residual() const {
  double worst = 0.0;
  for (int i = 1; i < pieces(); ++i) {
    const auto& left = coeffs_[static_cast<std::size_t>(i - 1)];
    const auto& right = coeffs_[static_cast<std::size_t>(i)];
    for (int l = 0; l < K_; ++l) {
      const double a = taylor_coeff(left, 1.0, l);
      const double b = l < static_cast<int>(right.size()) ? right[static_cast<std::size_t>(l)] : 0.0;
      worst = std::max(worst, std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}));
    }
  }
  return worst;
}

double SplinePhase::energy_integral() const {
  double acc = 0.0;
  for (const auto& c : coeffs_) {
    const auto d1 = derivative(c);
    const auto d2 = derivative(d1);
    const auto sq = multiply(d1, d1);
    acc += integral01(multiply(sq, sq)) + integral01(multiply(d2, d2));
  }
  return std::ldexp(acc, 3 * j_);
}

SplinePhase fit_phase_spline(std::span<const double> theta, int j, int K) {
  if (K < 1 || K > kMaxSplineOrder) {
    throw StructuralError("spline order K must lie in 1.." + std::to_string(kMaxSplineOrder) +
                          ", got " + std::to_string(K));
  }
  if (j < 2) throw StructuralError("phase splines need level j >= 2");
  const int n = static_cast<int>(pow2(j) / 4);
  if (static_cast<int>(theta.size()) < n + 1) {
    throw StructuralError("theta level too short for spline fit");
  }

  std::vector<std::vector<double>> coeffs(static_cast<std::size_t>(n));
  if (K == 1) {
    for (int i = 0; i < n; ++i) {
      coeffs[static_cast<std::size_t>(i)] = {theta[static_cast<std::size_t>(i)],
                                             theta[static_cast<std::size_t>(i + 1)] -
                                                 theta[static_cast<std::size_t>(i)]};
    }
    return SplinePhase(j, K, std::move(coeffs), 1.0);
  }

  const int extra = (K - 1) / 2;
  std::vector<int> offset(static_cast<std::size_t>(n) + 1);
  std::vector<int> degree(static_cast<std::size_t>(n), K);
  degree[0] = K + extra;
  offset[0] = 0;
  for (int i = 0; i < n; ++i) {
    offset[static_cast<std::size_t>(i) + 1] = offset[static_cast<std::size_t>(i)] +
                                              degree[static_cast<std::size_t>(i)] + 1;
  }
  const int size = offset[static_cast<std::size_t>(n)];

  // l-th s-derivative of piece i at s = 1
  auto end_derivative = [&](int i, int l, Row& row, double sign) {
    for (int m = l; m <= degree[static_cast<std::size_t>(i)]; ++m) {
      row.entries.push_back({offset[static_cast<std::size_t>(i)] + m, sign * falling(m, l)});
    }
  };

  std::vector<Row> rows;
  rows.push_back({{{0, 1.0}}, theta[0]});
  for (int l = 1; l < K; ++l) rows.push_back({{{l, 1.0}}, 0.0});
  for (int i = 0; i < n; ++i) {
    Row interp;
    end_derivative(i, 0, interp, 1.0);
    interp.rhs = theta[static_cast<std::size_t>(i + 1)];
    rows.push_back(interp);
    if (i + 1 < n) {
      for (int l = 1; l < K; ++l) {
        Row cont;
        end_derivative(i, l, cont, 1.0);
        cont.entries.push_back({offset[static_cast<std::size_t>(i) + 1] + l, -falling(l, l)});
        rows.push_back(cont);
      }
      rows.push_back({{{offset[static_cast<std::size_t>(i) + 1], 1.0}},
                      theta[static_cast<std::size_t>(i + 1)]});
    }
  }
  for (int l = 2; l < K; l += 2) {
    Row end;
    end_derivative(n - 1, l, end, 1.0);
    rows.push_back(end);
  }
  if (static_cast<int>(rows.size()) != size) {
    throw StructuralError("spline system assembly mismatch");
  }

  int kl = 0;
  int ku = 0;
  for (int r = 0; r < size; ++r) {
    auto& row = rows[static_cast<std::size_t>(r)];
    double scale = 0.0;
    for (auto& [col, v] : row.entries) {
      kl = std::max(kl, r - col);
      ku = std::max(ku, col - r);
      scale = std::max(scale, std::abs(v));
    }
    for (auto& e : row.entries) e.second /= scale;
    row.rhs /= scale;
  }

  const int ldab = 2 * kl + ku + 1;
  std::vector<double> ab(static_cast<std::size_t>(ldab) * static_cast<std::size_t>(size), 0.0);
  std::vector<double> rhs(static_cast<std::size_t>(size));
  std::vector<double> colsum(static_cast<std::size_t>(size), 0.0);
  for (int r = 0; r < size; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    rhs[static_cast<std::size_t>(r)] = row.rhs;
    for (const auto& [col, v] : row.entries) {
      ab[static_cast<std::size_t>(kl + ku + r - col) +
         static_cast<std::size_t>(col) * static_cast<std::size_t>(ldab)] += v;
      colsum[static_cast<std::size_t>(col)] += std::abs(v);
    }
  }
  const double anorm = *std::max_element(colsum.begin(), colsum.end());

  std::vector<lapack_int> ipiv(static_cast<std::size_t>(size));
  lapack_int info =
      LAPACKE_dgbtrf(LAPACK_COL_MAJOR, size, size, kl, ku, ab.data(), ldab, ipiv.data());
  if (info > 0) {
    throw SingularSystemError("spline system is singular at level " + std::to_string(j),
                              HUGE_VAL);
  }
  double rcond = 0.0;
  LAPACKE_dgbcon(LAPACK_COL_MAJOR, '1', size, kl, ku, ab.data(), ldab, ipiv.data(), anorm,
                 &rcond);
  const double condition = rcond > 0.0 ? 1.0 / rcond : HUGE_VAL;
  if (condition > kMaxSplineCondition) {
    throw SingularSystemError("spline system ill-conditioned at level " + std::to_string(j) +
                                  " (condition " + std::to_string(condition) + ")",
                              condition);
  }
  info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', size, kl, ku, 1, ab.data(), ldab, ipiv.data(),
                        rhs.data(), size);
  if (info != 0) {
    throw SingularSystemError("banded solve failed", condition);
  }

  for (int i = 0; i < n; ++i) {
    const auto first = rhs.begin() + offset[static_cast<std::size_t>(i)];
    coeffs[static_cast<std::size_t>(i)].assign(
        first, first + degree[static_cast<std::size_t>(i)] + 1);
  }
  // Exact left-end data; the solve reproduces these only to rounding.
  coeffs[0][0] = theta[0];
  for (int l = 1; l < K; ++l) coeffs[0][static_cast<std::size_t>(l)] = 0.0;
  return SplinePhase(j, K, std::move(coeffs), condition);
}

SplinePhase fit_phase_spline(const ThetaTable& theta, int j, int K) {
  return fit_phase_spline(theta.level(j), j, K);
}

}  // namespace pwf
