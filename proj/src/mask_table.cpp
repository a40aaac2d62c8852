#include "pwf/mask_table.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pwf {

namespace {

void check_levels(int j_min, const std::vector<std::vector<double>>& levels,
                  const char* what) {
  if (j_min < 1) {
    throw StructuralError(std::string(what) + ": j_min must be >= 1, got " +
                          std::to_string(j_min));
  }
  if (levels.empty()) {
    throw StructuralError(std::string(what) + ": no levels");
  }
  if (j_min + static_cast<int>(levels.size()) - 1 > 30) {
    throw StructuralError(std::string(what) + ": levels above j = 30 are not supported");
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const int j = j_min + static_cast<int>(i);
    if (static_cast<std::int64_t>(levels[i].size()) != pow2(j)) {
      throw StructuralError(std::string(what) + ": level " + std::to_string(j) +
                            " has " + std::to_string(levels[i].size()) +
                            " entries, expected " + std::to_string(pow2(j)));
    }
  }
}

}  // namespace

PeriodicMaskTable::PeriodicMaskTable(int j_min, std::vector<std::vector<double>> levels)
    : j_min_(j_min), levels_(std::move(levels)) {
  check_levels(j_min_, levels_, "mask table");
}

std::span<const double> PeriodicMaskTable::level(int j) const {
  if (!has_level(j)) {
    throw StructuralError("mask table has no level " + std::to_string(j));
  }
  return levels_[static_cast<std::size_t>(j - j_min_)];
}

double PeriodicMaskTable::nu(int j, std::int64_t k) const {
  const auto row = level(j);
  return row[static_cast<std::size_t>(wrap_index(k, pow2(j)))];
}

double PeriodicMaskTable::mu(int j, std::int64_t k) const {
  return std::numbers::sqrt2 * nu(j, k);
}

ThetaTable::ThetaTable(int j_min, std::vector<std::vector<double>> levels)
    : j_min_(j_min), levels_(std::move(levels)) {
  check_levels(j_min_, levels_, "theta table");
}

std::span<const double> ThetaTable::level(int j) const {
  if (j < j_min() || j > j_max()) {
    throw StructuralError("theta table has no level " + std::to_string(j));
  }
  return levels_[static_cast<std::size_t>(j - j_min_)];
}

double ThetaTable::theta(int j, std::int64_t k) const {
  const auto row = level(j);
  return row[static_cast<std::size_t>(wrap_index(k, pow2(j)))];
}

ValidationReport validate_mask_table(const PeriodicMaskTable& table, double tol) {
  ValidationReport report;
  report.tol = tol;
  for (auto name : {invariant::kRange, invariant::kQuadrature, invariant::kSymmetry,
                    invariant::kUnitAtZero, invariant::kQuarterValue}) {
    report.max_residual[std::string(name)] = 0.0;
  }

  auto record = [&](std::string_view name, int j, std::int64_t k, double residual) {
    auto& worst = report.max_residual[std::string(name)];
    worst = std::max(worst, residual);
    if (residual > tol) {
      report.violations.push_back({std::string(name), j, k, residual});
    }
  };

  for (int j = table.j_min(); j <= table.j_max(); ++j) {
    const auto row = table.level(j);
    const std::int64_t period = pow2(j);
    const std::int64_t half = period / 2;

    // Collect per level, then emit sorted by k so the report order is (j, k).
    std::vector<Violation> level_violations;
    const auto before = report.violations.size();

    for (std::int64_t k = 0; k < period; ++k) {
      const double v = row[static_cast<std::size_t>(k)];
      const double residual = std::isfinite(v) ? std::max({0.0, -v, v - 1.0}) : HUGE_VAL;
      record(invariant::kRange, j, k, residual);
    }
    for (std::int64_t k = 0; k < half; ++k) {
      const double a = row[static_cast<std::size_t>(k)];
      const double b = row[static_cast<std::size_t>(k + half)];
      record(invariant::kQuadrature, j, k, std::abs(a * a + b * b - 1.0));
    }
    for (std::int64_t k = 1; k < half; ++k) {
      record(invariant::kSymmetry, j, k,
             std::abs(row[static_cast<std::size_t>(k)] -
                      row[static_cast<std::size_t>(period - k)]));
    }
    record(invariant::kUnitAtZero, j, 0, std::abs(row[0] - 1.0));
    if (j >= 2) {
      const std::int64_t q = period / 4;
      record(invariant::kQuarterValue, j, q,
             std::abs(row[static_cast<std::size_t>(q)] - std::numbers::sqrt2 / 2));
    }

    level_violations.assign(report.violations.begin() + static_cast<std::ptrdiff_t>(before),
                            report.violations.end());
    std::stable_sort(level_violations.begin(), level_violations.end(),
                     [](const Violation& x, const Violation& y) { return x.k < y.k; });
    std::copy(level_violations.begin(), level_violations.end(),
              report.violations.begin() + static_cast<std::ptrdiff_t>(before));
  }
  return report;
}

ThetaTable theta_of(const PeriodicMaskTable& table) {
  std::vector<std::vector<double>> levels;
  for (int j = table.j_min(); j <= table.j_max(); ++j) {
    const auto row = table.level(j);
    const std::int64_t period = pow2(j);
    const std::int64_t half = period / 2;
    std::vector<double> out(row.size());
    for (std::int64_t k = 0; k < period; ++k) {
      const double c = std::clamp(row[static_cast<std::size_t>(k)], 0.0, 1.0);
      const double s =
          std::clamp(row[static_cast<std::size_t>(wrap_index(k + half, period))], 0.0, 1.0);
      out[static_cast<std::size_t>(k)] = std::atan2(s, c);
    }
    levels.push_back(std::move(out));
  }
  return ThetaTable(table.j_min(), std::move(levels));
}

PeriodicMaskTable table_from_theta(const ThetaTable& theta) {
  std::vector<std::vector<double>> levels;
  for (int j = theta.j_min(); j <= theta.j_max(); ++j) {
    const auto row = theta.level(j);
    std::vector<double> out(row.size());
    std::transform(row.begin(), row.end(), out.begin(), [](double t) { return std::cos(t); });
    levels.push_back(std::move(out));
  }
  return PeriodicMaskTable(theta.j_min(), std::move(levels));
}

Family parse_family(std::string_view name) {
  if (name == "haar_cos") return Family::kHaarCos;
  if (name == "meyer_smooth") return Family::kMeyerSmooth;
  throw StructuralError("unknown mask family '" + std::string(name) + "'");
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kHaarCos:
      return "haar_cos";
    case Family::kMeyerSmooth:
      return "meyer_smooth";
  }
  return "unknown";
}

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

PeriodicMaskTable builtin_family(Family family, int j_min, int j_max,
                                 const FamilyParams& params) {
  if (j_min < 2) {
    throw StructuralError("builtin families require j_min >= 2");
  }
  if (j_max < j_min) {
    throw StructuralError("builtin families require j_max >= j_min");
  }
  const double width = params.transition;
  if (!(width > 0.0 && width <= 1.0)) {
    throw StructuralError("meyer_smooth transition must lie in (0, 1]");
  }

  std::vector<std::vector<double>> levels;
  for (int j = j_min; j <= j_max; ++j) {
    const std::int64_t period = pow2(j);
    const std::int64_t half = period / 2;
    const std::int64_t quarter = period / 4;

    // Phase at symmetric index a in [0, 2^{j-1}]; phase(half - a) = pi/2 - phase(a).
    auto phase = [&](std::int64_t a) -> double {
      if (family == Family::kHaarCos) {
        return std::numbers::pi * static_cast<double>(a) / static_cast<double>(period);
      }
      const double t = static_cast<double>(a) / static_cast<double>(half);
      double u = 0.5;
      if (a != quarter) {
        u = std::clamp((t - (1.0 - width) / 2.0) / width, 0.0, 1.0);
      }
      return std::numbers::pi / 2.0 * smoothstep(u);
    };

    std::vector<double> row(static_cast<std::size_t>(period));
    for (std::int64_t k = 0; k < period; ++k) {
      const std::int64_t a = std::min(k, period - k);
      // Evaluate with the smaller angle so both halves of the quadrature pair
      // use the same argument: cos on the first quarter, sin of the complement after.
      row[static_cast<std::size_t>(k)] =
          a <= quarter ? std::cos(phase(a)) : std::sin(phase(half - a));
    }
    levels.push_back(std::move(row));
  }
  return PeriodicMaskTable(j_min, std::move(levels));
}

}  // namespace pwf
