#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pwf/errors.hpp"

namespace pwf {

/// 2^j as a 64-bit integer.
inline std::int64_t pow2(int j) { return std::int64_t{1} << j; }

/// Reduce k into [0, period) for a power-of-two period.
inline std::int64_t wrap_index(std::int64_t k, std::int64_t period) {
  const std::int64_t r = k % period;
  return r < 0 ? r + period : r;
}

/**
 * Two-parameter periodic scaling-mask table nu^j_k.
 *
 * Only k = 0 .. 2^j - 1 is stored per level; any other k is reduced by
 * 2^j-periodicity. Symmetry nu^j_{-k} = nu^j_k is a validated property and is
 * not enforced by the representation.
 */
class PeriodicMaskTable {
 public:
  PeriodicMaskTable(int j_min, std::vector<std::vector<double>> levels);

  int j_min() const { return j_min_; }
  int j_max() const { return j_min_ + static_cast<int>(levels_.size()) - 1; }
  bool has_level(int j) const { return j >= j_min() && j <= j_max(); }

  std::span<const double> level(int j) const;
  double nu(int j, std::int64_t k) const;
  /// mu^j_k = sqrt(2) nu^j_k
  double mu(int j, std::int64_t k) const;

 private:
  int j_min_;
  std::vector<std::vector<double>> levels_;
};

/// Phases theta^j_k = arccos nu^j_k, same index structure as the mask table.
class ThetaTable {
 public:
  ThetaTable(int j_min, std::vector<std::vector<double>> levels);

  int j_min() const { return j_min_; }
  int j_max() const { return j_min_ + static_cast<int>(levels_.size()) - 1; }
  std::span<const double> level(int j) const;
  double theta(int j, std::int64_t k) const;

 private:
  int j_min_;
  std::vector<std::vector<double>> levels_;
};

struct Violation {
  std::string invariant;
  int j = 0;
  std::int64_t k = 0;
  double residual = 0.0;
};

/// Result of validate_mask_table. Violations are ordered by j, then k.
struct ValidationReport {
  std::vector<Violation> violations;
  /// Maximum deviation per invariant class, whether or not it exceeded tol.
  std::map<std::string, double> max_residual;
  double tol = 0.0;

  bool ok() const { return violations.empty(); }
};

namespace invariant {
inline constexpr std::string_view kRange = "range";
inline constexpr std::string_view kQuadrature = "quadrature";
inline constexpr std::string_view kSymmetry = "symmetry";
inline constexpr std::string_view kUnitAtZero = "unit_at_zero";
inline constexpr std::string_view kQuarterValue = "quarter_value";
}  // namespace invariant

inline constexpr double kBuiltinTol = 1e-12;
inline constexpr double kFileTol = 1e-10;

ValidationReport validate_mask_table(const PeriodicMaskTable& table, double tol);

/// Principal-branch phases. Computed as atan2(nu_{k+2^{j-1}}, nu_k), which
/// equals arccos(nu_k) on valid tables and stays accurate near theta = 0.
ThetaTable theta_of(const PeriodicMaskTable& table);

/// Inverse of theta_of for tables built from phases: nu = cos(theta).
PeriodicMaskTable table_from_theta(const ThetaTable& theta);

enum class Family { kHaarCos, kMeyerSmooth };

Family parse_family(std::string_view name);
std::string_view family_name(Family f);

struct FamilyParams {
  /// meyer_smooth transition width in (0, 1]. 1 is the plain
  /// cos((pi/2) beta(t)) profile; smaller values add flat regions where
  /// nu = 1 near t = 0 and nu = 0 near t = 1.
  double transition = 1.0;
};

/// beta(t) = t^2 (3 - 2t), the cubic smoothstep.
double smoothstep(double t);

PeriodicMaskTable builtin_family(Family family, int j_min, int j_max,
                                 const FamilyParams& params = {});

}  // namespace pwf
