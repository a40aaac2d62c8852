#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pwf/localization.hpp"

namespace pwf {

struct DividedDifference {
  int j_min = 0;
  std::vector<double> C_j;  // sup_k 2^j |theta^j_{k+1} - theta^j_k|
  double C = 0.0;           // sup over levels
  /// "holds" unless C_j roughly doubles from level to level ("growing").
  std::string verdict;
};

DividedDifference check_divided_difference(const ThetaTable& theta);

/// Partial sums S^j_N = sum_{|k|<=N} |k b^j_k| on a doubling ladder.
struct WeightedSum {
  int j = 0;
  std::vector<std::int64_t> ladder;
  std::vector<double> sums;
  /// "likely-convergent" | "likely-divergent" | "inconclusive"
  std::string verdict;
  /// Geometric extrapolation when the increments shrink; +inf otherwise.
  double limit_estimate = 0.0;
};

WeightedSum check_weighted_sum(const ProductBounds& bounds, const std::vector<std::int64_t>& ladder);

/// Ladder 2^j, 2^{j+1}, 2^{j+2}, 2^{j+3} on the stationary-tail extension of the table.
WeightedSum check_weighted_sum(const PeriodicMaskTable& table, int j, double tol);

struct ExperimentRow {
  int j = 0;
  double cond2_Cj = 0.0;
  WeightedSum cond1;
  UCPair uc;
  std::string flags;
};

struct Experiment {
  int K = 1;
  bool exploratory = false;
  double C = 0.0;
  /// Largest finite S limit over the rows; +inf if any row diverges.
  double uniform_bound = 0.0;
  std::vector<ExperimentRow> rows;

  std::string cond2_verdict;

  /// Condition 2 holds and every row's condition-1 verdict is likely-convergent.
  bool conditions_hold() const;
};

/**
 * One row per j in [j_lo, j_hi]; N <= 0 selects ceil(span 2^j) per level.
 * K != 1 is labelled exploratory.
 */
Experiment run_adjustment_experiment(const PeriodicMaskTable& table, int K, int j_lo, int j_hi,
                                     std::int64_t N, double span, double tol);

/// "j,cond2_Cj,cond1_verdict,S_limit_est,uc_b,uc_h,gap,flags"
void write_experiment_csv(std::ostream& out, const Experiment& experiment);

}  // namespace pwf
