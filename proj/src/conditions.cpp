#include "pwf/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "pwf/io.hpp"

namespace pwf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

DividedDifference check_divided_difference(const ThetaTable& theta) {
  DividedDifference out;
  out.j_min = theta.j_min();
  for (int j = theta.j_min(); j <= theta.j_max(); ++j) {
    const auto row = theta.level(j);
    const auto period = static_cast<std::int64_t>(row.size());
    double worst = 0.0;
    for (std::int64_t k = 0; k < period; ++k) {
      const double next = row[static_cast<std::size_t>(wrap_index(k + 1, period))];
      worst = std::max(worst, std::abs(next - row[static_cast<std::size_t>(k)]));
    }
    out.C_j.push_back(std::ldexp(worst, j));
    out.C = std::max(out.C, out.C_j.back());
  }
  out.verdict = "holds";
  if (out.C_j.size() >= 2) {
    bool growing = true;
    for (std::size_t i = 1; i < out.C_j.size(); ++i) {
      if (!(out.C_j[i] >= 1.9 * out.C_j[i - 1])) growing = false;
    }
    if (growing) out.verdict = "growing";
  }
  if (!std::isfinite(out.C)) out.verdict = "growing";
  return out;
}

WeightedSum check_weighted_sum(const ProductBounds& bounds,
                               const std::vector<std::int64_t>& ladder) {
  WeightedSum out;
  out.j = bounds.j;
  out.ladder = ladder;
  for (std::int64_t N : ladder) {
    if (-N < bounds.k_lo || N > bounds.k_hi()) {
      throw StructuralError("product bounds do not cover |k| <= " + std::to_string(N));
    }
    double acc = 0.0;
    for (std::int64_t k = -N; k <= N; ++k) {
      acc += std::abs(static_cast<double>(k) * bounds.b_at(k));
    }
    out.sums.push_back(acc);
  }

  std::vector<double> inc;
  for (std::size_t i = 1; i < out.sums.size(); ++i) inc.push_back(out.sums[i] - out.sums[i - 1]);
  out.verdict = "inconclusive";
  out.limit_estimate = kInf;
  if (inc.empty()) return out;
  if (std::all_of(inc.begin(), inc.end(), [](double d) { return d == 0.0; })) {
    out.verdict = "likely-convergent";
    out.limit_estimate = out.sums.back();
    return out;
  }
  bool shrinking = inc.size() >= 2;
  double q = 0.0;
  for (std::size_t i = 1; i < inc.size(); ++i) {
    if (!(inc[i - 1] > 0.0) || inc[i] / inc[i - 1] >= 0.5) {
      shrinking = false;
      break;
    }
    q = std::max(q, inc[i] / inc[i - 1]);
  }
  if (shrinking) {
    out.verdict = "likely-convergent";
    out.limit_estimate = out.sums.back() + inc.back() * q / (1.0 - q);
    return out;
  }
  bool nondecreasing = true;
  for (std::size_t i = 1; i < inc.size(); ++i) {
    if (inc[i] < inc[i - 1]) nondecreasing = false;
  }
  if (nondecreasing) out.verdict = "likely-divergent";
  return out;
}

WeightedSum check_weighted_sum(const PeriodicMaskTable& table, int j, double tol) {
  std::vector<std::int64_t> ladder;
  for (int e = 0; e < 4; ++e) ladder.push_back(pow2(j + e));
  const ProductBounds bounds = product_bounds(table, j, -ladder.back(), ladder.back(), tol);
  return check_weighted_sum(bounds, ladder);
}

bool Experiment::conditions_hold() const {
  if (cond2_verdict != "holds") return false;
  return std::all_of(rows.begin(), rows.end(), [](const ExperimentRow& r) {
    return r.cond1.verdict == "likely-convergent";
  });
}

Experiment run_adjustment_experiment(const PeriodicMaskTable& table, int K, int j_lo, int j_hi,
                                     std::int64_t N, double span, double tol) {
  Experiment ex;
  ex.K = K;
  ex.exploratory = K != 1;
  const DividedDifference dd = check_divided_difference(theta_of(table));
  ex.C = dd.C;
  ex.cond2_verdict = dd.verdict;
  if (j_hi < j_lo) return ex;

  const LiftedFamily masks(table, K);
  for (int j = j_lo; j <= j_hi; ++j) {
    ExperimentRow row;
    row.j = j;
    row.cond2_Cj = table.has_level(j) ? dd.C_j[static_cast<std::size_t>(j - dd.j_min)]
                                      : std::numeric_limits<double>::quiet_NaN();
    row.cond1 = check_weighted_sum(table, j, tol);
    const std::int64_t n_j =
        N > 0 ? N : static_cast<std::int64_t>(std::ceil(std::ldexp(span, j)));
    row.uc = uc_pair_for_level(table, masks, j, n_j, span, tol);
    row.flags = row.uc.flags;
    if (ex.exploratory) row.flags += std::string(row.flags.empty() ? "" : "|") + "EXPLORATORY";
    ex.uniform_bound = std::max(ex.uniform_bound, row.cond1.limit_estimate);
    ex.rows.push_back(std::move(row));
  }
  return ex;
}

void write_experiment_csv(std::ostream& out, const Experiment& experiment) {
  out << "j,cond2_Cj,cond1_verdict,S_limit_est,uc_b,uc_h,gap,flags\n";
  for (const auto& r : experiment.rows) {
    out << r.j << ',' << fmt12(r.cond2_Cj) << ',' << r.cond1.verdict << ','
        << fmt12(r.cond1.limit_estimate) << ',' << fmt12(r.uc.periodic.uc) << ','
        << fmt12(r.uc.nonstationary.uc) << ',' << fmt12(r.uc.gap) << ',' << r.flags << '\n';
  }
}

}  // namespace pwf
