#include "pwf/mask_family.hpp"

#include <algorithm>
#include <cmath>

namespace pwf {

void MaskFamily::check_level(int s) const {
  if (s < min_level()) {
    throw StructuralError("mask level " + std::to_string(s) + " is below the table range");
  }
}

LiftedMask top_level_lift(const PeriodicMaskTable& table, int K) {
  const ThetaTable theta = theta_of(table);
  return LiftedMask(fit_phase_spline(theta, table.j_max(), K));
}

LiftedFamily::LiftedFamily(const PeriodicMaskTable& table, int K)
    : K_(K), min_level_(std::max(2, table.j_min())) {
  if (table.j_max() < 2) throw StructuralError("lifting needs a table level j >= 2");
  const ThetaTable theta = theta_of(table);
  for (int s = min_level_; s <= table.j_max(); ++s) {
    masks_.emplace_back(fit_phase_spline(theta, s, K));
  }
  tail_slope_ = masks_.back().phase().slope_bound();
  tail_curvature_ = masks_.back().phase().curvature_bound();
}

const LiftedMask& LiftedFamily::mask(int s) const {
  check_level(s);
  const int top = top_level();
  return masks_[static_cast<std::size_t>(std::min(s, top) - min_level_)];
}

double LiftedFamily::value(int s, double eta) const { return mask(s).value(eta); }

Deriv2 LiftedFamily::derivs(int s, double eta, Side side) const {
  return mask(s).derivs(eta, side);
}

double LiftedFamily::node(int s, std::int64_t k) const {
  return mask(s).value(std::ldexp(static_cast<double>(k), -s));
}

std::string LiftedFamily::label() const { return "lifted K=" + std::to_string(K_); }

StepFamily::StepFamily(const PeriodicMaskTable& table)
    : table_(table), tail_(std::make_unique<LiftedMask>(top_level_lift(table, 1))) {}

double StepFamily::node(int s, std::int64_t k) const {
  check_level(s);
  if (s <= table_.j_max()) return table_.nu(s, k);
  return tail_->value(std::ldexp(static_cast<double>(k), -s));
}

double StepFamily::value(int s, double eta) const {
  return node(s, static_cast<std::int64_t>(std::floor(std::ldexp(eta, s))));
}

Deriv2 StepFamily::derivs(int s, double eta, Side side) const {
  double scaled = std::ldexp(eta, s);
  std::int64_t k = static_cast<std::int64_t>(std::floor(scaled));
  if (side == Side::kLeft && scaled == std::floor(scaled)) --k;
  return {node(s, k), 0.0, 0.0};
}

}  // namespace pwf
