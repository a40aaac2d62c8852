#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pwf/lifted_mask.hpp"
#include "pwf/mask_table.hpp"

namespace pwf {

/**
 * Level-indexed masks m_s, s >= min_level(), as needed by the infinite
 * products. Levels above top_level() repeat the top mask (stationary tail).
 */
class MaskFamily {
 public:
  virtual ~MaskFamily() = default;

  virtual int min_level() const = 0;
  virtual int top_level() const = 0;
  /// m_s(eta)
  virtual double value(int s, double eta) const = 0;
  /// One-sided m_s, m_s', m_s''.
  virtual Deriv2 derivs(int s, double eta, Side side) const = 0;
  /// m_s(k 2^-s); equals nu^s_k on table levels.
  virtual double node(int s, std::int64_t k) const = 0;
  /// sup |z'| and sup |z''| of the phase used above top_level().
  virtual double tail_slope() const = 0;
  virtual double tail_curvature() const = 0;
  virtual std::string label() const = 0;

  void check_level(int s) const;
};

/// Masks lifted from a table through order-K phase splines.
class LiftedFamily : public MaskFamily {
 public:
  LiftedFamily(const PeriodicMaskTable& table, int K);

  int min_level() const override { return min_level_; }
  int top_level() const override { return min_level_ + static_cast<int>(masks_.size()) - 1; }
  double value(int s, double eta) const override;
  Deriv2 derivs(int s, double eta, Side side) const override;
  double node(int s, std::int64_t k) const override;
  double tail_slope() const override { return tail_slope_; }
  double tail_curvature() const override { return tail_curvature_; }
  std::string label() const override;

  int K() const { return K_; }
  const LiftedMask& mask(int s) const;

 private:
  int K_;
  int min_level_;
  std::vector<LiftedMask> masks_;
  double tail_slope_;
  double tail_curvature_;
};

/**
 * Piecewise-constant masks m_s(eta) = nu^s_{floor(eta 2^s)}.
 *
 * Table levels are used as stored; levels above j_max sample the K = 1 lift
 * of level j_max, so node values coincide with LiftedFamily(table, 1).
 */
class StepFamily : public MaskFamily {
 public:
  explicit StepFamily(const PeriodicMaskTable& table);

  int min_level() const override { return table_.j_min(); }
  int top_level() const override { return table_.j_max(); }
  double value(int s, double eta) const override;
  Deriv2 derivs(int s, double eta, Side side) const override;
  double node(int s, std::int64_t k) const override;
  double tail_slope() const override { return tail_->phase().slope_bound(); }
  double tail_curvature() const override { return 0.0; }
  std::string label() const override { return "step"; }

  const PeriodicMaskTable& table() const { return table_; }

 private:
  PeriodicMaskTable table_;
  std::unique_ptr<LiftedMask> tail_;
};

/// K = 1 lift of the top table level, shared by both families' tails.
LiftedMask top_level_lift(const PeriodicMaskTable& table, int K);

}  // namespace pwf
