#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "pwf/mask_table.hpp"

using namespace pwf;

namespace {

PeriodicMaskTable random_table(int j_min, int j_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> levels;
  for (int j = j_min; j <= j_max; ++j) levels.push_back(oracle::random_theta_level(j, rng));
  return table_from_theta(ThetaTable(j_min, std::move(levels)));
}

}  // namespace

TEST_CASE("haar_cos matches |cos(pi k / 2^j)|") {
  const auto t = builtin_family(Family::kHaarCos, 2, 12);
  for (int j = 2; j <= 12; ++j) {
    for (std::int64_t k = 0; k < pow2(j); ++k) {
      REQUIRE(t.nu(j, k) == doctest::Approx(oracle::haar_nu(j, k)).epsilon(1e-15));
    }
  }
}

TEST_CASE("built-in families satisfy every invariant") {
  for (double delta : {1.0, 0.5, 1.0 / 3.0, 0.1}) {
    for (auto f : {Family::kHaarCos, Family::kMeyerSmooth}) {
      const auto t = builtin_family(f, 2, 12, FamilyParams{delta});
      const auto r = validate_mask_table(t, kBuiltinTol);
      CHECK(r.ok());
      CHECK(r.violations.empty());
      if (f == Family::kHaarCos) break;
    }
  }
}

TEST_CASE("quarter value and unit at zero") {
  const auto t = builtin_family(Family::kMeyerSmooth, 2, 9);
  for (int j = 2; j <= 9; ++j) {
    CHECK(t.nu(j, 0) == 1.0);
    CHECK(t.nu(j, pow2(j - 2)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(t.mu(j, 0) == doctest::Approx(std::sqrt(2.0)));
  }
}

TEST_CASE("random valid tables pass validation") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto t = random_table(2, 8, seed);
    const auto r = validate_mask_table(t, kFileTol);
    INFO("seed " << seed);
    CHECK(r.ok());
  }
}

TEST_CASE("broken quadrature entry is reported at its index") {
  auto base = builtin_family(Family::kHaarCos, 3, 5);
  std::vector<std::vector<double>> levels;
  for (int j = 3; j <= 5; ++j) {
    auto row = base.level(j);
    levels.emplace_back(row.begin(), row.end());
  }
  levels[1][3] += 1e-6;  // j = 4, k = 3; also breaks symmetry with k = 13
  const PeriodicMaskTable t(3, levels);
  const auto r = validate_mask_table(t, kFileTol);
  REQUIRE_FALSE(r.ok());
  bool found = false;
  for (const auto& v : r.violations) {
    if (v.invariant == invariant::kQuadrature && v.j == 4 && v.k == 3) {
      found = true;
      CHECK(v.residual == doctest::Approx(2e-6 * levels[1][3]).epsilon(1e-3));
    }
    CHECK(v.j == 4);
  }
  CHECK(found);
  CHECK(r.max_residual.at(std::string(invariant::kSymmetry)) > 9e-7);
}

TEST_CASE("violations are ordered by level then index") {
  std::vector<std::vector<double>> levels = {std::vector<double>(8, 0.9),
                                             std::vector<double>(16, 0.9)};
  const auto r = validate_mask_table(PeriodicMaskTable(3, levels), kFileTol);
  REQUIRE(r.violations.size() > 2);
  for (std::size_t i = 1; i < r.violations.size(); ++i) {
    const auto& a = r.violations[i - 1];
    const auto& b = r.violations[i];
    if (a.invariant == b.invariant) CHECK((a.j < b.j || (a.j == b.j && a.k <= b.k)));
  }
}

TEST_CASE("out-of-range entries are caught") {
  const auto base = builtin_family(Family::kHaarCos, 2, 2);
  std::vector<double> row(base.level(2).begin(), base.level(2).end());
  row[2] = -0.25;
  const auto r = validate_mask_table(PeriodicMaskTable(2, {row}), kFileTol);
  CHECK(r.max_residual.at(std::string(invariant::kRange)) == doctest::Approx(0.25));
}

TEST_CASE("structural errors") {
  CHECK_THROWS_AS(PeriodicMaskTable(0, {{1.0}}), StructuralError);
  CHECK_THROWS_AS(PeriodicMaskTable(3, {}), StructuralError);
  CHECK_THROWS_AS(PeriodicMaskTable(3, {std::vector<double>(7, 0.5)}), StructuralError);
  CHECK_THROWS_AS(builtin_family(Family::kHaarCos, 1, 4), StructuralError);
  CHECK_THROWS_AS(builtin_family(Family::kMeyerSmooth, 2, 4, FamilyParams{0.0}), StructuralError);
  CHECK_THROWS_AS(parse_family("daubechies"), StructuralError);
}

TEST_CASE("theta round trip") {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> levels;
    for (int j = 3; j <= 7; ++j) levels.push_back(oracle::random_theta_level(j, rng));
    const ThetaTable theta(3, levels);
    const ThetaTable back = theta_of(table_from_theta(theta));
    for (int j = 3; j <= 7; ++j) {
      for (std::int64_t k = 0; k < pow2(j); ++k) {
        REQUIRE(back.theta(j, k) == doctest::Approx(theta.theta(j, k)).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("theta of haar_cos is linear on the quarter period") {
  const auto th = theta_of(builtin_family(Family::kHaarCos, 2, 10));
  for (int j = 2; j <= 10; ++j) {
    for (std::int64_t k = 0; k <= pow2(j - 2); ++k) {
      CHECK(th.theta(j, k) == doctest::Approx(oracle::kPi * k / std::ldexp(1.0, j)));
    }
  }
}

TEST_CASE("family names round trip") {
  for (auto f : {Family::kHaarCos, Family::kMeyerSmooth}) {
    CHECK(parse_family(family_name(f)) == f);
  }
}
