#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pwf/localization.hpp"

using namespace pwf;

namespace {

SpectrumFn gaussian(double centre, double shift, double width) {
  // Translated and modulated: exp(-pi ((xi - centre)/width)^2) e^{-2 pi i shift xi}.
  return [=](double xi) -> std::pair<cplx, cplx> {
    const double u = (xi - centre) / width;
    const double g = std::exp(-oracle::kPi * u * u);
    const cplx ph = std::polar(1.0, -2.0 * oracle::kPi * shift * xi);
    const cplx v = g * ph;
    const cplx d = (-2.0 * oracle::kPi * u / width) * v + cplx(0.0, -2.0 * oracle::kPi * shift) * v;
    return {v, d};
  };
}

}  // namespace

TEST_CASE("gaussian self test") {
  const auto r = gaussian_self_test();
  CHECK(r.converged);
  CHECK(r.uc == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.error_budget < 1e-6);
}

TEST_CASE("heisenberg constant is invariant under shift, modulation and dilation") {
  for (double centre : {0.0, 0.7}) {
    for (double shift : {0.0, 1.3}) {
      for (double width : {0.5, 1.0, 2.0}) {
        const auto r = uc_heisenberg(gaussian(centre, shift, width), 10.0 * width + 2.0,
                                     width / 4.0);
        CHECK(r.uc == doctest::Approx(0.5).epsilon(1e-8));
        CHECK(r.freq_centre == doctest::Approx(2.0 * oracle::kPi * centre).epsilon(1e-8).scale(1));
        CHECK(r.time_centre == doctest::Approx(shift).epsilon(1e-8).scale(1));
      }
    }
  }
}

TEST_CASE("breitenberger closed forms") {
  const auto two = uc_breitenberger(CoefficientSeries(1, {0.0, 1.0, 1.0}));
  CHECK(two.uc == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  const auto three = uc_breitenberger(CoefficientSeries(1, {1.0, 1.0, 1.0}));
  CHECK(three.uc == doctest::Approx(std::sqrt(5.0 / 6.0)).epsilon(1e-12));
  CHECK_FALSE(two.degenerate);
}

TEST_CASE("breitenberger agrees with the direct formula on random sequences") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::int64_t N = 2 + trial % 7;
    std::vector<cplx> c;
    for (std::int64_t k = -N; k <= N; ++k) c.emplace_back(n(rng), n(rng));
    const auto r = uc_breitenberger(CoefficientSeries(N, c));
    CHECK(r.uc == doctest::Approx(oracle::breitenberger(c, -N)).epsilon(1e-10));
    CHECK(r.uc > 0.5);
  }
}

TEST_CASE("degenerate and undefined sequences") {
  const auto cosine = uc_breitenberger(CoefficientSeries(1, {0.5, 0.0, 0.5}));
  CHECK(cosine.degenerate);
  CHECK(std::isinf(cosine.var_a));
  CHECK_THROWS_AS(uc_breitenberger(CoefficientSeries(2, {0.0, 0.0, 0.0, 3.0, 0.0})), DomainError);
  CHECK_THROWS_AS(uc_breitenberger(CoefficientSeries(1, {0.0, 0.0, 0.0})), DomainError);
}

TEST_CASE("haar wavelets have infinite frequency variance") {
  const auto table = builtin_family(Family::kHaarCos, 2, 10);
  const LiftedFamily fam(table, 1);
  const auto p = uc_pair_for_level(table, fam, 4, 64, 4.0, 1e-10);
  CHECK_FALSE(p.nonstationary.converged);
  CHECK(p.nonstationary.verdict == "infinite-variance");
  CHECK(p.flags.find("UCH_INF") != std::string::npos);
  CHECK(std::isnan(p.gap));
  CHECK(p.periodic.uc > 0.5);
}

TEST_CASE("compact-spectrum wavelets: dilation invariance and floors") {
  const auto table = builtin_family(Family::kMeyerSmooth, 2, 10, FamilyParams{1.0 / 3.0});
  const LiftedFamily fam(table, 1);
  for (int j = 4; j <= 6; ++j) {
    const auto p = uc_pair_for_level(table, fam, j, pow2(j + 2), 4.0, 1e-10);
    REQUIRE(p.nonstationary.converged);
    CHECK(std::abs(p.nonstationary.uc - p.auxiliary.uc) <= 1e-8);
    CHECK(p.nonstationary.uc >= 1.5 - p.nonstationary.error_budget);
    CHECK(p.periodic.uc > 0.5);
    CHECK(p.gap > 0.0);
  }
}

TEST_CASE("grid form agrees with the quadrature form for a gaussian") {
  SpectrumGrid g;
  SpectrumGrid d;
  for (int i = -6 * 64; i <= 6 * 64; ++i) {
    const double x = i / 64.0;
    const double v = std::exp(-oracle::kPi * x * x);
    g.xi.push_back(x);
    g.value.push_back(v);
    d.xi.push_back(x);
    d.value.push_back(-2.0 * oracle::kPi * x * v);
  }
  g.left_value = g.value;
  d.left_value = d.value;
  CHECK(uc_heisenberg(g, &d).uc == doctest::Approx(0.5).epsilon(1e-10));
  // Central differences cost accuracy but keep the value close.
  CHECK(uc_heisenberg(g).uc == doctest::Approx(0.5).epsilon(1e-2));
}
