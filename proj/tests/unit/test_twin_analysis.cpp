#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "primeham/twin_analysis.hpp"

using namespace primeham;

namespace {
constexpr double pi2 = std::numbers::pi * std::numbers::pi;

const WkbPotential& li_potential() {
  static const WkbPotential wp = build_wkb_potential(counting::prime_li(), 1.5, 1e5 + 10.0, 4001);
  return wp;
}
}  // namespace

TEST(DensityLi, BaseIntegralIsPi) {
  // With 1/ln(xi E) replaced by 1 the substituted integral is pi, so pi * it is pi^2.
  const double base = integrate([](double) { return 2.0; }, 0.0, std::numbers::pi / 2.0);
  EXPECT_NEAR(std::numbers::pi * base, pi2, 1e-12);
}

TEST(DensityLi, MatchesDirectXiIntegral) {
  // Same integral in the xi variable with the endpoint edges cut off by hand.
  const double v0 = 1.5, e = 1e3;
  const double direct = integrate(
      [&](double t) {
        const double xi = v0 / e + (1.0 - v0 / e) * (0.5 - 0.5 * std::cos(t));
        const double jac = (1.0 - v0 / e) * 0.5 * std::sin(t);
        return jac / (std::sqrt(1.0 - xi) * std::sqrt(xi) * std::log(xi * e));
      },
      0.0, std::numbers::pi, {1e-13, 1e-11, 4000});
  EXPECT_NEAR(density_li(v0, e), std::numbers::pi * direct, 1e-7);
}

TEST(DensityLi, AsymptoticRatioApproachesOneFromAbove) {
  double prev = 1e300;
  for (double e = 1e3; e <= 1e12; e *= 10.0) {
    const double ratio = density_li(1.5, e) * std::log(e) / pi2;
    EXPECT_GT(ratio, 1.0) << e;
    EXPECT_LT(ratio, prev) << e;
    prev = ratio;
  }
}

TEST(DensityLi, BoundedByLeftEndpoint) {
  for (double v0 : {1.2, 1.5, 3.0})
    for (double e = v0 * 1.01; e < 1e9; e *= 3.0) {
      const double d = density_li(v0, e);
      EXPECT_GT(d, 0.0);
      EXPECT_LT(d, pi2 / std::log(v0));
    }
}

TEST(DensityLi, VanishingRange) {
  const double d = density_li(1.5, 1.5 * (1.0 + 1e-10));
  EXPECT_GT(d, 0.0);
  EXPECT_LT(d, 1e-3);
}

TEST(DensityLi, DomainErrors) {
  EXPECT_THROW(density_li(1.0, 5.0), DomainError);
  EXPECT_THROW(density_li(2.0, 2.0), DomainError);
}

TEST(TurningGap, HarmonicContrast) {
  const auto wp = build_wkb_potential(counting::linear(1.0, 0.0), 0.0, 500.0, 400);
  for (double e : {1.0, 10.0, 100.0, 400.0})
    EXPECT_NEAR(turning_gap(wp, e), 2.0 * (std::sqrt(e + 1.0) - std::sqrt(e)), 1e-7) << e;
}

TEST(TurningGap, MatchesDirectInversion) {
  const auto cf = counting::prime_li();
  for (double e : {10.0, 1e3, 1e5}) {
    const double direct = x_of_E(cf, 1.5, e + 1.0) - x_of_E(cf, 1.5, e);
    EXPECT_NEAR(turning_gap(li_potential(), e), direct, 1e-6 * direct) << e;
  }
}

// Same leading order as differencing li(sqrt E); the shortfall shrinks slowly.
TEST(TurningGap, LiPotentialApproachesLiOfRootDifference) {
  double prev = INFINITY;
  for (double e : {1e3, 1e4, 1e5}) {
    const double ratio = turning_gap(li_potential(), e) / (li(std::sqrt(e + 1.0)) - li(std::sqrt(e)));
    EXPECT_LT(ratio, 1.0) << e;
    EXPECT_LT(1.0 - ratio, prev) << e;
    prev = 1.0 - ratio;
  }
  EXPECT_LT(prev, 0.15);
}

TEST(TurningGap, PositiveAndShrinking) {
  double prev = 1e300;
  for (double e = 10.0; e <= 1e5; e *= 2.0) {
    const double g = turning_gap(li_potential(), e);
    EXPECT_GT(g, 0.0);
    EXPECT_LT(g, prev);
    prev = g;
  }
}

TEST(TurningGap, DomainErrors) {
  EXPECT_THROW(turning_gap(li_potential(), 1.0), DomainError);
  EXPECT_THROW(turning_gap(li_potential(), li_potential().e_max()), DomainError);
}

TEST(GapAction, SmallOnTheSmoothPotential) {
  // On the smooth li potential the action between the E and E+1 turning
  // points is far below 1, which is why the gap stays below 1/pi.
  for (double e : {1e3, 1e4}) {
    const double a = gap_action(li_potential(), e);
    EXPECT_GT(a, 0.0);
    EXPECT_LT(a, 0.1);
  }
}

TEST(GapThreshold, NoneOnTheSmoothLiPotential) {
  std::vector<double> energies;
  for (double e = 1e3; e <= 1e5; e *= 1.5) energies.push_back(e);
  EXPECT_FALSE(gap_threshold(li_potential(), energies).has_value());
}

TEST(GapThreshold, FoundWhenTheGapIsWide) {
  // Steep linear-counting well: gaps shrink, so the threshold is the first sample.
  const auto wp = build_wkb_potential(counting::linear(1.0, 0.0), 0.0, 50.0, 200);
  const auto e0 = gap_threshold(wp, {0.5, 1.0, 2.0}, 0.02);
  ASSERT_TRUE(e0.has_value());
  EXPECT_EQ(*e0, 0.5);
}

TEST(TwinEnvelope, AtOneHundred) {
  EXPECT_NEAR(twin_envelope(100.0), 19.3698021, 1e-6);
  EXPECT_NEAR(twin_envelope_by_pi(100.0), 6.16559950478730 / std::numbers::pi, 1e-10);
  EXPECT_THROW(twin_envelope(4.0), DomainError);
}

TEST(TwinEnvelope, HardyLittlewoodOutgrowsIt) {
  double prev = 0.0;
  for (double e = 1e3; e <= 1e15; e *= 100.0) {
    const double ratio = hardy_littlewood_scale(e) / twin_envelope(e);
    EXPECT_GT(ratio, prev) << e;
    prev = ratio;
  }
  EXPECT_GT(prev, 1e3);
}

TEST(HardyLittlewoodScale, MatchesQuadrature) {
  const double direct = integrate([](double t) { return 1.0 / (std::log(t) * std::log(t)); }, 2.0,
                                  1e4, {1e-12, 1e-12, 4000});
  EXPECT_NEAR(hardy_littlewood_scale(1e4), direct, 1e-8 * direct);
}

TEST(EnvelopeTwinSums, PartialSumsFlatten) {
  const auto pts = envelope_twin_sums(0.6, {1e4, 1e6, 1e8, 1e10});
  ASSERT_EQ(pts.size(), 4u);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    EXPECT_GT(pts[i].count, pts[i - 1].count);
    EXPECT_GT(pts[i].partial_sum, pts[i - 1].partial_sum);
  }
  const double d1 = pts[1].partial_sum - pts[0].partial_sum;
  const double d2 = pts[2].partial_sum - pts[1].partial_sum;
  const double d3 = pts[3].partial_sum - pts[2].partial_sum;
  EXPECT_LT(d2, d1);
  EXPECT_LT(d3, d2);
  // Counts follow the envelope.
  EXPECT_NEAR(static_cast<double>(pts[2].count), twin_envelope(1e8), 1.0);
}

TEST(TwinReport, FieldsFinite) {
  const auto r = twin_report(li_potential(), 1e4);
  EXPECT_EQ(r.E, 1e4);
  EXPECT_GT(r.dN_dE, 0.0);
  for (double v : {r.dN_dE, r.asymptotic_ratio, r.turning_gap, r.gap_bound, r.twin_envelope,
                   r.twin_envelope_by_pi, r.hardy_littlewood_scale})
    EXPECT_TRUE(std::isfinite(v));
  EXPECT_DOUBLE_EQ(r.gap_bound, 1.0 / std::numbers::pi);
  EXPECT_NEAR(r.asymptotic_ratio, r.dN_dE * std::log(1e4) / pi2, 1e-15);
}
