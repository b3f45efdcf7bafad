#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "primeham/eigensolve.hpp"

using namespace primeham;

namespace {

SampledPotential harmonic(std::size_t n = 4001, double half = 20.0) {
  return SampledPotential::from_function(Grid(half, n), [](double x) { return x * x / 4.0 - 0.5; });
}

SampledPotential soliton(double depth = 2.0) {
  return SampledPotential::from_function(Grid(15.0, 3001), [depth](double x) {
    const double c = std::cosh(x);
    return -depth / (c * c);
  });
}

}  // namespace

TEST(CountNodes, Harmonic) { EXPECT_EQ(count_nodes(harmonic(), 2.5), 3); }

TEST(CountNodes, Soliton) { EXPECT_EQ(count_nodes(soliton(), -0.5), 1); }

TEST(CountNodes, BelowMinimum) {
  EXPECT_EQ(count_nodes(harmonic(), -0.6), 0);
  EXPECT_EQ(count_nodes(soliton(), -2.5), 0);
}

TEST(CountNodes, NotBoundAtCeiling) {
  const auto v = soliton();
  EXPECT_THROW(count_nodes(v, 0.0), NotBound);
  EXPECT_THROW(count_nodes(v, 1.0), NotBound);
}

TEST(CountNodes, MonotoneUnitJumps) {
  const auto v = harmonic();
  int prev = 0;
  for (double e = -0.45; e < 10.0; e += 0.1) {
    const int c = count_nodes(v, e);
    EXPECT_GE(c, prev);
    EXPECT_LE(c - prev, 1);
    EXPECT_EQ(c, static_cast<int>(std::floor(e)) + 1) << e;
    prev = c;
  }
}

TEST(SolveLevel, HarmonicLevels) {
  const auto v = harmonic();
  for (int n = 0; n <= 5; ++n) EXPECT_NEAR(solve_level(v, n, 1e-10), n, 1e-6);
}

TEST(SolveLevel, SolitonLevel) { EXPECT_NEAR(solve_level(soliton(), 0, 1e-10), -1.0, 1e-6); }

TEST(SolveLevel, NoSuchLevel) {
  EXPECT_THROW(solve_level(soliton(), 1, 1e-10), NoSuchLevel);
  EXPECT_THROW(solve_level(soliton(), -1, 1e-10), NoSuchLevel);
}

TEST(SolveLevel, BoxSurrogateOrdering) {
  const auto v = SampledPotential::from_function(Grid(1.5, 3001), [](double x) {
    return std::abs(x) < 1.0 ? 0.0 : 4000.0;
  });
  double prev = -1.0;
  for (int i = 0; i < 6; ++i) {
    const double e = solve_level(v, i, 1e-9);
    const double box = std::pow(std::numbers::pi * (i + 1) / 2.0, 2.0);
    EXPECT_GT(e, prev);
    EXPECT_LT(e, box);
    EXPECT_GT(e, 0.8 * box);
    prev = e;
  }
}

TEST(SolveLevel, ConvergesUnderRefinement) {
  const auto vf = [](double x) { return -10.0 / std::cosh(x) / std::cosh(x) + 0.3 * x * x; };
  const double coarse = solve_level(SampledPotential::from_function(Grid(10.0, 401), vf), 1, 1e-12);
  const double fine = solve_level(SampledPotential::from_function(Grid(10.0, 801), vf), 1, 1e-12);
  const double finest = solve_level(SampledPotential::from_function(Grid(10.0, 1601), vf), 1, 1e-12);
  // Numerov eigenvalue error is O(h^4); halving h must cut the change by far more than 4.
  EXPECT_LT(std::abs(fine - finest), std::abs(coarse - fine) / 4.0);
}

TEST(SpectrumBelow, HarmonicToFourAndAHalf) {
  const auto s = spectrum_below(harmonic(), 4.5, 1e-10);
  ASSERT_EQ(s.size(), 5u);
  for (int n = 0; n < 5; ++n) EXPECT_NEAR(s.eigenvalues[n], n, 1e-6);
  EXPECT_EQ(s.size(), static_cast<std::size_t>(count_nodes(harmonic(), 4.5)));
}

TEST(SpectrumBelow, FlatPotentialHasNone) {
  const Grid g(10.0, 1001);
  const SampledPotential v(g, std::vector<double>(g.size(), 0.0));
  EXPECT_TRUE(spectrum_below(v, 0.0, 1e-10).eigenvalues.empty());
  const auto bump = SampledPotential::from_function(g, [](double x) { return std::exp(-x * x); });
  EXPECT_TRUE(spectrum_below(bump, 0.0, 1e-10).eigenvalues.empty());
}

TEST(SpectrumBelow, StrictlyIncreasingAndCountConsistent) {
  const auto v = SampledPotential::from_function(Grid(12.0, 4001), [](double x) {
    return -30.0 / std::cosh(x) / std::cosh(x);
  });
  const auto s = spectrum_below(v, -0.5, 1e-10);
  EXPECT_EQ(s.size(), static_cast<std::size_t>(count_nodes(v, -0.5)));
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_GT(s.eigenvalues[i], s.eigenvalues[i - 1]);
  // Poeschl-Teller: s(s+1) = 30, levels -(s - n)^2.
  const double sp = (-1.0 + std::sqrt(1.0 + 120.0)) / 2.0;
  for (std::size_t n = 0; n < s.size(); ++n)
    EXPECT_NEAR(s.eigenvalues[n], -(sp - n) * (sp - n), 1e-5);
}

TEST(ThresholdLevel, ReflectionlessWellHasOne) {
  // -2 sech^2 has a zero-energy half-bound state (psi -> tanh x).
  const auto s = spectrum_with_threshold(soliton(2.0), 1e-10);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.threshold_level);
  // The threshold is the wall value, -2 sech^2(L).
  EXPECT_NEAR(s.eigenvalues[1], 0.0, 1e-11);
  EXPECT_TRUE(s.near_continuum[1]);
}

TEST(ThresholdLevel, GenericWellHasNone) {
  const auto s = spectrum_with_threshold(soliton(3.0), 1e-10);
  EXPECT_FALSE(s.threshold_level);
  EXPECT_FALSE(threshold_level(soliton(3.0)).has_value());
  EXPECT_FALSE(threshold_level(harmonic()).has_value());
}

TEST(VerifyAgainst, ExactMatch) {
  Spectrum s;
  s.eigenvalues = {2, 3, 5};
  const auto r = verify_against(s, {2, 3, 5}, 1e-3);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.max_rel_err, 0.0);
  EXPECT_EQ(r.diagnostic, "pass");
}

TEST(VerifyAgainst, LengthMismatch) {
  Spectrum s;
  s.eigenvalues = {2, 3};
  const auto r = verify_against(s, {2, 3, 5}, 1e-3);
  EXPECT_FALSE(r.pass);
  EXPECT_NE(r.diagnostic.find("length mismatch"), std::string::npos);
}

TEST(VerifyAgainst, UniformShiftDiagnosed) {
  Spectrum s;
  s.eigenvalues = {2.5, 3.5, 5.5, 7.5};
  const auto r = verify_against(s, {2, 3, 5, 7}, 1e-3);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.mean_shift, 0.5, 1e-15);
  EXPECT_NE(r.diagnostic.find("uniformly shifted by +0.5"), std::string::npos) << r.diagnostic;
}

TEST(VerifyAgainst, RelativeErrorUsesUnitFloor) {
  Spectrum s;
  s.eigenvalues = {0.001, 100.05};
  const auto r = verify_against(s, {0.0, 100.0}, 1e-3);
  EXPECT_NEAR(r.levels[0].rel_err, 0.001, 1e-15);
  EXPECT_NEAR(r.levels[1].rel_err, 0.0005, 1e-12);
  EXPECT_TRUE(r.pass);
}
