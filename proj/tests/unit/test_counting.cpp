#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "primeham/counting.hpp"

using namespace primeham;

namespace {

std::vector<std::pair<CountingFunction, std::vector<double>>> catalog() {
  return {
      {counting::linear(1.0, 0.0), {-3.0, 0.5, 10.0}},
      {counting::square_root(), {0.5, 4.0, 100.0}},
      {counting::power_sub(1.0 / 6.0), {0.5, 7.0, 300.0}},
      {counting::power_super(0.25), {0.5, 9.0, 1e3}},
      {counting::log_geometric(2.0), {0.5, 4.0, 1e4}},
      {counting::prime_li(), {1.5, 10.0, 1e5}},
      {counting::riemann_von_mangoldt(), {10.0, 100.0, 1e4}},
  };
}

}  // namespace

TEST(CountingFunction, DensityMatchesFiniteDifference) {
  for (const auto& [cf, energies] : catalog()) {
    for (double e : energies) {
      const double h = 1e-5 * std::max(1.0, std::abs(e));
      const double fd = (cf.N(e + h) - cf.N(e - h)) / (2.0 * h);
      EXPECT_NEAR(fd, cf.density(e), 1e-6 * std::max(1.0, std::abs(cf.density(e))))
          << cf.id << " at " << e;
      const double fd2 = (cf.density(e + h) - cf.density(e - h)) / (2.0 * h);
      EXPECT_NEAR(fd2, cf.density_prime(e), 1e-6 * std::max(1.0, std::abs(cf.density_prime(e))))
          << cf.id << " at " << e;
    }
  }
}

TEST(CountingFunction, DensityPositiveOnDomain) {
  for (const auto& [cf, energies] : catalog())
    for (double e : energies) EXPECT_GT(cf.density(e), 0.0) << cf.id;
}

TEST(CountingFunction, ClosedForms) {
  EXPECT_DOUBLE_EQ(counting::square_root().N(9.0), 6.0);
  EXPECT_DOUBLE_EQ(counting::linear(2.0, 1.0).N(3.0), 7.0);
  EXPECT_NEAR(counting::log_geometric(2.0).N(1024.0), 10.0, 1e-12);
  EXPECT_NEAR(counting::power_super(0.5).N(3.0), 3.0, 1e-12);
  EXPECT_NEAR(counting::prime_li().N(10.0), 6.16559950478730, 1e-11);
}

TEST(CountingFunction, SumIsPointwise) {
  const auto s = counting::sum(counting::square_root(), counting::linear(1.0, 0.0));
  EXPECT_EQ(s.id, "sqrt+linear:1,0");
  EXPECT_DOUBLE_EQ(s.N(4.0), 8.0);
  EXPECT_DOUBLE_EQ(s.density(4.0), 1.5);
  EXPECT_DOUBLE_EQ(s.domain_min, 0.0);
}

TEST(CountingFunction, ParameterValidation) {
  EXPECT_THROW(counting::power_sub(0.5), DomainError);
  EXPECT_THROW(counting::power_sub(0.0), DomainError);
  EXPECT_THROW(counting::power_super(0.0), DomainError);
  EXPECT_THROW(counting::log_geometric(1.0), DomainError);
  EXPECT_THROW(counting::linear(0.0, 1.0), DomainError);
}

TEST(CountingParse, AllSpellings) {
  EXPECT_EQ(counting::parse("li").id, "li");
  EXPECT_EQ(counting::parse("sqrt").id, "sqrt");
  EXPECT_EQ(counting::parse("rvm").id, "rvm");
  EXPECT_EQ(counting::parse("linear:1,0").id, "linear:1,0");
  EXPECT_EQ(counting::parse("power-sub:0.1667").id, "power-sub:0.1667");
  EXPECT_EQ(counting::parse("power-super:0.25").id, "power-super:0.25");
  EXPECT_EQ(counting::parse("log:2").id, "log:2");
}

TEST(CountingParse, Errors) {
  EXPECT_THROW(counting::parse("cubic"), DomainError);
  EXPECT_THROW(counting::parse("linear:1"), DomainError);
  EXPECT_THROW(counting::parse("li:3"), DomainError);
  EXPECT_THROW(counting::parse("log:two"), DomainError);
  EXPECT_THROW(counting::parse("power-sub:0.7"), DomainError);
}
