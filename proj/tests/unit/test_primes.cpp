#include <cmath>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "primeham/numerics/special.hpp"
#include "primeham/primes.hpp"

using namespace primeham;

namespace {

// Sieve-and-scan written without the library.
std::size_t twin_count_oracle(int bound) {
  std::vector<char> prime(bound + 1, 1);
  prime[0] = prime[1] = 0;
  for (int i = 2; i * i <= bound; ++i)
    if (prime[i])
      for (int j = i * i; j <= bound; j += i) prime[j] = 0;
  std::size_t n = 0;
  for (int p = 2; p + 2 <= bound; ++p)
    if (prime[p] && prime[p + 2]) ++n;
  return n;
}

}  // namespace

TEST(FirstPrimes, FirstFive) {
  const auto p = first_primes(5);
  EXPECT_EQ(p.values, (std::vector<std::int64_t>{2, 3, 5, 7, 11}));
  EXPECT_EQ(p.limit_kind, PrimeSet::LimitKind::by_count);
}

TEST(FirstPrimes, FiveHundredth) { EXPECT_EQ(first_primes(500).back(), 3571); }

TEST(FirstPrimes, Single) { EXPECT_EQ(first_primes(1).values, std::vector<std::int64_t>{2}); }

TEST(FirstPrimes, ZeroIsRejected) { EXPECT_THROW(first_primes(0), DomainError); }

TEST(FirstPrimes, AllPassTrialDivision) {
  const auto p = first_primes(2000);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_TRUE(is_prime(p.values[i]));
    if (i) EXPECT_GT(p.values[i], p.values[i - 1]);
  }
  // No prime skipped between consecutive entries.
  for (std::size_t i = 1; i < p.size(); ++i)
    for (auto n = p.values[i - 1] + 1; n < p.values[i]; ++n) EXPECT_FALSE(is_prime(n));
}

TEST(PrimeCount, SpecValues) {
  EXPECT_EQ(prime_count(1.0), 0u);
  EXPECT_EQ(prime_count(10.0), 4u);
  EXPECT_EQ(prime_count(3571.0), 500u);
  EXPECT_EQ(prime_count(-5.0), 0u);
  EXPECT_EQ(prime_count(2.0), 1u);
}

TEST(PrimeCount, ConsistentWithFirstPrimes) {
  const auto p = first_primes(1000);
  for (std::size_t k = 1; k <= 1000; ++k)
    ASSERT_EQ(prime_count(static_cast<double>(p.values[k - 1])), k) << "k = " << k;
}

TEST(PrimeCount, WithinLiEnvelope) {
  for (double x = 100.0; x <= 1e6; x *= 3.0) {
    const double ratio = static_cast<double>(prime_count(x)) / li(x);
    EXPECT_GT(ratio, 0.8) << x;
    EXPECT_LT(ratio, 1.1) << x;
  }
}

TEST(PrimesUpTo, ByBound) {
  const auto p = primes_up_to(30.0);
  EXPECT_EQ(p.values, (std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
  EXPECT_EQ(p.limit_kind, PrimeSet::LimitKind::by_bound);
  EXPECT_TRUE(primes_up_to(1.5).values.empty());
}

TEST(TwinPairs, UpToTwenty) {
  using P = std::pair<std::int64_t, std::int64_t>;
  EXPECT_EQ(twin_pairs(20.0), (std::vector<P>{{3, 5}, {5, 7}, {11, 13}, {17, 19}}));
}

TEST(TwinPairs, UpToFive) {
  using P = std::pair<std::int64_t, std::int64_t>;
  EXPECT_EQ(twin_pairs(5.0), (std::vector<P>{{3, 5}}));
}

TEST(TwinPairs, CountToTenThousand) {
  EXPECT_EQ(twin_pairs(1e4).size(), 205u);
  EXPECT_EQ(twin_count_oracle(10000), 205u);
}

TEST(TwinPairs, EveryPairIsTwoPrimesTwoApart) {
  for (const auto& [p, q] : twin_pairs(5e4)) {
    EXPECT_EQ(q - p, 2);
    EXPECT_TRUE(is_prime(p));
    EXPECT_TRUE(is_prime(q));
  }
}
