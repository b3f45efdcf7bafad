#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "primeham/errors.hpp"

namespace primeham {

/// Strictly increasing run of primes starting at 2.
struct PrimeSet {
  enum class LimitKind { by_count, by_bound };

  std::vector<std::int64_t> values;
  LimitKind limit_kind = LimitKind::by_count;
  double limit = 0.0;

  std::size_t size() const noexcept { return values.size(); }
  std::int64_t back() const { return values.back(); }
};

namespace detail {

inline std::vector<bool> sieve(std::int64_t bound) {
  std::vector<bool> composite(static_cast<std::size_t>(bound + 1), false);
  composite[0] = true;
  if (bound >= 1) composite[1] = true;
  for (std::int64_t i = 2; i * i <= bound; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    for (std::int64_t j = i * i; j <= bound; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return composite;
}

inline std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  const auto composite = sieve(bound);
  for (std::int64_t i = 2; i <= bound; ++i)
    if (!composite[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

}  // namespace detail

/// Trial division; used to cross-check sieve output.
inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// The first k primes. The sieve bound doubles until it holds k primes.
inline PrimeSet first_primes(std::size_t k) {
  if (k < 1) throw DomainError("first_primes: requires k >= 1");
  std::int64_t bound = 64;
  std::vector<std::int64_t> found = detail::primes_up_to(bound);
  while (found.size() < k) {
    bound *= 2;
    found = detail::primes_up_to(bound);
  }
  found.resize(k);
  return {std::move(found), PrimeSet::LimitKind::by_count, static_cast<double>(k)};
}

inline PrimeSet primes_up_to(double bound) {
  const auto b = bound < 0.0 ? std::int64_t{-1} : static_cast<std::int64_t>(std::floor(bound));
  return {detail::primes_up_to(b), PrimeSet::LimitKind::by_bound, bound};
}

/// pi(x): the number of primes <= x.
inline std::size_t prime_count(double x) {
  if (x < 2.0) return 0;
  const auto composite = detail::sieve(static_cast<std::int64_t>(std::floor(x)));
  std::size_t count = 0;
  for (std::size_t i = 2; i < composite.size(); ++i)
    if (!composite[i]) ++count;
  return count;
}

/// Twin pairs (p, p + 2) with p + 2 <= bound, ascending.
inline std::vector<std::pair<std::int64_t, std::int64_t>> twin_pairs(double bound) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  const auto primes = primes_up_to(bound).values;
  for (std::size_t i = 1; i < primes.size(); ++i)
    if (primes[i] - primes[i - 1] == 2) out.emplace_back(primes[i - 1], primes[i]);
  return out;
}

}  // namespace primeham
