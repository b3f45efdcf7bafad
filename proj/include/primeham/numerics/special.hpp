#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "primeham/errors.hpp"

namespace primeham {

/// Exponential integral Ei(t) for t > 0.
///
/// Power series for t <= 40 (every term is positive, so there is no
/// cancellation), otherwise the divergent asymptotic series truncated at its
/// smallest term.
inline double expint_ei(double t) {
  if (!(t > 0.0)) throw DomainError("expint_ei: requires t > 0");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (t <= 40.0) {
    double sum = 0.0;
    double term = 1.0;  // t^k / k!
    for (int k = 1; k < 500; ++k) {
      term *= t / k;
      const double contribution = term / k;
      sum += contribution;
      if (contribution < eps * sum) break;
    }
    return std::numbers::egamma + std::log(t) + sum;
  }
  double sum = 1.0;
  double term = 1.0;  // k! / t^k
  for (int k = 1; k < 200; ++k) {
    const double next = term * k / t;
    if (next > term) break;
    term = next;
    sum += term;
    if (term < eps * sum) break;
  }
  return std::exp(t) / t * sum;
}

/// Principal-value logarithmic integral li(x) = Ei(ln x), restricted to x > 1.
inline double li(double x) {
  if (!(x > 1.0)) {
    std::ostringstream msg;
    msg << "li: requires x > 1, got " << x;
    throw DomainError(msg.str());
  }
  return expint_ei(std::log(x));
}

}  // namespace primeham
