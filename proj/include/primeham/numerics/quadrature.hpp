#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "primeham/errors.hpp"

namespace primeham {

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule, abscissae on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double roundoff;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
double checked_eval(F& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "integrand is not finite at x = " << x;
    throw NonFinite(msg.str());
  }
  return y;
}

template <class F>
Segment gauss_kronrod_15(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked_eval(f, centre);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double f1 = checked_eval(f, centre - dx);
    const double f2 = checked_eval(f, centre + dx);
    kronrod += kKronrodWeights[j] * (f1 + f2);
    abs_sum += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
  }
  const double value = kronrod * half;
  const double roundoff =
      50.0 * std::numeric_limits<double>::epsilon() * abs_sum * std::abs(half);
  const double error = std::max(std::abs((kronrod - gauss) * half), roundoff);
  return {a, b, value, error, roundoff};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of f over [a, b].
///
/// The integrand must be bounded on [a, b]; endpoint singularities are the
/// caller's job to remove by a change of variables. Integrand values are
/// never taken at the endpoints themselves.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0) || spec.max_subdivisions < 1)
    throw DomainError("integrate: invalid QuadratureSpec");
  if (!(a <= b)) throw DomainError("integrate: requires a <= b");
  if (a == b) return 0.0;

  std::priority_queue<detail::Segment> work;
  work.push(detail::gauss_kronrod_15(f, a, b));
  double total = work.top().value;
  double total_error = work.top().error;
  double total_roundoff = work.top().roundoff;
  // Below twice the accumulated rounding error no tolerance can be met.
  const auto done = [&] {
    return total_error <=
           std::max({spec.abs_tol, spec.rel_tol * std::abs(total), 2.0 * total_roundoff});
  };

  for (int splits = 0;; ++splits) {
    if (done()) return total;
    if (splits >= spec.max_subdivisions) break;
    const detail::Segment worst = work.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // interval no longer splittable
    work.pop();
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    total_roundoff += left.roundoff + right.roundoff - worst.roundoff;
    work.push(left);
    work.push(right);
  }

  // Recompute from the pieces to shed drift from the running sums.
  total = 0.0;
  total_error = 0.0;
  total_roundoff = 0.0;
  while (!work.empty()) {
    total += work.top().value;
    total_error += work.top().error;
    total_roundoff += work.top().roundoff;
    work.pop();
  }
  if (done()) return total;
  std::ostringstream msg;
  msg << "integrate: no convergence on [" << a << ", " << b
      << "], estimated error " << total_error << " for value " << total;
  throw NonConvergence(msg.str());
}

}  // namespace primeham
