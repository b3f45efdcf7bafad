#pragma once

#include <cmath>
#include <limits>
#include <sstream>

#include "primeham/errors.hpp"

namespace primeham {

/// Sign-change bracket [lo, hi] with the function values at its ends.
struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

template <class F>
Bracket make_bracket(F&& f, double lo, double hi) {
  return {lo, hi, f(lo), f(hi)};
}

/// Brent's method. Returns the end of the final sign-change bracket with the
/// smaller residual; that bracket is at most tol wide (plus a few ulps).
template <class F>
double find_root(F&& f, Bracket bracket, double tol) {
  if (!(bracket.lo < bracket.hi)) throw NoSignChange("find_root: requires lo < hi");
  if (!(tol > 0.0)) throw DomainError("find_root: tolerance must be positive");
  double a = bracket.lo, b = bracket.hi;
  double fa = bracket.f_lo, fb = bracket.f_hi;
  if (!std::isfinite(fa) || !std::isfinite(fb))
    throw NonFinite("find_root: non-finite function value at bracket end");
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream msg;
    msg << "find_root: no sign change on [" << a << ", " << b << "] (f = " << fa
        << ", " << fb << ")";
    throw NoSignChange(msg.str());
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < 500; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double step_floor = 2.0 * eps * std::abs(b) + 0.25 * tol;
    const double half_width = 0.5 * (c - b);
    if (fb == 0.0 || std::abs(c - b) <= std::max(tol, 4.0 * eps * std::abs(b)))
      return b;
    if (std::abs(e) >= step_floor && std::abs(fa) > std::abs(fb)) {
      // Inverse quadratic interpolation, or secant when only two points exist.
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * half_width * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * half_width * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * half_width * q - std::abs(step_floor * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = half_width;
        e = d;
      }
    } else {
      d = half_width;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > step_floor) ? d : std::copysign(step_floor, half_width);
    fb = f(b);
    if (!std::isfinite(fb)) throw NonFinite("find_root: non-finite function value");
  }
  return b;
}

}  // namespace primeham
