#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "primeham/errors.hpp"
#include "primeham/numerics/quadrature.hpp"
#include "primeham/numerics/roots.hpp"
#include "primeham/numerics/special.hpp"
#include "primeham/wkb_inverse.hpp"

namespace primeham {

/// Gap between the turning points at E and E+1 bounded from below by this.
inline constexpr double kGapBound = 1.0 / std::numbers::pi;

struct TwinBoundReport {
  double E;
  double dN_dE;
  /// dN_dE * ln E / pi^2
  double asymptotic_ratio;
  /// Measured on the smooth quasiclassical potential only.
  double turning_gap;
  double gap_bound = kGapBound;
  /// pi * li(sqrt E), order-of-magnitude envelope, not a sharp bound.
  double twin_envelope;
  /// li(sqrt E) / pi, the other reading of the inequality chain.
  double twin_envelope_by_pi;
  /// Integral of dE / ln^2 E from 2 (conjectured scale, C arbitrary, C = 1).
  double hardy_littlewood_scale;
};

/// pi * integral over [v0/E, 1] of dxi / (sqrt(1-xi) sqrt(xi) ln(xi E)), in
/// the form 2 pi * integral of dtheta / ln(E sin^2 theta) after xi = sin^2.
inline double density_li(double v0, double energy) {
  if (!(v0 > 1.0) || !(energy > v0)) {
    std::ostringstream msg;
    msg << "density_li: requires E > v0 > 1 (v0 = " << v0 << ", E = " << energy << ")";
    throw DomainError(msg.str());
  }
  const double theta0 = std::asin(std::sqrt(v0 / energy));
  const double half_pi = 0.5 * std::numbers::pi;
  if (!(half_pi > theta0)) return 0.0;
  const auto integrand = [energy](double theta) {
    const double s = std::sin(theta);
    return 2.0 / std::log(energy * s * s);
  };
  return std::numbers::pi * integrate(integrand, theta0, half_pi, {1e-14, 1e-12, 2000});
}

/// x(E+1) - x(E) on the tabulated potential.
inline double turning_gap(const WkbPotential& wp, double energy) {
  if (!(energy > wp.v0()) || !(energy + 1.0 <= wp.e_max())) {
    std::ostringstream msg;
    msg << "turning_gap: E = " << energy << " needs v0 < E and E + 1 <= " << wp.e_max();
    throw DomainError(msg.str());
  }
  return wp.x_of(energy + 1.0) - wp.x_of(energy);
}

/// pi * integral over [x(E), x(E+1)] of sqrt(E + 1 - V) dx.
inline double gap_action(const WkbPotential& wp, double energy) {
  const double x1 = wp.x_of(energy);
  const double x2 = wp.x_of(energy + 1.0);
  const auto integrand = [&](double x) {
    const double d = energy + 1.0 - wp.eval(x);
    return d > 0.0 ? std::sqrt(d) : 0.0;
  };
  return std::numbers::pi * integrate(integrand, x1, x2, {1e-14, 1e-10, 2000});
}

namespace detail {
inline void require_envelope_domain(double energy, const char* who) {
  if (!(energy > 4.0)) {
    std::ostringstream msg;
    msg << who << ": requires E > 4 (got " << energy << ")";
    throw DomainError(msg.str());
  }
}
}  // namespace detail

inline double twin_envelope(double energy) {
  detail::require_envelope_domain(energy, "twin_envelope");
  return std::numbers::pi * li(std::sqrt(energy));
}

inline double twin_envelope_by_pi(double energy) {
  detail::require_envelope_domain(energy, "twin_envelope_by_pi");
  return li(std::sqrt(energy)) / std::numbers::pi;
}

/// C * integral from 2 to E of dt / ln^2 t = C (li(t) - t / ln t) over [2, E].
inline double hardy_littlewood_scale(double energy, double c = 1.0) {
  if (!(energy > 2.0)) throw DomainError("hardy_littlewood_scale: requires E > 2");
  const auto antiderivative = [](double t) { return li(t) - t / std::log(t); };
  return c * (antiderivative(energy) - antiderivative(2.0));
}

inline TwinBoundReport twin_report(const WkbPotential& wp, double energy) {
  TwinBoundReport r{};
  r.E = energy;
  r.dN_dE = density_li(wp.v0(), energy);
  r.asymptotic_ratio = r.dN_dE * std::log(energy) / (std::numbers::pi * std::numbers::pi);
  r.turning_gap = turning_gap(wp, energy);
  r.gap_bound = kGapBound;
  r.twin_envelope = twin_envelope(energy);
  r.twin_envelope_by_pi = twin_envelope_by_pi(energy);
  r.hardy_littlewood_scale = hardy_littlewood_scale(energy);
  return r;
}

/// Smallest sampled E from which every later sample has gap >= 1/pi - eps.
inline std::optional<double> gap_threshold(const WkbPotential& wp,
                                           const std::vector<double>& energies,
                                           double eps = 0.02) {
  std::optional<double> e0;
  for (double e : energies) {
    if (turning_gap(wp, e) >= kGapBound - eps) {
      if (!e0) e0 = e;
    } else {
      e0.reset();
    }
  }
  return e0;
}

struct TwinSumPoint {
  double E;
  std::size_t count;
  double partial_sum;
};

/// Places twins at E_j with twin_envelope(E_j) = j and accumulates
/// sum E_j^-alpha, reporting the partial sums at each checkpoint (ascending).
inline std::vector<TwinSumPoint> envelope_twin_sums(double alpha,
                                                    const std::vector<double>& checkpoints) {
  std::vector<TwinSumPoint> out;
  double sum = 0.0;
  std::size_t j = 0;
  double last = 4.0 * (1.0 + 1e-12);
  double next_e = 0.0;
  bool have_next = false;
  const auto locate = [&](std::size_t index, double from) {
    const auto f = [index](double e) { return twin_envelope(e) - static_cast<double>(index); };
    double hi = std::max(2.0 * from, 8.0);
    while (f(hi) < 0.0) hi *= 2.0;
    double lo = from;
    if (f(lo) >= 0.0) return lo;
    return find_root(f, make_bracket(f, lo, hi), 1e-12 * hi);
  };
  for (double cp : checkpoints) {
    while (true) {
      if (!have_next) {
        next_e = locate(j + 1, last);
        have_next = true;
      }
      if (next_e > cp) break;
      ++j;
      sum += std::pow(next_e, -alpha);
      last = next_e;
      have_next = false;
    }
    out.push_back({cp, j, sum});
  }
  return out;
}

}  // namespace primeham
