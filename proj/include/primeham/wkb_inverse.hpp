#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "primeham/counting.hpp"
#include "primeham/errors.hpp"
#include "primeham/numerics.hpp"
#include "primeham/potential.hpp"

namespace primeham {

/// Scale c in N(E) = c * integral_0^{x_max} sqrt(E - V) dx for which the Abel
/// solution f = n(V0)/sqrt(E-V0) + integral n'(V)/sqrt(E-V) dV is exact. This
/// is the convention of -psi'' + V psi = lambda psi.
inline constexpr double kPhysicalScale = 2.0 / std::numbers::pi;

/// Scale of the N = 2 pi integral sqrt(E - V) dx convention.
inline constexpr double kTwoPiScale = 2.0 * std::numbers::pi;

namespace detail {

inline constexpr QuadratureSpec kInnerQuadrature{1e-14, 1e-10, 4000};
inline constexpr QuadratureSpec kOuterQuadrature{1e-10, 1e-8, 4000};

inline void require_above_v0(const CountingFunction& cf, double v0, double energy,
                             const char* where) {
  if (!(v0 > cf.domain_min)) {
    std::ostringstream msg;
    msg << where << ": v0 = " << v0 << " is outside the domain of '" << cf.id
        << "' (needs v0 > " << cf.domain_min << ")";
    throw DomainError(msg.str());
  }
  if (!(energy > v0)) {
    std::ostringstream msg;
    msg << where << ": requires E > v0 (E = " << energy << ", v0 = " << v0 << ")";
    throw DomainError(msg.str());
  }
}

/// integral_0^s n'(E - t^2) dt with E = v0 + s^2, the Abel integral after
/// E - V = t^2. The argument is formed as v0 + (s - t)(s + t) so it stays
/// accurate where it approaches v0.
inline double abel_tail(const CountingFunction& cf, double v0, double s) {
  return integrate([&](double t) { return cf.density_prime(v0 + (s - t) * (s + t)); }, 0.0, s,
                   kInnerQuadrature);
}

/// dx/du of the inverse potential with E = v0 + u^2, in the physical scale.
/// Finite at u = 0, where it tends to 2 n(v0).
inline double dx_du(const CountingFunction& cf, double v0, double u) {
  const double n0 = cf.density(v0);
  if (u == 0.0) return 2.0 * n0;
  return 2.0 * n0 + 4.0 * u * abel_tail(cf, v0, u);
}

}  // namespace detail

/// f(E) = dx/dE of the potential whose WKB counting function is cf, with
/// V(0) = v0, in the physical scale.
inline double abel_f(const CountingFunction& cf, double v0, double energy) {
  detail::require_above_v0(cf, v0, energy, "abel_f");
  const double s = std::sqrt(energy - v0);
  return cf.density(v0) / s + 2.0 * detail::abel_tail(cf, v0, s);
}

/// F(V0, E) = sqrt(E) ln(E) f(E) for the li counting function.
///
/// The singular part of the xi-integral is taken in closed form from the
/// antiderivative of ln(xi) (1 - xi)^(-3/2) / 2; the regular remainder is
/// integrated after xi = 1 - w^2.
inline double F_func(double v0, double energy) {
  if (!(v0 > 1.0) || !(energy > v0)) {
    std::ostringstream msg;
    msg << "F_func: requires E > v0 > 1 (E = " << energy << ", v0 = " << v0 << ")";
    throw DomainError(msg.str());
  }
  const double xi0 = v0 / energy;
  const double log_e = std::log(energy);
  const double root0 = std::sqrt(1.0 - xi0);
  const double antiderivative_at_xi0 =
      (1.0 / root0 - 1.0) * std::log(xi0) + 2.0 * std::log1p(root0);
  const double singular = -antiderivative_at_xi0 / log_e;
  const double remainder = integrate(
      [&](double w) {
        const double w2 = w * w;
        const double log_xi = w < 0.5 ? std::log1p(-w2) : std::log((1.0 - w) * (1.0 + w));
        const double ratio = log_xi / w;  // ln(xi) / w, regular at w = 0
        return -ratio * ratio / (log_e * (log_e + log_xi));
      },
      0.0, root0, detail::kOuterQuadrature);
  return 1.0 / root0 + singular + remainder;
}

/// x(E) = integral_{v0}^{E} f, scaled to the counting convention c.
inline double x_of_E(const CountingFunction& cf, double v0, double energy,
                     double scale = kPhysicalScale) {
  if (energy == v0) return 0.0;
  detail::require_above_v0(cf, v0, energy, "x_of_E");
  const double s = std::sqrt(energy - v0);
  // x(E) = 2 integral_0^s n(E - t^2) dt, Abel's inversion in one pass.
  const double raw =
      2.0 * integrate([&](double t) { return cf.density(v0 + (s - t) * (s + t)); }, 0.0, s,
                      detail::kInnerQuadrature);
  return raw * kPhysicalScale / scale;
}

/// Direct evaluation of the closed outer form plus inner phi-integral for
/// N = E^(1/2+beta) / (1/2+beta), physical scale.
inline double x_of_E_power_super(double beta, double v0, double energy) {
  if (!(beta > 0.0) || !(v0 > 0.0) || !(energy >= v0))
    throw DomainError("x_of_E_power_super: requires beta > 0 and E >= v0 > 0");
  if (energy == v0) return 0.0;
  const double outer = 2.0 * std::pow(v0, beta) * std::atan(std::sqrt((energy - v0) / v0));
  auto inner = [&](double e) {
    const double lower = std::asin(std::sqrt(v0 / e));
    return integrate([&](double phi) { return std::pow(std::sin(phi), 2.0 * beta); }, lower,
                     std::numbers::pi / 2.0, detail::kInnerQuadrature);
  };
  // e = v0 + u^2 absorbs the square-root onset of the inner integral.
  const double tail = integrate(
      [&](double u) {
        const double e = v0 + u * u;
        return 2.0 * u * std::pow(e, beta - 1.0) * inner(e);
      },
      0.0, std::sqrt(energy - v0), detail::kOuterQuadrature);
  return outer + 2.0 * beta * tail;
}

/// Convention tag of the closed-form zeta-zero potential.
inline constexpr const char* kWuSprungConvention = "2m/(hbar^2 pi^2) = 1";

/// x(E) of the potential reproducing the leading zeta-zero counting,
/// evaluated from its closed form.
inline double wu_sprung_x(double v0, double energy) {
  if (!(v0 > 0.0) || !(energy >= v0))
    throw DomainError("wu_sprung_x: requires E >= v0 > 0");
  const double root_e = std::sqrt(energy);
  const double root_gap = std::sqrt(energy - v0);
  const double e2 = std::exp(2.0);
  return (root_gap * std::log(v0 / (2.0 * std::numbers::pi * e2)) +
          root_e * std::log((root_e + root_gap) * (root_e + root_gap) / v0)) /
         std::numbers::pi;
}

/// Monotone table of x(E), E = v0 + u^2 on a uniform u grid, with inverse
/// evaluation V(x) extended evenly to x < 0.
class WkbPotential {
public:
  WkbPotential(std::string counting_id, double v0, double scale, std::vector<double> u,
               std::vector<double> x, std::vector<double> dxdu)
      : counting_id_(std::move(counting_id)),
        v0_(v0),
        scale_(scale),
        u_(std::move(u)),
        x_(std::move(x)),
        dxdu_(std::move(dxdu)) {}

  const std::string& counting_id() const noexcept { return counting_id_; }
  double v0() const noexcept { return v0_; }
  double scale() const noexcept { return scale_; }
  double x_max() const { return x_.back(); }
  double e_max() const { return v0_ + u_.back() * u_.back(); }
  std::size_t size() const noexcept { return u_.size(); }

  /// (E, x) table rows.
  std::vector<std::pair<double, double>> samples() const {
    std::vector<std::pair<double, double>> out;
    out.reserve(u_.size());
    for (std::size_t j = 0; j < u_.size(); ++j) out.emplace_back(v0_ + u_[j] * u_[j], x_[j]);
    return out;
  }

  /// Turning point x(E) by Hermite interpolation in u.
  double x_of(double energy) const {
    if (!(energy >= v0_) || energy > e_max() + 1e-14 * std::abs(e_max())) {
      std::ostringstream msg;
      msg << "WkbPotential::x_of: E = " << energy << " outside [" << v0_ << ", " << e_max()
          << "]";
      throw DomainError(msg.str());
    }
    const double u = std::min(std::sqrt(energy - v0_), u_.back());
    const std::size_t j = segment(u_, u);
    return hermite(u_[j], u_[j + 1], x_[j], x_[j + 1], dxdu_[j], dxdu_[j + 1], u);
  }

  /// V(x) for |x| <= x_max.
  double eval(double x) const {
    const double ax = std::abs(x);
    if (ax > x_max() * (1.0 + 1e-14)) {
      std::ostringstream msg;
      msg << "WkbPotential::eval: |x| = " << ax << " beyond x_max = " << x_max();
      throw DomainError(msg.str());
    }
    const double xc = std::min(ax, x_max());
    const std::size_t j = segment(x_, xc);
    const double dx = x_[j + 1] - x_[j];
    const double secant = (u_[j + 1] - u_[j]) / dx;
    double m0 = 1.0 / dxdu_[j];
    double m1 = 1.0 / dxdu_[j + 1];
    // Fritsch-Carlson limiter keeps the inverse cubic monotone.
    const double a = m0 / secant, b = m1 / secant;
    const double r2 = a * a + b * b;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      m0 *= tau;
      m1 *= tau;
    }
    const double u = hermite(x_[j], x_[j + 1], u_[j], u_[j + 1], m0, m1, xc);
    return v0_ + u * u;
  }

  /// Samples V onto a grid with half length at most x_max.
  SampledPotential sample(const Grid& grid) const {
    if (grid.half_length() > x_max() * (1.0 + 1e-14))
      throw DomainError("WkbPotential::sample: grid extends beyond x_max");
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = eval(grid.x(i));
    return {grid, std::move(values)};
  }

private:
  static std::size_t segment(const std::vector<double>& knots, double t) {
    auto it = std::upper_bound(knots.begin(), knots.end(), t);
    std::size_t j = it == knots.begin() ? 0 : static_cast<std::size_t>(it - knots.begin()) - 1;
    return std::min(j, knots.size() - 2);
  }

  static double hermite(double t0, double t1, double y0, double y1, double m0, double m1,
                        double t) {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * m0 + (-2 * s3 + 3 * s2) * y1 +
           (s3 - s2) * h * m1;
  }

  std::string counting_id_;
  double v0_;
  double scale_;
  std::vector<double> u_;
  std::vector<double> x_;
  std::vector<double> dxdu_;
};

/// Tabulates x(E) on E = v0 + u^2, u uniform on [0, sqrt(e_max - v0)].
/// Throws NonMonotone at the first node where x stops increasing.
inline WkbPotential build_wkb_potential(const CountingFunction& cf, double v0, double e_max,
                                        std::size_t n_samples, double scale = kPhysicalScale) {
  detail::require_above_v0(cf, v0, e_max, "build_wkb_potential");
  if (n_samples < 16) throw DomainError("build_wkb_potential: needs n_samples >= 16");
  if (!(scale > 0.0)) throw DomainError("build_wkb_potential: scale must be positive");
  const double factor = kPhysicalScale / scale;
  const double u_max = std::sqrt(e_max - v0);
  std::vector<double> u(n_samples), x(n_samples, 0.0), dxdu(n_samples);
  for (std::size_t j = 0; j < n_samples; ++j)
    u[j] = u_max * static_cast<double>(j) / static_cast<double>(n_samples - 1);
  u.back() = u_max;

  auto integrand = [&](double t) { return detail::dx_du(cf, v0, t); };
  dxdu[0] = factor * integrand(0.0);
  if (!(dxdu[0] > 0.0)) throw NonMonotone("build_wkb_potential: n(v0) <= 0", v0);
  for (std::size_t j = 0; j + 1 < n_samples; ++j) {
    const double step = integrate(integrand, u[j], u[j + 1], detail::kOuterQuadrature);
    x[j + 1] = x[j] + factor * step;
    dxdu[j + 1] = factor * integrand(u[j + 1]);
    if (!(x[j + 1] > x[j]) || !(dxdu[j + 1] > 0.0)) {
      const double energy = v0 + u[j + 1] * u[j + 1];
      std::ostringstream msg;
      msg << "build_wkb_potential: x(E) stops increasing near E = " << energy << " for '"
          << cf.id << "' with v0 = " << v0 << " (dx/dE < 0; counting function infeasible)";
      throw NonMonotone(msg.str(), energy);
    }
  }
  return {cf.id, v0, scale, std::move(u), std::move(x), std::move(dxdu)};
}

/// Re-integrates the tabulated potential through the counting integral,
/// c * integral_0^{x(E)} sqrt(E - V(x)) dx. Should return N(E) - N(v0).
inline double counting_integral(const WkbPotential& wp, double energy) {
  const double x_turn = wp.x_of(energy);
  if (x_turn <= 0.0) return 0.0;
  // x = x_turn - w^2 makes the square-root edge at the turning point smooth.
  const double w_max = std::sqrt(x_turn);
  const double value = integrate(
      [&](double w) {
        const double gap = energy - wp.eval(x_turn - w * w);
        return 2.0 * w * std::sqrt(std::max(gap, 0.0));
      },
      0.0, w_max, QuadratureSpec{1e-12, 1e-10, 4000});
  return wp.scale() * value;
}

/// Predicted number of eigenvalues below E of the potential built from cf
/// with convention c, for the -psi'' + V psi = lambda psi solver (including
/// the 1/2 Maslov offset).
inline double predicted_level_count(const CountingFunction& cf, double v0, double energy,
                                    double scale = kPhysicalScale) {
  return (cf.N(energy) - cf.N(v0)) * kPhysicalScale / scale + 0.5;
}

struct FeasibilityReport {
  enum class Verdict { feasible_up_to, feasible_on_tested_range };

  std::string counting_id;
  double v0 = 0.0;
  std::optional<double> first_zero_crossing;
  Verdict verdict = Verdict::feasible_on_tested_range;
  std::pair<double, double> tested_range{0.0, 0.0};
  std::size_t samples = 0;
};

inline const char* to_string(FeasibilityReport::Verdict v) {
  return v == FeasibilityReport::Verdict::feasible_up_to ? "feasible-up-to"
                                                         : "feasible-on-tested-range";
}

/// Scans f(E) on (v0, e_hi] (log-spaced in E - v0) for its first sign
/// change, then refines it with find_root.
inline FeasibilityReport feasibility_scan(const CountingFunction& cf, double v0, double e_hi,
                                          std::size_t samples = 3000) {
  detail::require_above_v0(cf, v0, e_hi, "feasibility_scan");
  const double span = e_hi - v0;
  const double first = span * 1e-9;
  FeasibilityReport report;
  report.counting_id = cf.id;
  report.v0 = v0;
  report.tested_range = {v0 + first, e_hi};
  report.samples = samples;

  auto f = [&](double e) { return abel_f(cf, v0, e); };
  double prev_e = v0 + first;
  double prev_f = f(prev_e);
  for (std::size_t i = 1; i < samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
    const double e = i + 1 == samples ? e_hi : v0 + first * std::pow(span / first, t);
    const double fe = f(e);
    if ((prev_f > 0.0) != (fe > 0.0) || fe == 0.0) {
      const double root = find_root(f, Bracket{prev_e, e, prev_f, fe}, 1e-11 * e);
      report.first_zero_crossing = root;
      report.verdict = FeasibilityReport::Verdict::feasible_up_to;
      return report;
    }
    prev_e = e;
    prev_f = fe;
  }
  return report;
}

/// Large-E estimate for the power-sub family: the constant 2 alpha times
/// integral_0^{pi/2} sin^(-2 alpha) (for alpha = 1/6 this is q), and the
/// ratio E/V0 at which E^(alpha - 1/2)-decay of the positive term meets it.
struct PowerSubAsymptote {
  double limit_constant;
  double ratio_estimate;
};

inline PowerSubAsymptote power_sub_asymptote(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("power_sub_asymptote: 0 < alpha < 1/2");
  // phi = v^p with p = 1/(1 - 2 alpha) cancels the phi^(-2 alpha) edge.
  const double p = 1.0 / (1.0 - 2.0 * alpha);
  const double integral = integrate(
      [&](double v) {
        const double phi = std::pow(v, p);
        const double sinc = phi == 0.0 ? 1.0 : std::sin(phi) / phi;
        return p * std::pow(sinc, -2.0 * alpha);
      },
      0.0, std::pow(std::numbers::pi / 2.0, 1.0 / p), QuadratureSpec{1e-14, 1e-13, 2000});
  const double constant = 2.0 * alpha * integral;
  return {constant, std::pow(constant, 1.0 / (alpha - 0.5))};
}

}  // namespace primeham
