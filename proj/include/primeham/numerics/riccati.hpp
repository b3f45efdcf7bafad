#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "primeham/errors.hpp"
#include "primeham/potential.hpp"

namespace primeham {

enum class Direction { left_to_right, right_to_left };

/// Solution of -psi'' + V psi = E psi kept as (ln|psi|, f = -psi'/psi) on the
/// grid nodes, ascending in x. log_amplitude is zero at the launch boundary.
struct LogSolution {
  std::vector<double> log_amplitude;
  std::vector<double> f;
};

namespace detail {

/// Cubic interpolation of samples at the midpoint between nodes i and i+1.
inline double midpoint_value(const std::vector<double>& y, std::size_t i) {
  const std::size_t n = y.size();
  if (i == 0) return (5.0 * y[0] + 15.0 * y[1] - 5.0 * y[2] + y[3]) / 16.0;
  if (i + 2 >= n)
    return (y[n - 4] - 5.0 * y[n - 3] + 15.0 * y[n - 2] + 5.0 * y[n - 1]) / 16.0;
  return (9.0 * (y[i] + y[i + 1]) - (y[i - 1] + y[i + 2])) / 16.0;
}

/// Fourth-order Runge-Kutta on l' = g, g' = q - g^2 along the array order,
/// launched with the decaying-at-the-start value g = sqrt(q[0]).
inline void integrate_riccati(const std::vector<double>& q, double h,
                              std::vector<double>& log_amp, std::vector<double>& g) {
  const std::size_t n = q.size();
  log_amp.assign(n, 0.0);
  g.assign(n, 0.0);
  if (!(q[0] > 0.0)) {
    std::ostringstream msg;
    msg << "propagate_log_derivative: energy is not below the launch boundary potential"
        << " (V - E = " << q[0] << ")";
    throw DomainError(msg.str());
  }
  g[0] = std::sqrt(q[0]);
  const double blowup = -0.5 / h;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double qm = midpoint_value(q, i);
    const double g1 = g[i];
    const double d1 = q[i] - g1 * g1;
    const double g2 = g1 + 0.5 * h * d1;
    const double d2 = qm - g2 * g2;
    const double g3 = g1 + 0.5 * h * d2;
    const double d3 = qm - g3 * g3;
    const double g4 = g1 + h * d3;
    const double d4 = q[i + 1] - g4 * g4;
    g[i + 1] = g1 + h / 6.0 * (d1 + 2.0 * d2 + 2.0 * d3 + d4);
    log_amp[i + 1] = log_amp[i] + h / 6.0 * (g1 + 2.0 * g2 + 2.0 * g3 + g4);
    if (!std::isfinite(g[i + 1]) || g[i + 1] < blowup) {
      std::ostringstream msg;
      msg << "propagate_log_derivative: solution changes sign near node " << i + 1
          << "; energy is not below the spectrum or the grid is too coarse";
      throw NodeDetected(msg.str());
    }
  }
}

}  // namespace detail

/// Growing solution launched from one boundary with the decaying condition
/// there, propagated toward the opposite boundary in log form.
inline LogSolution propagate_log_derivative(const SampledPotential& v, double energy,
                                            Direction direction) {
  const std::size_t n = v.size();
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = v.values[i] - energy;
  if (direction == Direction::right_to_left) std::reverse(q.begin(), q.end());

  LogSolution out;
  std::vector<double> g;
  detail::integrate_riccati(q, v.grid.spacing(), out.log_amplitude, g);
  if (direction == Direction::left_to_right) {
    for (double& gi : g) gi = -gi;
  } else {
    // g was d(ln psi)/d(-x), which is already -psi'/psi.
    std::reverse(g.begin(), g.end());
    std::reverse(out.log_amplitude.begin(), out.log_amplitude.end());
  }
  out.f = std::move(g);
  return out;
}

}  // namespace primeham
