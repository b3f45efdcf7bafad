#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "primeham/errors.hpp"
#include "primeham/numerics/riccati.hpp"
#include "primeham/potential.hpp"
#include "primeham/primes.hpp"

namespace primeham {

/// Eigenvalues to insert below the threshold of V = 0, deepest last, and the
/// shift that maps the threshold back onto the largest prime.
struct InsertionPlan {
  std::vector<double> targets;
  double final_offset = 0.0;
  /// True when there is nothing to insert (a single prime).
  bool degenerate() const noexcept { return targets.empty(); }
};

/// Shift by -p_k and reverse: targets p_{k-1} - p_k, ..., p_1 - p_k.
inline InsertionPlan make_insertion_plan(const PrimeSet& primes) {
  if (primes.values.empty()) throw InvalidPlan("make_insertion_plan: empty prime set");
  InsertionPlan plan;
  const auto top = static_cast<double>(primes.values.back());
  plan.final_offset = top;
  for (auto it = primes.values.rbegin() + 1; it != primes.values.rend(); ++it)
    plan.targets.push_back(static_cast<double>(*it) - top);
  return plan;
}

/// Plan for an arbitrary strictly increasing spectrum; the largest value
/// becomes the threshold.
inline InsertionPlan make_insertion_plan(const std::vector<double>& spectrum) {
  if (spectrum.empty()) throw InvalidPlan("make_insertion_plan: empty spectrum");
  for (std::size_t i = 1; i < spectrum.size(); ++i)
    if (!(spectrum[i] > spectrum[i - 1]))
      throw InvalidPlan("make_insertion_plan: spectrum must be strictly increasing");
  InsertionPlan plan;
  plan.final_offset = spectrum.back();
  for (auto it = spectrum.rbegin() + 1; it != spectrum.rend(); ++it)
    plan.targets.push_back(*it - spectrum.back());
  return plan;
}

/// Nodeless solution psi = phi_minus + phi_plus at energy eps, both summands
/// scaled to 1 at x = 0, in log form.
struct DivergentSolution {
  std::vector<double> log_amplitude;  // ln psi
  std::vector<double> f;              // -psi'/psi
};

inline DivergentSolution divergent_solution(const SampledPotential& v, double eps) {
  const auto left = propagate_log_derivative(v, eps, Direction::left_to_right);
  const auto right = propagate_log_derivative(v, eps, Direction::right_to_left);
  const std::size_t n = v.size();
  const std::size_t c = v.grid.centre();
  const double l0 = left.log_amplitude[c];
  const double r0 = right.log_amplitude[c];

  DivergentSolution out;
  out.log_amplitude.resize(n);
  out.f.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lm = left.log_amplitude[i] - l0;
    const double lp = right.log_amplitude[i] - r0;
    // Log-sum-exp: weights are the shares of each summand in psi.
    const double hi = std::max(lm, lp);
    const double d = -std::abs(lm - lp);
    const double minor = std::exp(d) / (1.0 + std::exp(d));
    const double w_minus = lm >= lp ? 1.0 - minor : minor;
    out.log_amplitude[i] = hi + std::log1p(std::exp(d));
    out.f[i] = w_minus * left.f[i] + (1.0 - w_minus) * right.f[i];
  }
  return out;
}

/// Relative asymmetry allowed on outputs of symmetric inputs.
inline constexpr double kSymmetryTolerance = 1e-8;

/// One dressing step W = 2 eps + 2 f^2 - V with f = -psi'/psi of the nodeless
/// divergent solution at eps. W keeps the spectrum of V and gains eps as its
/// new ground state.
inline SampledPotential dress_once(const SampledPotential& v, double eps) {
  const auto psi = divergent_solution(v, eps);
  std::vector<double> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    w[i] = 2.0 * eps + 2.0 * psi.f[i] * psi.f[i] - v.values[i];
  SampledPotential out(v.grid, std::move(w), v.energy_offset);

  double scale = 1.0;
  for (double x : v.values) scale = std::max(scale, std::abs(x));
  scale = std::max(scale, std::abs(eps));
  if (asymmetry(v) <= kSymmetryTolerance * scale &&
      asymmetry(out) > kSymmetryTolerance * 10.0 * scale) {
    std::ostringstream msg;
    msg << "dress_once: output asymmetry " << asymmetry(out) << " on a symmetric input";
    throw SymmetryViolation(msg.str());
  }
  return out;
}

/// 1/psi on the grid, normalised to unit L2 norm; the new ground state.
inline std::vector<double> inserted_ground_state(const SampledPotential& v, double eps) {
  const auto psi = divergent_solution(v, eps);
  std::vector<double> phi(v.size());
  const double shift = *std::min_element(psi.log_amplitude.begin(), psi.log_amplitude.end());
  double norm = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    phi[i] = std::exp(shift - psi.log_amplitude[i]);
    norm += phi[i] * phi[i];
  }
  norm = std::sqrt(norm * v.grid.spacing());
  for (double& p : phi) p /= norm;
  return phi;
}

/// Grid requirements for inserting a plan: resolution of the fastest decay
/// and containment of the slowest tail.
struct GridRequirement {
  double max_spacing;
  double min_half_length;
};

inline constexpr double kMaxStepTimesDecay = 0.1;
inline constexpr double kMinTailDecayLengths = 15.0;

inline GridRequirement grid_requirement(const InsertionPlan& plan) {
  if (plan.degenerate()) return {std::numeric_limits<double>::infinity(), 0.0};
  const double deepest = -plan.targets.back();
  const double shallowest = -plan.targets.front();
  return {kMaxStepTimesDecay / std::sqrt(deepest),
          kMinTailDecayLengths / std::sqrt(shallowest)};
}

inline void check_grid(const InsertionPlan& plan, const Grid& grid) {
  const auto need = grid_requirement(plan);
  if (grid.spacing() > need.max_spacing) {
    std::ostringstream msg;
    msg << "grid spacing " << grid.spacing() << " exceeds the maximum " << need.max_spacing
        << " (need h * sqrt(p_k - p_1) <= " << kMaxStepTimesDecay << "; at least "
        << static_cast<std::size_t>(std::ceil(2.0 * grid.half_length() / need.max_spacing)) + 1
        << " points for this half length)";
    throw GridTooCoarse(msg.str());
  }
  if (grid.half_length() < need.min_half_length) {
    std::ostringstream msg;
    msg << "grid half length " << grid.half_length() << " is below the minimum "
        << need.min_half_length << " (need L * sqrt(smallest insertion gap) >= "
        << kMinTailDecayLengths << ")";
    throw GridTooShort(msg.str());
  }
}

/// Inserts every target of the plan into V = 0 on the grid. The observer,
/// when given, sees each intermediate potential and the level just added.
inline SampledPotential dress_sequence(
    const InsertionPlan& plan, const Grid& grid,
    const std::function<void(const SampledPotential&, double)>& observer = {}) {
  for (std::size_t i = 1; i < plan.targets.size(); ++i)
    if (!(plan.targets[i] < plan.targets[i - 1]))
      throw InvalidPlan("dress_sequence: targets must be strictly decreasing");
  if (!plan.targets.empty() && !(plan.targets.front() < 0.0))
    throw InvalidPlan("dress_sequence: first target must lie below 0");
  SampledPotential v(grid, std::vector<double>(grid.size(), 0.0));
  for (double eps : plan.targets) {
    v = dress_once(v, eps);
    if (observer) observer(v, eps);
  }
  v.energy_offset = plan.final_offset;
  return v;
}

/// Potential (offset p_k) whose bound levels plus continuum threshold are
/// the first k primes.
inline SampledPotential build_prime_potential(std::size_t k, const Grid& grid) {
  if (k < 2) throw DomainError("build_prime_potential: requires k >= 2");
  const auto plan = make_insertion_plan(first_primes(k));
  check_grid(plan, grid);
  return dress_sequence(plan, grid);
}

/// A grid meeting the requirements of the first k primes with the given
/// safety margins on both bounds.
inline Grid recommended_grid(std::size_t k, double spacing_margin = 4.0,
                             double min_half_length = 20.0) {
  if (k < 2) return Grid(min_half_length, 4001);
  const auto need = grid_requirement(make_insertion_plan(first_primes(k)));
  const double half_length = std::max(min_half_length, 1.5 * need.min_half_length);
  const double h = need.max_spacing / spacing_margin;
  auto n = static_cast<std::size_t>(std::ceil(2.0 * half_length / h)) + 1;
  if (n % 2 == 0) ++n;
  return Grid(half_length, n);
}

}  // namespace primeham
