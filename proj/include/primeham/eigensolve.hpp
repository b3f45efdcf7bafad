#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "primeham/errors.hpp"
#include "primeham/numerics/roots.hpp"
#include "primeham/potential.hpp"

namespace primeham {

/// Bound levels of a sampled potential, ascending.
struct Spectrum {
  std::vector<double> eigenvalues;
  /// Level within 10 solver_tol of the ceiling, or the appended threshold.
  std::vector<bool> near_continuum;
  double solver_tol = 0.0;
  double ceiling = 0.0;
  /// The last level is the zero-energy half-bound state at the ceiling.
  bool threshold_level = false;

  std::size_t size() const noexcept { return eigenvalues.size(); }

  Spectrum shifted(double offset) const {
    Spectrum out(*this);
    for (double& e : out.eigenvalues) e += offset;
    out.ceiling += offset;
    return out;
  }
};

namespace detail {

/// Per-step growth factor of the Numerov solution that decays into a
/// constant exterior potential with V - E = q. One for q <= 0.
inline double exterior_growth(double q, double h2) {
  if (q <= 0.0) return 1.0;
  const double s = h2 * q;
  const double beta_minus_one = 0.5 * s / (1.0 - s / 12.0);
  return 1.0 + beta_minus_one + std::sqrt(beta_minus_one * (beta_minus_one + 2.0));
}

/// Numerov recursion coefficients for one energy.
class NumerovSweep {
public:
  NumerovSweep(const SampledPotential& v, double energy)
      : v_(v.values), energy_(energy), h2_(v.grid.spacing() * v.grid.spacing()) {}

  double a(std::size_t i) const { return 1.0 - h2_ * (v_[i] - energy_) / 12.0; }
  double b(std::size_t i) const { return 2.0 + 10.0 * h2_ * (v_[i] - energy_) / 12.0; }
  double left_growth() const { return exterior_growth(v_.front() - energy_, h2_); }
  double right_growth() const { return exterior_growth(v_.back() - energy_, h2_); }
  std::size_t size() const { return v_.size(); }

private:
  const std::vector<double>& v_;
  double energy_;
  double h2_;
};

inline constexpr double kRescale = 1e200;

inline void check_resolution(const SampledPotential& v, double energy) {
  const double h2 = v.grid.spacing() * v.grid.spacing();
  for (double x : v.values) {
    if (h2 * (x - energy) >= 12.0)
      throw DomainError("Numerov: grid too coarse for the potential range");
  }
}

inline std::size_t matching_index(const SampledPotential& v, double energy) {
  const std::size_t n = v.size();
  const std::size_t c = v.grid.centre();
  std::size_t turn = c;
  for (std::size_t i = n; i-- > c;) {
    if (v.values[i] <= energy) {
      turn = i;
      break;
    }
  }
  const std::size_t m = c + (turn - c) / 2;
  return std::clamp<std::size_t>(m, 2, n - 4);
}

/// Decaying solution launched from one boundary and swept to the matching
/// nodes (m, m+1), unit norm there, with its sign changes on the swept side.
struct SweepEnd {
  double at_m;
  double at_m1;
  int nodes;
};

inline SweepEnd sweep_from_left(const NumerovSweep& sw, std::size_t m) {
  double prev = 1.0, cur = sw.left_growth();  // psi_0, psi_1
  int nodes = 0;
  for (std::size_t i = 1; i < m + 1; ++i) {
    const double next = (sw.b(i) * cur - sw.a(i - 1) * prev) / sw.a(i + 1);
    if (i < m && (next < 0.0) != (cur < 0.0)) ++nodes;  // psi_0..psi_m only
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
    }
  }
  const double norm = std::hypot(prev, cur);
  return {prev / norm, cur / norm, nodes};
}

inline SweepEnd sweep_from_right(const NumerovSweep& sw, std::size_t m) {
  const std::size_t n = sw.size();
  double prev = 1.0, cur = sw.right_growth();  // psi_{n-1}, psi_{n-2}
  int nodes = 0;
  for (std::size_t i = n - 2; i > m; --i) {
    const double next = (sw.b(i) * cur - sw.a(i + 1) * prev) / sw.a(i - 1);
    if ((next < 0.0) != (cur < 0.0)) ++nodes;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
    }
  }
  const double norm = std::hypot(prev, cur);
  return {cur / norm, prev / norm, nodes};
}

/// Levels below E: nodes of both decaying solutions on their own side of
/// the matching point, plus one when the left log-derivative there has
/// already dropped below the right one. Each sweep runs only in its stable
/// direction, so deep wells cannot flood the count with the growing mode.
inline int sturm_count(const SampledPotential& v, double energy) {
  const NumerovSweep sw(v, energy);
  const std::size_t m = matching_index(v, energy);
  const auto l = sweep_from_left(sw, m);
  const auto r = sweep_from_right(sw, m);
  const bool past = l.at_m1 * r.at_m * std::copysign(1.0, l.at_m * r.at_m) <
                    r.at_m1 * l.at_m * std::copysign(1.0, l.at_m * r.at_m);
  return l.nodes + r.nodes + (past ? 1 : 0);
}

/// Normalised Casoratian of the left- and right-launched solutions at
/// nodes (m, m+1); zero exactly at a discrete eigenvalue.
inline double matching_mismatch(const SampledPotential& v, double energy, std::size_t m) {
  const NumerovSweep sw(v, energy);
  const auto l = sweep_from_left(sw, m);
  const auto r = sweep_from_right(sw, m);
  return l.at_m * r.at_m1 - l.at_m1 * r.at_m;
}

struct LevelBracket {
  double lo;
  double hi;
  int index;
};

inline void isolate_levels(const SampledPotential& v, double lo, int count_lo, double hi,
                           int count_hi, std::vector<LevelBracket>& out) {
  if (count_hi <= count_lo) return;
  if (count_hi - count_lo == 1) {
    out.push_back({lo, hi, count_lo});
    return;
  }
  const double mid = 0.5 * (lo + hi);
  if (!(mid > lo && mid < hi)) throw Error("eigensolve: could not separate levels");
  const int count_mid = sturm_count(v, mid);
  isolate_levels(v, lo, count_lo, mid, count_mid, out);
  isolate_levels(v, mid, count_mid, hi, count_hi, out);
}

inline double refine_level(const SampledPotential& v, LevelBracket br, double tol) {
  const std::size_t m = matching_index(v, 0.5 * (br.lo + br.hi));
  auto mismatch = [&](double e) { return matching_mismatch(v, e, m); };
  const double f_lo = mismatch(br.lo);
  const double f_hi = mismatch(br.hi);
  if ((f_lo > 0.0) != (f_hi > 0.0)) return find_root(mismatch, {br.lo, br.hi, f_lo, f_hi}, tol);
  // Mismatch lost to rounding; bisect on the Sturm count alone.
  while (br.hi - br.lo > tol) {
    const double mid = 0.5 * (br.lo + br.hi);
    if (sturm_count(v, mid) > br.index)
      br.hi = mid;
    else
      br.lo = mid;
  }
  return 0.5 * (br.lo + br.hi);
}

inline double energy_floor(const SampledPotential& v) {
  const double lowest = v.minimum();
  return lowest - 1e-12 * std::max(1.0, std::abs(lowest));
}

inline double usable_ceiling(const SampledPotential& v, double ceiling, double tol) {
  const double wall = v.ceiling();
  const double margin = std::max(tol, 1e-12 * std::max(1.0, std::abs(wall)));
  return std::min(ceiling, wall - margin);
}

}  // namespace detail

/// Number of eigenvalues below E (Sturm oscillation count of the
/// left-launched decaying solution, including the right boundary check).
inline int count_nodes(const SampledPotential& v, double energy) {
  if (!(energy < v.ceiling())) {
    std::ostringstream msg;
    msg << "count_nodes: E = " << energy << " is not below the boundary potential "
        << v.ceiling();
    throw NotBound(msg.str());
  }
  detail::check_resolution(v, energy);
  if (energy <= v.minimum()) return 0;
  return detail::sturm_count(v, energy);
}

/// All eigenvalues below the ceiling (clipped to just under the boundary
/// potential), each to bracket width tol.
inline Spectrum spectrum_below(const SampledPotential& v, double ceiling, double tol) {
  if (!(tol > 0.0)) throw DomainError("spectrum_below: tolerance must be positive");
  Spectrum out;
  out.solver_tol = tol;
  out.ceiling = std::min(ceiling, v.ceiling());
  const double top = detail::usable_ceiling(v, ceiling, tol);
  const double floor = detail::energy_floor(v);
  if (!(top > floor)) return out;
  const int count_top = count_nodes(v, top);
  std::vector<detail::LevelBracket> brackets;
  detail::isolate_levels(v, floor, 0, top, count_top, brackets);
  for (const auto& br : brackets) {
    const double level = detail::refine_level(v, br, tol);
    out.eigenvalues.push_back(level);
    out.near_continuum.push_back(out.ceiling - level <= 10.0 * tol);
  }
  return out;
}

/// Eigenvalue number index (0 = ground state).
inline double solve_level(const SampledPotential& v, int index, double tol) {
  if (index < 0) throw NoSuchLevel("solve_level: negative level index");
  const double top = detail::usable_ceiling(v, v.ceiling(), tol);
  double lo = detail::energy_floor(v);
  double hi = top;
  const int count_top = count_nodes(v, top);
  if (index >= count_top) {
    std::ostringstream msg;
    msg << "solve_level: level " << index << " does not exist below the ceiling ("
        << count_top << " bound levels)";
    throw NoSuchLevel(msg.str());
  }
  int count_lo = 0, count_hi = count_top;
  // Shrink until the bracket holds exactly level `index`.
  while (!(count_lo == index && count_hi == index + 1)) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) throw Error("solve_level: could not isolate level");
    const int cm = detail::sturm_count(v, mid);
    if (cm > index) {
      hi = mid;
      count_hi = cm;
    } else {
      lo = mid;
      count_lo = cm;
    }
  }
  return detail::refine_level(v, {lo, hi, index}, tol);
}

/// Zero-energy half-bound state at the ceiling: present when both tails are
/// flat at the ceiling value and the solution launched flat from the left
/// stays flat at the right boundary (no linear growth).
inline std::optional<double> threshold_level(const SampledPotential& v) {
  const double wall = v.ceiling();
  const double scale = std::max(1.0, std::abs(wall));
  const std::size_t n = v.size();
  const std::size_t tail = std::max<std::size_t>(n / 20, 4);
  for (std::size_t i = 0; i < tail; ++i) {
    if (std::abs(v.values[i] - wall) > 1e-6 * scale ||
        std::abs(v.values[n - 1 - i] - wall) > 1e-6 * scale)
      return std::nullopt;
  }
  detail::NumerovSweep sw(v, wall);
  double prev = 1.0, cur = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double next = (sw.b(i) * cur - sw.a(i - 1) * prev) / sw.a(i + 1);
    prev = cur;
    cur = next;
    if (std::abs(cur) > detail::kRescale) {
      cur /= detail::kRescale;
      prev /= detail::kRescale;
    }
  }
  if (prev == 0.0) return std::nullopt;
  const double log_derivative = (cur / prev - 1.0) / v.grid.spacing();
  if (std::abs(log_derivative) * v.grid.half_length() < 1e-2) return wall;
  return std::nullopt;
}

/// Bound levels below the ceiling plus, when present and not already
/// resolved as a bound level, the threshold half-bound state.
inline Spectrum spectrum_with_threshold(const SampledPotential& v, double tol) {
  Spectrum out = spectrum_below(v, v.ceiling(), tol);
  const bool top_resolved = !out.near_continuum.empty() && out.near_continuum.back();
  if (!top_resolved) {
    if (auto t = threshold_level(v)) {
      out.eigenvalues.push_back(*t);
      out.near_continuum.push_back(true);
      out.threshold_level = true;
    }
  }
  return out;
}

struct LevelCheck {
  double target;
  double computed;
  double abs_err;
  double rel_err;
};

struct VerificationReport {
  std::vector<LevelCheck> levels;
  double max_rel_err = 0.0;
  double rel_tol = 0.0;
  bool pass = false;
  std::size_t expected_count = 0;
  std::size_t computed_count = 0;
  /// Mean and spread (max - min) of computed - target over compared levels.
  double mean_shift = 0.0;
  double shift_spread = 0.0;
  std::string diagnostic;
};

/// Level-by-level comparison, rel_err = |computed - target| / max(1, |target|).
inline VerificationReport verify_against(const Spectrum& computed,
                                         const std::vector<double>& target, double rel_tol) {
  VerificationReport rep;
  rep.rel_tol = rel_tol;
  rep.expected_count = target.size();
  rep.computed_count = computed.size();
  const std::size_t common = std::min(target.size(), computed.size());
  double lo = 0.0, hi = 0.0, total = 0.0;
  for (std::size_t i = 0; i < common; ++i) {
    const double t = target[i], c = computed.eigenvalues[i];
    const double diff = c - t;
    const LevelCheck lc{t, c, std::abs(diff), std::abs(diff) / std::max(1.0, std::abs(t))};
    rep.max_rel_err = std::max(rep.max_rel_err, lc.rel_err);
    rep.levels.push_back(lc);
    lo = i == 0 ? diff : std::min(lo, diff);
    hi = i == 0 ? diff : std::max(hi, diff);
    total += diff;
  }
  if (common > 0) {
    rep.mean_shift = total / static_cast<double>(common);
    rep.shift_spread = hi - lo;
  }
  const bool levels_ok = rep.max_rel_err <= rel_tol;
  rep.pass = levels_ok && target.size() == computed.size();

  std::ostringstream diag;
  if (target.size() != computed.size()) {
    diag << "length mismatch: expected " << target.size() << " levels, computed "
         << computed.size() << "; ";
  }
  if (!levels_ok) {
    diag << "max relative error " << rep.max_rel_err << " exceeds " << rel_tol << "; ";
    if (common >= 2 && std::abs(rep.mean_shift) > 0.0 &&
        rep.shift_spread <= 0.05 * std::abs(rep.mean_shift)) {
      diag << "levels are uniformly shifted by " << std::showpos << rep.mean_shift
           << std::noshowpos << "; ";
    }
  }
  if (rep.pass) diag << "pass";
  rep.diagnostic = diag.str();
  if (!rep.diagnostic.empty() && rep.diagnostic.back() == ' ') {
    rep.diagnostic.pop_back();
    rep.diagnostic.pop_back();
  }
  return rep;
}

}  // namespace primeham
