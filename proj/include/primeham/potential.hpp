#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>
#include <vector>

#include "primeham/errors.hpp"

namespace primeham {

/// Uniform grid on [-L, L] with an odd number of nodes, so x = 0 is a node.
class Grid {
public:
  Grid(double half_length, std::size_t n_points)
      : half_length_(half_length), n_points_(n_points) {
    if (!(half_length > 0.0) || !std::isfinite(half_length))
      throw DomainError("Grid: half length must be positive and finite");
    if (n_points < 5 || n_points % 2 == 0)
      throw DomainError("Grid: number of points must be odd and at least 5");
  }

  double half_length() const noexcept { return half_length_; }
  std::size_t size() const noexcept { return n_points_; }
  std::size_t centre() const noexcept { return (n_points_ - 1) / 2; }
  double spacing() const noexcept {
    return 2.0 * half_length_ / static_cast<double>(n_points_ - 1);
  }
  /// Node coordinate; mirror nodes are exact negatives of each other.
  double x(std::size_t i) const noexcept {
    const auto offset = static_cast<double>(i) - static_cast<double>(centre());
    return half_length_ * offset / static_cast<double>(centre());
  }
  std::vector<double> nodes() const {
    std::vector<double> out(n_points_);
    for (std::size_t i = 0; i < n_points_; ++i) out[i] = x(i);
    return out;
  }

  bool operator==(const Grid&) const = default;

private:
  double half_length_;
  std::size_t n_points_;
};

/// Potential values on a grid. energy_offset is added to the values on
/// export; all spectral work inside the library uses the raw values.
struct SampledPotential {
  Grid grid;
  std::vector<double> values;
  double energy_offset = 0.0;

  SampledPotential(Grid g, std::vector<double> v, double offset = 0.0)
      : grid(g), values(std::move(v)), energy_offset(offset) {
    if (values.size() != grid.size())
      throw DomainError("SampledPotential: value count does not match grid");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i])) {
        std::ostringstream msg;
        msg << "SampledPotential: non-finite value at node " << i;
        throw NonFinite(msg.str());
      }
    }
    if (!std::isfinite(offset)) throw NonFinite("SampledPotential: non-finite offset");
  }

  static SampledPotential from_function(Grid g, const std::function<double(double)>& v,
                                        double offset = 0.0) {
    std::vector<double> values(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) values[i] = v(g.x(i));
    return {g, std::move(values), offset};
  }

  std::size_t size() const noexcept { return values.size(); }
  double left_boundary() const { return values.front(); }
  double right_boundary() const { return values.back(); }
  /// Bound-state ceiling: the lower of the two boundary values.
  double ceiling() const { return std::min(values.front(), values.back()); }
  double minimum() const { return *std::min_element(values.begin(), values.end()); }

  /// Values with energy_offset folded in.
  std::vector<double> exported_values() const {
    std::vector<double> out(values);
    for (double& v : out) v += energy_offset;
    return out;
  }
};

/// max |V(x_i) - V(-x_i)| over the grid.
inline double asymmetry(const SampledPotential& v) {
  double worst = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n / 2; ++i)
    worst = std::max(worst, std::abs(v.values[i] - v.values[n - 1 - i]));
  return worst;
}

}  // namespace primeham
