#pragma once

#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "primeham/errors.hpp"
#include "primeham/numerics/special.hpp"

namespace primeham {

/// Eigenvalue counting function N(E) with its density n = dN/dE and n'.
/// Valid for E > domain_min.
struct CountingFunction {
  std::string id;
  std::function<double(double)> N;
  std::function<double(double)> density;
  std::function<double(double)> density_prime;
  double domain_min = -std::numeric_limits<double>::infinity();
};

namespace counting {

namespace detail {
inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}
}  // namespace detail

/// N = aE + b (harmonic oscillator).
inline CountingFunction linear(double a, double b) {
  if (!(a > 0.0)) throw DomainError("linear counting function needs a > 0");
  return {"linear:" + detail::format_number(a) + "," + detail::format_number(b),
          [a, b](double e) { return a * e + b; }, [a](double) { return a; },
          [](double) { return 0.0; }, -std::numeric_limits<double>::infinity()};
}

/// N = 2 sqrt(E) (square-law spectrum).
inline CountingFunction square_root() {
  return {"sqrt", [](double e) { return 2.0 * std::sqrt(e); },
          [](double e) { return 1.0 / std::sqrt(e); },
          [](double e) { return -0.5 / (e * std::sqrt(e)); }, 0.0};
}

/// N = E^(1/2 - alpha) / (1/2 - alpha), 0 < alpha < 1/2: sparser than squares.
inline CountingFunction power_sub(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw DomainError("power-sub counting function needs 0 < alpha < 1/2");
  return {"power-sub:" + detail::format_number(alpha),
          [alpha](double e) { return std::pow(e, 0.5 - alpha) / (0.5 - alpha); },
          [alpha](double e) { return std::pow(e, -(0.5 + alpha)); },
          [alpha](double e) { return -(0.5 + alpha) * std::pow(e, -(1.5 + alpha)); }, 0.0};
}

/// N = E^(1/2 + beta) / (1/2 + beta), beta > 0: denser than squares.
inline CountingFunction power_super(double beta) {
  if (!(beta > 0.0)) throw DomainError("power-super counting function needs beta > 0");
  return {"power-super:" + detail::format_number(beta),
          [beta](double e) { return std::pow(e, 0.5 + beta) / (0.5 + beta); },
          [beta](double e) { return std::pow(e, beta - 0.5); },
          [beta](double e) { return (beta - 0.5) * std::pow(e, beta - 1.5); }, 0.0};
}

/// N = log_p E (geometric spectrum 1, p, p^2, ...).
inline CountingFunction log_geometric(double p) {
  if (!(p > 1.0)) throw DomainError("log counting function needs p > 1");
  const double lp = std::log(p);
  return {"log:" + detail::format_number(p), [lp](double e) { return std::log(e) / lp; },
          [lp](double e) { return 1.0 / (e * lp); },
          [lp](double e) { return -1.0 / (e * e * lp); }, 0.0};
}

/// N = li(E), the leading-order prime counting function.
inline CountingFunction prime_li() {
  return {"li", [](double e) { return li(e); }, [](double e) { return 1.0 / std::log(e); },
          [](double e) {
            const double l = std::log(e);
            return -1.0 / (e * l * l);
          },
          1.0};
}

/// Leading term of the zeta-zero counting formula, N = (E/2pi) ln(E/(2pi e)).
inline CountingFunction riemann_von_mangoldt() {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return {"rvm",
          [](double e) { return e / two_pi * (std::log(e / two_pi) - 1.0); },
          [](double e) { return std::log(e / two_pi) / two_pi; },
          [](double e) { return 1.0 / (two_pi * e); }, two_pi};
}

/// Pointwise sum; Abel inversion is linear, so f(sum) = f(first) + f(second).
inline CountingFunction sum(const CountingFunction& first, const CountingFunction& second) {
  return {first.id + "+" + second.id,
          [a = first.N, b = second.N](double e) { return a(e) + b(e); },
          [a = first.density, b = second.density](double e) { return a(e) + b(e); },
          [a = first.density_prime, b = second.density_prime](double e) { return a(e) + b(e); },
          std::max(first.domain_min, second.domain_min)};
}

namespace detail {
inline std::vector<double> parse_numbers(std::string_view text, std::string_view spec) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto piece = text.substr(0, comma);
    double value = 0.0;
    const auto res = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (res.ec != std::errc{} || res.ptr != piece.data() + piece.size())
      throw DomainError("counting spec '" + std::string(spec) + "': bad number '" +
                        std::string(piece) + "'");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}
}  // namespace detail

/// Parses "li", "sqrt", "rvm", "linear:a,b", "power-sub:alpha",
/// "power-super:beta" or "log:p".
inline CountingFunction parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const auto name = spec.substr(0, colon);
  const auto args = colon == std::string_view::npos
                        ? std::vector<double>{}
                        : detail::parse_numbers(spec.substr(colon + 1), spec);
  auto need = [&](std::size_t count) {
    if (args.size() != count) {
      std::ostringstream msg;
      msg << "counting spec '" << spec << "' expects " << count << " parameter(s)";
      throw DomainError(msg.str());
    }
  };
  if (name == "li") return need(0), prime_li();
  if (name == "sqrt") return need(0), square_root();
  if (name == "rvm") return need(0), riemann_von_mangoldt();
  if (name == "linear") return need(2), linear(args[0], args[1]);
  if (name == "power-sub") return need(1), power_sub(args[0]);
  if (name == "power-super") return need(1), power_super(args[0]);
  if (name == "log") return need(1), log_geometric(args[0]);
  throw DomainError("unknown counting function '" + std::string(spec) + "'");
}

}  // namespace counting
}  // namespace primeham
