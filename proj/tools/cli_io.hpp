#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "primeham/errors.hpp"
#include "primeham/potential.hpp"

namespace primeham::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest decimal that reads back to the same double.
inline std::string format_double(double v) {
  if (!std::isfinite(v)) throw NonFinite("csv: refusing to write a non-finite value");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw DomainError("cannot parse number '" + std::string(text) + "'");
  return v;
}

/// Relative paths land under PRIMEHAM_OUTPUT_DIR when it is set.
inline std::filesystem::path resolve_output(const std::filesystem::path& p) {
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("PRIMEHAM_OUTPUT_DIR"); dir && *dir)
    return std::filesystem::path(dir) / p;
  return p;
}

/// foo/bar.csv + ".manifest.json" -> foo/bar.manifest.json
inline std::filesystem::path sidecar(const std::filesystem::path& data, const std::string& suffix) {
  auto out = data;
  out.replace_extension();
  out += suffix;
  return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw Error("write failed for " + path.string());
}

class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(const std::vector<double>& row) {
    if (row.size() != header_.size()) throw Error("csv: row width does not match header");
    rows_.push_back(row);
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
      if (i) out += ',';
      out += header_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += format_double(row[i]);
      }
      out += '\n';
    }
    return out;
  }

private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

inline std::string potential_csv(const SampledPotential& v) {
  CsvTable t({"x", "V"});
  const auto values = v.exported_values();
  for (std::size_t i = 0; i < v.size(); ++i) t.add_row({v.grid.x(i), values[i]});
  return t.str();
}

/// Reads an `x,V` table on a uniform symmetric grid with an odd point count.
inline SampledPotential read_potential_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw DomainError("cannot open potential file " + path.string());
  std::string line;
  if (!std::getline(is, line)) throw DomainError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,V") throw DomainError(path.string() + ": expected header 'x,V'");
  std::vector<double> xs, vs;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DomainError(path.string() + ": malformed row");
    std::string_view sv(line);
    xs.push_back(parse_double(sv.substr(0, comma)));
    vs.push_back(parse_double(sv.substr(comma + 1)));
  }
  if (xs.size() < 5 || xs.size() % 2 == 0)
    throw DomainError(path.string() + ": need an odd number (>= 5) of grid points");
  const double half = xs.back();
  const Grid grid(half, xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(xs[i] - grid.x(i)) > 1e-9 * half)
      throw DomainError(path.string() + ": grid is not uniform and symmetric about 0");
  }
  return SampledPotential(grid, std::move(vs));
}

/// Whitespace- or comma-separated numbers.
inline std::vector<double> read_number_list(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw DomainError("cannot open " + path.string());
  std::vector<double> out;
  std::string token;
  while (is >> token) {
    std::string_view sv(token);
    std::size_t start = 0;
    while (start <= sv.size()) {
      const auto comma = sv.find(',', start);
      const auto piece = sv.substr(start, comma == std::string_view::npos ? sv.npos : comma - start);
      if (!piece.empty()) out.push_back(parse_double(piece));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Run record written next to each data file.
struct Manifest {
  std::string subcommand;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  double convention_scale = 0.0;
  std::vector<std::string> outputs;
  nlohmann::ordered_json notes = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["subcommand"] = subcommand;
    j["parameters"] = parameters;
    j["convention_scale"] = convention_scale;
    j["tool_version"] = kToolVersion;
    j["timestamp"] = utc_timestamp();
    j["outputs"] = outputs;
    if (!notes.empty()) j["notes"] = notes;
    return j;
  }
};

inline void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  write_text(path, j.dump(2) + "\n");
}

}  // namespace primeham::cli
