#pragma once

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli_io.hpp"
#include "primeham/primeham.hpp"

namespace primeham::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumeric = 2 };

namespace detail {

using json = nlohmann::ordered_json;

inline json to_json(const Spectrum& s) {
  json j;
  j["eigenvalues"] = s.eigenvalues;
  j["near_continuum"] = s.near_continuum;
  j["threshold_level"] = s.threshold_level;
  j["ceiling"] = s.ceiling;
  j["solver_tol"] = s.solver_tol;
  return j;
}

inline json to_json(const VerificationReport& r) {
  json j;
  j["pass"] = r.pass;
  j["rel_tol"] = r.rel_tol;
  j["max_rel_err"] = r.max_rel_err;
  j["expected_count"] = r.expected_count;
  j["computed_count"] = r.computed_count;
  j["mean_shift"] = r.mean_shift;
  j["shift_spread"] = r.shift_spread;
  j["diagnostic"] = r.diagnostic;
  json levels = json::array();
  for (const auto& l : r.levels)
    levels.push_back({{"target", l.target}, {"computed", l.computed}, {"abs_err", l.abs_err},
                      {"rel_err", l.rel_err}});
  j["levels"] = std::move(levels);
  return j;
}

inline json to_json(const FeasibilityReport& r) {
  json j;
  j["counting"] = r.counting_id;
  j["v0"] = r.v0;
  j["verdict"] = to_string(r.verdict);
  j["first_zero_crossing"] = r.first_zero_crossing ? json(*r.first_zero_crossing) : json(nullptr);
  j["first_zero_crossing_over_v0"] =
      r.first_zero_crossing && r.v0 != 0.0 ? json(*r.first_zero_crossing / r.v0) : json(nullptr);
  j["tested_range"] = {r.tested_range.first, r.tested_range.second};
  j["samples"] = r.samples;
  return j;
}

inline std::vector<double> prime_targets(std::size_t k) {
  const auto p = first_primes(k);
  return {p.values.begin(), p.values.end()};
}

/// primes:k or file:path
inline std::vector<double> parse_expectation(const std::string& spec) {
  if (spec.rfind("primes:", 0) == 0) {
    const double k = parse_double(std::string_view(spec).substr(7));
    if (!(k >= 1.0) || k != std::floor(k)) throw DomainError("--expect primes:k needs k >= 1");
    return prime_targets(static_cast<std::size_t>(k));
  }
  if (spec.rfind("file:", 0) == 0) return read_number_list(spec.substr(5));
  throw DomainError("--expect must be primes:k or file:path (got '" + spec + "')");
}

inline std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string_view sv(text);
  std::size_t start = 0;
  while (start <= sv.size()) {
    const auto comma = sv.find(',', start);
    const auto piece = sv.substr(start, comma == std::string_view::npos ? sv.npos : comma - start);
    if (!piece.empty()) out.push_back(parse_double(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

struct PrimesArgs {
  std::size_t count = 0;
  std::string out;
};

inline int cmd_primes(const PrimesArgs& a, Streams io) {
  const auto p = first_primes(a.count);
  std::string line;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) line += ' ';
    line += std::to_string(p.values[i]);
  }
  line += '\n';
  if (a.out.empty()) {
    io.out << line;
  } else {
    const auto path = resolve_output(a.out);
    write_text(path, line);
    Manifest m{"primes"};
    m.parameters["count"] = a.count;
    m.outputs = {path.filename().string()};
    write_json(sidecar(path, ".manifest.json"), m.to_json());
  }
  return kOk;
}

struct WkbArgs {
  std::string counting;
  double v0 = 0.0;
  double e_max = 0.0;
  std::string out;
  std::size_t samples = 2001;
  std::size_t grid_points = 0;
  double scale = kPhysicalScale;
  bool force = false;
};

inline int cmd_wkb(const WkbArgs& a, Streams io) {
  const auto cf = counting::parse(a.counting);
  if (!a.force) {
    const auto rep = feasibility_scan(cf, a.v0, a.e_max);
    if (rep.first_zero_crossing) {
      io.err << "wkb: '" << cf.id << "' is infeasible: f(E) changes sign at E* = "
             << *rep.first_zero_crossing << " (E*/v0 = " << *rep.first_zero_crossing / a.v0
             << "); lower --emax below E* or pass --force\n";
      return kNumeric;
    }
  }
  const auto wp = build_wkb_potential(cf, a.v0, a.e_max, a.samples, a.scale);
  std::string csv;
  if (a.grid_points > 0) {
    csv = potential_csv(wp.sample(Grid(wp.x_max(), a.grid_points)));
  } else {
    CsvTable t({"x", "V"});
    for (const auto& [e, x] : wp.samples()) t.add_row({x, e});
    csv = t.str();
  }
  const auto path = resolve_output(a.out);
  write_text(path, csv);
  Manifest m{"wkb"};
  m.parameters["counting"] = cf.id;
  m.parameters["v0"] = a.v0;
  m.parameters["emax"] = a.e_max;
  m.parameters["samples"] = a.samples;
  m.parameters["grid_points"] = a.grid_points;
  m.parameters["force"] = a.force;
  m.convention_scale = a.scale;
  m.outputs = {path.filename().string()};
  m.notes["x_max"] = wp.x_max();
  m.notes["layout"] = a.grid_points > 0 ? "symmetric uniform grid on [-x_max, x_max]"
                                         : "tabulated turning points x(E), x >= 0";
  write_json(sidecar(path, ".manifest.json"), m.to_json());
  io.out << "wrote " << path.string() << " (x_max = " << wp.x_max() << ")\n";
  return kOk;
}

struct DressArgs {
  std::size_t primes = 0;
  double half_length = 15.0;
  std::size_t points = 9601;
  std::string out;
  double tol = 1e-3;
  double solver_tol = 1e-9;
};

inline int cmd_dress(const DressArgs& a, Streams io) {
  const Grid grid(a.half_length, a.points);
  const auto path = resolve_output(a.out);
  Manifest m{"dress"};
  m.parameters["primes"] = a.primes;
  m.parameters["half_length"] = a.half_length;
  m.parameters["points"] = a.points;
  m.parameters["tol"] = a.tol;
  m.parameters["solver_tol"] = a.solver_tol;
  m.convention_scale = kPhysicalScale;

  std::optional<SampledPotential> v;
  json spectrum_doc;
  bool pass = true;
  if (a.primes == 1) {
    io.err << "dress: warning: a single prime gives the degenerate constant potential V = 2 "
              "(its only level is the threshold)\n";
    v.emplace(grid, std::vector<double>(grid.size(), 0.0), 2.0);
    spectrum_doc["degenerate"] = true;
    spectrum_doc["eigenvalues"] = {2.0};
  } else {
    try {
      v.emplace(build_prime_potential(a.primes, grid));
    } catch (const GridTooCoarse& e) {
      io.err << "dress: " << e.what() << "\n";
      return kNumeric;
    } catch (const GridTooShort& e) {
      io.err << "dress: " << e.what() << "\n";
      return kNumeric;
    }
    const auto spec = spectrum_with_threshold(*v, a.solver_tol).shifted(v->energy_offset);
    const auto rep = verify_against(spec, prime_targets(a.primes), a.tol);
    spectrum_doc = to_json(spec);
    spectrum_doc["verification"] = to_json(rep);
    pass = rep.pass;
    io.out << "verification: " << rep.diagnostic << " (max rel err " << rep.max_rel_err
           << ")\n";
  }
  write_text(path, potential_csv(*v));
  const auto spectrum_path = sidecar(path, ".spectrum.json");
  write_json(spectrum_path, spectrum_doc);
  m.outputs = {path.filename().string(), spectrum_path.filename().string()};
  m.notes["energy_offset"] = v->energy_offset;
  write_json(sidecar(path, ".manifest.json"), m.to_json());
  return pass ? kOk : kNumeric;
}

struct VerifyArgs {
  std::string potential;
  std::string expect;
  double tol = 1e-3;
  double solver_tol = 1e-9;
  std::string out;
};

inline int cmd_verify(const VerifyArgs& a, Streams io) {
  const auto v = read_potential_csv(a.potential);
  const auto target = parse_expectation(a.expect);
  const auto spec = spectrum_with_threshold(v, a.solver_tol);
  const auto rep = verify_against(spec, target, a.tol);
  json doc = to_json(rep);
  doc["potential"] = a.potential;
  doc["expect"] = a.expect;
  if (a.out.empty()) {
    io.out << doc.dump(2) << "\n";
  } else {
    const auto path = resolve_output(a.out);
    write_json(path, doc);
    Manifest m{"verify"};
    m.parameters["potential"] = a.potential;
    m.parameters["expect"] = a.expect;
    m.parameters["tol"] = a.tol;
    m.parameters["solver_tol"] = a.solver_tol;
    m.outputs = {path.filename().string()};
    write_json(sidecar(path, ".manifest.json"), m.to_json());
    io.out << "verification: " << rep.diagnostic << "\n";
  }
  return rep.pass ? kOk : kNumeric;
}

struct FeasibilityArgs {
  std::string counting;
  double v0 = 0.0;
  double e_hi = 0.0;
  std::size_t samples = 3000;
  std::string out;
};

inline int cmd_feasibility(const FeasibilityArgs& a, Streams io) {
  const auto cf = counting::parse(a.counting);
  const auto rep = feasibility_scan(cf, a.v0, a.e_hi, a.samples);
  const json doc = to_json(rep);
  if (a.out.empty()) {
    io.out << doc.dump(2) << "\n";
    return kOk;
  }
  const auto path = resolve_output(a.out);
  write_json(path, doc);
  Manifest m{"feasibility"};
  m.parameters["counting"] = cf.id;
  m.parameters["v0"] = a.v0;
  m.parameters["ehi"] = a.e_hi;
  m.parameters["samples"] = a.samples;
  m.outputs = {path.filename().string()};
  write_json(sidecar(path, ".manifest.json"), m.to_json());
  io.out << "feasibility: " << to_string(rep.verdict);
  if (rep.first_zero_crossing) io.out << " E* = " << *rep.first_zero_crossing;
  io.out << "\n";
  return kOk;
}

struct TwinArgs {
  double v0 = 1.5;
  std::string e_list;
  std::string out;
  std::size_t samples = 4001;
  double scale = kPhysicalScale;
};

inline int cmd_twin(const TwinArgs& a, Streams io) {
  auto energies = parse_list(a.e_list);
  if (energies.empty()) throw DomainError("--e-list is empty");
  std::sort(energies.begin(), energies.end());
  const auto wp = build_wkb_potential(counting::prime_li(), a.v0, energies.back() + 2.0,
                                      a.samples, a.scale);
  CsvTable main({"E", "dN_dE", "asymptotic_ratio", "turning_gap", "twin_envelope"});
  CsvTable comparison({"E", "twin_envelope", "twin_envelope_by_pi", "hardy_littlewood_scale"});
  for (double e : energies) {
    const auto r = twin_report(wp, e);
    main.add_row({r.E, r.dN_dE, r.asymptotic_ratio, r.turning_gap, r.twin_envelope});
    comparison.add_row({r.E, r.twin_envelope, r.twin_envelope_by_pi, r.hardy_littlewood_scale});
  }
  const auto path = resolve_output(a.out);
  const auto comparison_path = sidecar(path, ".comparison.csv");
  write_text(path, main.str());
  write_text(comparison_path, comparison.str());
  Manifest m{"twin"};
  m.parameters["v0"] = a.v0;
  m.parameters["e_list"] = energies;
  m.parameters["samples"] = a.samples;
  m.convention_scale = a.scale;
  m.outputs = {path.filename().string(), comparison_path.filename().string()};
  m.notes["turning_gap"] = "measured on the smooth quasiclassical li potential only";
  m.notes["gap_bound"] = kGapBound;
  m.notes["twin_envelope"] = "pi * li(sqrt E), order-of-magnitude envelope, not a sharp bound";
  m.notes["hardy_littlewood_scale"] = "conjectured scale, C arbitrary (C = 1)";
  const auto e0 = gap_threshold(wp, energies);
  m.notes["gap_threshold_E0"] = e0 ? json(*e0) : json(nullptr);
  write_json(sidecar(path, ".manifest.json"), m.to_json());
  io.out << "wrote " << path.string() << "\n";
  return kOk;
}

}  // namespace detail

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Inverse spectral toolkit: WKB potentials, prime potentials, verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  detail::PrimesArgs primes;
  auto* c_primes = app.add_subcommand("primes", "print the first k primes");
  c_primes->add_option("--count", primes.count, "number of primes")
      ->required()
      ->check(CLI::PositiveNumber);
  c_primes->add_option("--out", primes.out, "write to a file instead of stdout");

  detail::WkbArgs wkb;
  auto* c_wkb = app.add_subcommand("wkb", "potential from a counting function (Abel inversion)");
  c_wkb->add_option("--counting", wkb.counting,
                    "li | sqrt | rvm | linear:a,b | power-sub:a | power-super:b | log:p")
      ->required();
  c_wkb->add_option("--v0", wkb.v0, "potential minimum V(0)")->required();
  c_wkb->add_option("--emax", wkb.e_max, "highest tabulated energy")->required();
  c_wkb->add_option("--out", wkb.out, "CSV output")->required();
  c_wkb->add_option("--samples", wkb.samples, "table nodes")->check(CLI::Range(16, 10000000));
  c_wkb->add_option("--grid-points", wkb.grid_points,
                    "resample on a symmetric uniform grid with this many (odd) points");
  c_wkb->add_option("--scale", wkb.scale, "counting convention c in N = c*int sqrt(E-V) dx")
      ->check(CLI::PositiveNumber);
  c_wkb->add_flag("--force", wkb.force, "skip the feasibility check");

  detail::DressArgs dress;
  auto* c_dress = app.add_subcommand("dress", "potential whose spectrum is the first k primes");
  c_dress->add_option("--primes", dress.primes, "k")->required()->check(CLI::PositiveNumber);
  c_dress->add_option("--half-length", dress.half_length, "grid half length L")
      ->check(CLI::PositiveNumber);
  c_dress->add_option("--points", dress.points, "grid points (odd)");
  c_dress->add_option("--out", dress.out, "CSV output")->required();
  c_dress->add_option("--tol", dress.tol, "relative tolerance of the auto-verification");
  c_dress->add_option("--solver-tol", dress.solver_tol, "eigenvalue bracket width");

  detail::VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "compare a potential's spectrum to a target");
  c_verify->add_option("--potential", verify.potential, "x,V CSV")
      ->required()
      ->check(CLI::ExistingFile);
  c_verify->add_option("--expect", verify.expect, "primes:k | file:path")->required();
  c_verify->add_option("--tol", verify.tol, "relative tolerance per level");
  c_verify->add_option("--solver-tol", verify.solver_tol, "eigenvalue bracket width");
  c_verify->add_option("--out", verify.out, "report JSON (stdout if omitted)");

  detail::FeasibilityArgs feas;
  auto* c_feas = app.add_subcommand("feasibility", "scan f(E) for a sign change");
  c_feas->add_option("--counting", feas.counting, "counting function spec")->required();
  c_feas->add_option("--v0", feas.v0, "potential minimum")->required();
  c_feas->add_option("--ehi", feas.e_hi, "upper end of the scan")->required();
  c_feas->add_option("--samples", feas.samples, "scan points")->check(CLI::Range(2, 100000000));
  c_feas->add_option("--out", feas.out, "report JSON (stdout if omitted)");

  detail::TwinArgs twin;
  auto* c_twin = app.add_subcommand("twin", "twin-gap report on the li potential");
  c_twin->add_option("--v0", twin.v0, "potential minimum (> 1)");
  c_twin->add_option("--e-list", twin.e_list, "comma-separated energies")->required();
  c_twin->add_option("--out", twin.out, "CSV output")->required();
  c_twin->add_option("--samples", twin.samples, "table nodes")->check(CLI::Range(16, 10000000));
  c_twin->add_option("--scale", twin.scale, "counting convention c")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const detail::Streams io{out, err};
  try {
    if (*c_primes) return detail::cmd_primes(primes, io);
    if (*c_wkb) return detail::cmd_wkb(wkb, io);
    if (*c_dress) return detail::cmd_dress(dress, io);
    if (*c_verify) return detail::cmd_verify(verify, io);
    if (*c_feas) return detail::cmd_feasibility(feas, io);
    if (*c_twin) return detail::cmd_twin(twin, io);
  } catch (const NonMonotone& e) {
    err << "error: " << e.what() << "\n";
    return kNumeric;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}

}  // namespace primeham::cli
