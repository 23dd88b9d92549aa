// Copyright 2026 The fhbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic CSV emission and the JSON metadata sidecar. CSV bytes
// depend only on the numbers (12 significant digits, C locale); anything
// run-dependent (timestamps, tool version) lives in JSON instead, so
// repeated runs produce byte-identical CSV artifacts.

#ifndef FHBENCH_IO_HPP
#define FHBENCH_IO_HPP

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fhbench/bounds.hpp"
#include "fhbench/noise.hpp"
#include "fhbench/version.hpp"

namespace fhbench {

using ordered_json = nlohmann::ordered_json;

enum class EntropyPer { Qubit, Site };

inline const char* entropy_per_name(EntropyPer e) {
  return e == EntropyPer::Qubit ? "qubit" : "site";
}

namespace detail {

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(format("cannot open '%s' for writing", path.c_str()));
  out << text;
  if (!out.good()) throw ConfigError(format("short write on '%s'", path.c_str()));
}

}  // namespace detail

/// Curve CSV: header `s,e`, one sample per line, 12 significant digits.
/// Entropy is stored per qubit internally; `per` only rescales the s
/// column on output (per site = 2x per qubit at two qubits per site).
inline std::string curve_csv_text(const BoundCurve& curve,
                                  EntropyPer per = EntropyPer::Qubit) {
  const double scale = per == EntropyPer::Site ? 2.0 : 1.0;
  std::string text = "s,e\n";
  for (const BoundSample& p : curve.samples)
    text += format("%.12g,%.12g\n", p.s * scale, p.e);
  return text;
}

inline void write_curve_csv(const std::string& path, const BoundCurve& curve,
                            EntropyPer per = EntropyPer::Qubit) {
  detail::write_text_file(path, curve_csv_text(curve, per));
}

/// Reads a curve CSV back (s column interpreted with the same scaling).
inline BoundCurve read_curve_csv(const std::string& path,
                                 EntropyPer per = EntropyPer::Qubit) {
  std::ifstream in(path);
  if (!in) throw ConfigError(format("cannot open '%s'", path.c_str()));
  std::string line;
  if (!std::getline(in, line) || line != "s,e")
    throw ConfigError(format("'%s' is not a curve CSV", path.c_str()));
  const double scale = per == EntropyPer::Site ? 2.0 : 1.0;
  BoundCurve curve;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ConfigError(format("malformed row in '%s'", path.c_str()));
    BoundSample p;
    p.s = std::stod(line.substr(0, comma)) / scale;
    p.e = std::stod(line.substr(comma + 1));
    curve.samples.push_back(p);
  }
  return curve;
}

/// Sidecar describing how a curve CSV was produced.
inline ordered_json curve_metadata(const BoundCurve& curve, EntropyPer per) {
  ordered_json meta;
  meta["schema"] = "fhbench-curve-meta v1";
  meta["tool_version"] = version_string();
  meta["kind"] = bound_kind_name(curve.kind);
  meta["valid"] = curve.valid;
  meta["entropy_per"] = entropy_per_name(per);
  meta["model"] = {{"geometry", geometry_name(curve.spec.geometry)},
                   {"L", curve.spec.L},
                   {"t", curve.spec.t},
                   {"U", curve.spec.U},
                   {"mu", curve.spec.mu},
                   {"l2_pbc_multiedge", curve.spec.l2_multiedge}};
  meta["samples"] = curve.samples.size();
  if (!curve.samples.empty()) {
    meta["s_min"] = curve.s_min();
    meta["s_max"] = curve.s_max();
  }
  meta["dropped_samples"] = curve.dropped;
  meta["notes"] = curve.notes;
  return meta;
}

inline void write_curve_with_sidecar(const std::string& path, const BoundCurve& curve,
                                     EntropyPer per = EntropyPer::Qubit) {
  write_curve_csv(path, curve, per);
  detail::write_text_file(path + ".meta.json", curve_metadata(curve, per).dump(2) + "\n");
}

/// Sweep CSV: `p2,hva_layers,ldca_layers,hva_ref_line`, p2 at 6 significant
/// digits. Unbounded budgets (threshold density 1) print -1 layers.
inline std::string sweep_csv_text(const std::vector<SweepRow>& rows) {
  std::string text = "p2,hva_layers,ldca_layers,hva_ref_line\n";
  for (const SweepRow& r : rows)
    text += format("%.6g,%lld,%lld,%lld\n", r.p2, r.hva_layers, r.ldca_layers,
                   r.hva_ref_line);
  return text;
}

inline void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  detail::write_text_file(path, sweep_csv_text(rows));
}

inline std::vector<SweepRow> read_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(format("cannot open '%s'", path.c_str()));
  std::string line;
  if (!std::getline(in, line) || line != "p2,hva_layers,ldca_layers,hva_ref_line")
    throw ConfigError(format("'%s' is not a sweep CSV", path.c_str()));
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SweepRow r;
    std::istringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');
    r.p2 = std::stod(field);
    std::getline(ss, field, ',');
    r.hva_layers = std::stoll(field);
    std::getline(ss, field, ',');
    r.ldca_layers = std::stoll(field);
    std::getline(ss, field, ',');
    r.hva_ref_line = std::stoll(field);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace fhbench

#endif  // FHBENCH_IO_HPP
