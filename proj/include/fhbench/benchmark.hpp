// Copyright 2026 The fhbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end benchmark pipeline: bound curves -> combination -> entropy
// threshold against the classical reference energy -> CNOT and layer
// budgets per noise level, assembled into an exportable report.

#ifndef FHBENCH_BENCHMARK_HPP
#define FHBENCH_BENCHMARK_HPP

#include <chrono>
#include <ctime>
#include <filesystem>

#include "fhbench/io.hpp"

namespace fhbench {

/// Leftmost crossing of the interpolated boundary with e_class.
struct ThresholdResult {
  double s_th = 0;
  bool saturated_high = false;  // e_class above the whole curve: s_th = 1
  std::string note;
};

/// Bisection for the smallest s with e(s) >= e_class. The curve is
/// nondecreasing in s, so the leftmost grid bracket containing the
/// crossing is refined to |ds| <= 1e-8; the upper end is returned, which
/// keeps the threshold conservative (energy already classically reached).
inline ThresholdResult solve_threshold(const BoundCurve& curve, double e_class) {
  if (curve.samples.size() < 2) throw ConfigError("threshold needs a sampled curve");
  const double lo_e = curve.samples.front().e;
  const double hi_e = curve.samples.back().e;
  if (e_class < lo_e - 1e-12)
    throw UnreachableError(
        format("e_class = %.6g lies below the boundary minimum %.6g: "
               "the reference energy is classically unreachable on this curve",
               e_class, lo_e));
  if (e_class >= hi_e)
    return {1.0, true,
            format("e_class = %.6g is at or above the infinite-temperature "
                   "energy %.6g; every entropy density qualifies, s_th = 1",
                   e_class, hi_e)};
  if (e_class <= lo_e) return {curve.samples.front().s, false, ""};

  // grid scan for the leftmost bracket, then bisection inside it
  size_t k = 1;
  while (k < curve.samples.size() && curve.samples[k].e < e_class) ++k;
  double lo = curve.samples[k - 1].s, hi = curve.samples[k].s;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (interp_e(curve, mid) >= e_class)
      hi = mid;
    else
      lo = mid;
  }
  return {hi, false, ""};
}

struct BudgetRow {
  double p2 = 0;
  CnotBudget budget;
  long long hva_layers = 0;   // -1 when unbounded
  long long ldca_layers = 0;  // -1 when unbounded
  long long hva_ref_line = 0;
};

struct DominanceRow {
  BoundKind kind = BoundKind::Phenom;
  double max_excess = 0;     // max over common grid of bound - exact (<= 0 expected)
  double s_th_bound = 0;     // threshold from the bound (NaN without e_class)
  double s_th_exact = 0;     // threshold from the exact boundary
  bool bound_unreachable = false;
  bool exact_unreachable = false;
};

struct BenchmarkConfig {
  HubbardSpec spec;
  std::vector<BoundKind> bounds = {BoundKind::Phenom, BoundKind::OneDim,
                                   BoundKind::Plaq};
  double e_class = std::numeric_limits<double>::quiet_NaN();  // per qubit
  std::vector<double> p2_values;  // explicit list; or log sweep below
  double p2_min = 0, p2_max = 0;
  int p2_points = 0;
  SGrid s_grid;
  BoundOptions options;
  LdcaCount ldca = LdcaCount::Paper;
  EntropyPer entropy_per = EntropyPer::Qubit;
  bool want_exact = false;  // forced on automatically when N_sites <= 4

  bool has_e_class() const { return std::isfinite(e_class); }
};

struct BenchmarkReport {
  BenchmarkConfig config;
  std::vector<BoundCurve> curves;     // requested bounds, computed
  BoundCurve combination;             // pointwise best of the valid bounds
  BoundCurve exact;                   // present when exact.samples nonempty
  BoundKind bound_used = BoundKind::Combination;
  bool have_threshold = false;
  ThresholdResult threshold;
  std::vector<BudgetRow> budgets;
  std::vector<DominanceRow> dominance;
  double curve_seconds = 0;
};

inline std::vector<double> benchmark_p2_list(const BenchmarkConfig& cfg) {
  if (!cfg.p2_values.empty()) return cfg.p2_values;
  if (cfg.p2_points < 1) return {};
  if (!(cfg.p2_min > 0) || cfg.p2_max < cfg.p2_min)
    throw ConfigError("bad p2 sweep range");
  std::vector<double> out;
  const double lmin = std::log(cfg.p2_min), lmax = std::log(cfg.p2_max);
  for (int i = 0; i < cfg.p2_points; ++i)
    out.push_back(cfg.p2_points == 1
                      ? cfg.p2_min
                      : std::exp(lmin + (lmax - lmin) * i / (cfg.p2_points - 1)));
  return out;
}

inline BenchmarkReport run_benchmark(const BenchmarkConfig& cfg) {
  cfg.spec.validate();
  BenchmarkReport rep;
  rep.config = cfg;
  const auto t0 = std::chrono::steady_clock::now();

  const std::vector<double> grid = cfg.s_grid.values();
  for (BoundKind kind : cfg.bounds) {
    switch (kind) {
      case BoundKind::Phenom:
        rep.curves.push_back(phenom_curve(cfg.spec, cfg.s_grid, cfg.options));
        break;
      case BoundKind::OneDim:
        rep.curves.push_back(onedim_curve(cfg.spec, cfg.s_grid, cfg.options));
        break;
      case BoundKind::Plaq:
        rep.curves.push_back(plaquette_curve(cfg.spec, cfg.s_grid, cfg.options));
        break;
      default:
        throw ConfigError("benchmark bounds must be phenom, onedim or plaq");
    }
  }
  rep.combination = combine_curves(rep.curves, cfg.s_grid);
  int n_valid = 0;
  BoundKind last_valid = BoundKind::Combination;
  for (const BoundCurve& c : rep.curves)
    if (c.valid && !c.samples.empty()) {
      ++n_valid;
      last_valid = c.kind;
    }
  rep.bound_used = n_valid == 1 ? last_valid : BoundKind::Combination;
  rep.curve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (cfg.has_e_class()) {
    rep.threshold = solve_threshold(rep.combination, cfg.e_class);
    rep.have_threshold = true;
  }

  if (rep.have_threshold) {
    for (double p2 : benchmark_p2_list(cfg)) {
      BudgetRow row;
      row.p2 = p2;
      row.hva_ref_line = static_cast<long long>(cfg.spec.L) * cfg.spec.L;
      NoiseBudget nb{cfg.spec.n_qubits(), p2, rep.threshold.s_th};
      row.budget = max_cnot_count(nb);
      if (row.budget.unbounded) {
        row.hva_layers = row.ldca_layers = -1;
      } else {
        row.hva_layers =
            max_layers({AnsatzFamily::HVA, cfg.spec.L}, row.budget.N2_max, cfg.ldca);
        row.ldca_layers =
            max_layers({AnsatzFamily::LDCA, cfg.spec.L}, row.budget.N2_max, cfg.ldca);
      }
      rep.budgets.push_back(row);
    }
  }

  if (cfg.want_exact || cfg.spec.n_sites() <= 4) {
    rep.exact = exact_boundary(cfg.spec, cfg.options.beta_grid, cfg.options);
    for (const BoundCurve& c : rep.curves) {
      if (c.samples.empty()) continue;
      DominanceRow d;
      d.kind = c.kind;
      d.max_excess = -std::numeric_limits<double>::infinity();
      const double lo = std::max(c.s_min(), rep.exact.s_min());
      const double hi = std::min(c.s_max(), rep.exact.s_max());
      for (double s : grid) {
        if (s < lo || s > hi) continue;
        d.max_excess =
            std::max(d.max_excess, interp_e(c, s) - interp_e(rep.exact, s));
      }
      d.s_th_bound = d.s_th_exact = std::numeric_limits<double>::quiet_NaN();
      if (cfg.has_e_class()) {
        try {
          d.s_th_bound = solve_threshold(c, cfg.e_class).s_th;
        } catch (const UnreachableError&) {
          d.bound_unreachable = true;
        }
        try {
          d.s_th_exact = solve_threshold(rep.exact, cfg.e_class).s_th;
        } catch (const UnreachableError&) {
          d.exact_unreachable = true;
        }
      }
      rep.dominance.push_back(d);
    }
  }
  return rep;
}

namespace detail {

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline ordered_json json_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace detail

/// Report JSON. `stamp` adds the generation timestamp; tests compare
/// reports with it off so the structural content is reproducible.
inline ordered_json report_to_json(const BenchmarkReport& rep, bool stamp = true) {
  const BenchmarkConfig& cfg = rep.config;
  ordered_json j;
  j["schema"] = report_schema();
  j["tool_version"] = version_string();
  if (stamp) j["generated_at"] = detail::utc_timestamp();

  ordered_json jc;
  jc["geometry"] = geometry_name(cfg.spec.geometry);
  jc["L"] = cfg.spec.L;
  jc["t"] = cfg.spec.t;
  jc["U"] = cfg.spec.U;
  jc["mu"] = cfg.spec.mu;
  jc["l2_pbc_multiedge"] = cfg.spec.l2_multiedge;
  jc["bounds"] = ordered_json::array();
  for (BoundKind k : cfg.bounds) jc["bounds"].push_back(bound_kind_name(k));
  jc["e_class"] = detail::json_or_null(cfg.e_class);
  jc["p2"] = cfg.p2_values;
  if (cfg.p2_points > 0)
    jc["p2_sweep"] = {{"min", cfg.p2_min}, {"max", cfg.p2_max}, {"points", cfg.p2_points}};
  jc["s_grid"] = {{"min", cfg.s_grid.min}, {"max", cfg.s_grid.max},
                  {"points", cfg.s_grid.points}};
  jc["beta_max"] = cfg.options.beta_max;
  jc["ldca_count"] = cfg.ldca == LdcaCount::Exact ? "exact" : "paper";
  jc["entropy_per"] = entropy_per_name(cfg.entropy_per);
  jc["workers"] = cfg.options.workers;
  j["config"] = jc;

  j["curves"] = ordered_json::array();
  auto curve_entry = [&](const BoundCurve& c) {
    ordered_json e;
    e["kind"] = bound_kind_name(c.kind);
    e["valid"] = c.valid;
    e["samples"] = c.samples.size();
    if (!c.samples.empty()) {
      e["s_min"] = c.s_min();
      e["s_max"] = c.s_max();
      e["e_min"] = c.e_min();
      e["e_max"] = c.e_max();
    }
    e["dropped_samples"] = c.dropped;
    e["notes"] = c.notes;
    return e;
  };
  for (const BoundCurve& c : rep.curves) j["curves"].push_back(curve_entry(c));
  if (!rep.combination.samples.empty())
    j["combination"] = curve_entry(rep.combination);
  if (!rep.exact.samples.empty()) j["exact"] = curve_entry(rep.exact);
  j["bound_used"] = bound_kind_name(rep.bound_used);

  if (rep.have_threshold) {
    j["threshold"] = {{"s_th", rep.threshold.s_th},
                      {"saturated_high", rep.threshold.saturated_high},
                      {"note", rep.threshold.note}};
  } else {
    j["threshold"] = nullptr;
  }

  j["budgets"] = ordered_json::array();
  for (const BudgetRow& r : rep.budgets) {
    ordered_json b;
    b["p2"] = r.p2;
    if (r.budget.unbounded) {
      b["N2_max"] = "unbounded";
      b["hva_layers"] = "unbounded";
      b["ldca_layers"] = "unbounded";
    } else {
      b["N2_max"] = r.budget.N2_max;
      b["hva_layers"] = r.hva_layers;
      b["ldca_layers"] = r.ldca_layers;
    }
    b["hva_ref_line"] = r.hva_ref_line;
    j["budgets"].push_back(b);
  }

  if (!rep.dominance.empty()) {
    j["dominance"] = ordered_json::array();
    for (const DominanceRow& d : rep.dominance) {
      ordered_json e;
      e["bound"] = bound_kind_name(d.kind);
      e["max_excess_over_exact"] = d.max_excess;
      e["s_th_bound"] = d.bound_unreachable ? ordered_json("unreachable")
                                            : detail::json_or_null(d.s_th_bound);
      e["s_th_exact"] = d.exact_unreachable ? ordered_json("unreachable")
                                            : detail::json_or_null(d.s_th_exact);
      j["dominance"].push_back(e);
    }
  }
  return j;
}

enum class ExportFormat { Json, CsvBundle };

/// Writes report.json (and, for the bundle, one CSV per computed curve
/// plus the budget sweep) into out_dir. Returns the file names written.
inline std::vector<std::string> export_report(const BenchmarkReport& rep,
                                              ExportFormat fmt,
                                              const std::string& out_dir) {
  std::vector<std::string> files;
  if (!out_dir.empty() && out_dir != ".") {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
      throw ConfigError("cannot create output directory '" + out_dir +
                        "': " + ec.message());
  }
  auto path = [&](const std::string& name) {
    return out_dir.empty() || out_dir == "." ? name : out_dir + "/" + name;
  };
  if (fmt == ExportFormat::CsvBundle) {
    for (const BoundCurve& c : rep.curves) {
      if (c.samples.empty()) continue;
      const std::string name = format("curve_%s.csv", bound_kind_name(c.kind));
      write_curve_with_sidecar(path(name), c, rep.config.entropy_per);
      files.push_back(name);
    }
    if (!rep.combination.samples.empty()) {
      write_curve_with_sidecar(path("curve_combination.csv"), rep.combination,
                               rep.config.entropy_per);
      files.push_back("curve_combination.csv");
    }
    if (!rep.exact.samples.empty()) {
      write_curve_with_sidecar(path("curve_exact.csv"), rep.exact,
                               rep.config.entropy_per);
      files.push_back("curve_exact.csv");
    }
    if (!rep.budgets.empty()) {
      std::vector<SweepRow> rows;
      for (const BudgetRow& r : rep.budgets)
        rows.push_back({r.p2, r.budget, r.hva_layers, r.ldca_layers, r.hva_ref_line});
      write_sweep_csv(path("sweep.csv"), rows);
      files.push_back("sweep.csv");
    }
  }
  ordered_json j = report_to_json(rep);
  j["artifacts"] = files;
  detail::write_text_file(path("report.json"), j.dump(2) + "\n");
  files.push_back("report.json");
  return files;
}

}  // namespace fhbench

#endif  // FHBENCH_BENCHMARK_HPP
