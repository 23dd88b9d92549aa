// Copyright 2026 The fhbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// fhbench: energy-entropy Gibbs boundaries for the 2D Fermi-Hubbard
// model, entropy-density thresholds against a classical reference
// energy, and CNOT/layer budgets under global depolarizing noise.
//
// All densities are per qubit (per spin-orbital): s in bits, e in units
// of t. A square lattice site carries two qubits, so per-site numbers
// are exactly twice the per-qubit ones (--entropy-per site rescales the
// entropy axis on output).

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "fhbench/benchmark.hpp"
#include "fhbench/verify.hpp"

namespace {

using fhbench::format;
using ordered_json = nlohmann::ordered_json;

struct ModelCli {
  int L = 2;
  std::string geometry = "square";
  double t = 1.0;
  double U = 4.0;
  std::string mu = "0";
  bool l2_multiedge = true;
};

fhbench::HubbardSpec to_spec(const ModelCli& m) {
  fhbench::HubbardSpec spec;
  spec.L = m.L;
  if (m.geometry == "square" || m.geometry == "square2d-pbc")
    spec.geometry = fhbench::Geometry::Square2D_PBC;
  else if (m.geometry == "ring" || m.geometry == "ring1d")
    spec.geometry = fhbench::Geometry::Ring1D;
  else if (m.geometry == "plaquette" || m.geometry == "plaquette2x2-obc")
    spec.geometry = fhbench::Geometry::Plaquette2x2_OBC;
  else
    throw fhbench::ConfigError("unknown geometry '" + m.geometry +
                               "' (square | ring | plaquette)");
  spec.t = m.t;
  spec.U = m.U;
  if (m.mu == "half")
    spec.mu = m.U / 2;
  else {
    try {
      std::size_t used = 0;
      spec.mu = std::stod(m.mu, &used);
      if (used != m.mu.size()) throw std::invalid_argument(m.mu);
    } catch (const std::exception&) {
      throw fhbench::ConfigError("--mu takes a number or 'half'");
    }
  }
  spec.l2_multiedge = m.l2_multiedge;
  return spec;
}

std::vector<fhbench::BoundKind> parse_bounds(const std::string& text) {
  std::vector<fhbench::BoundKind> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (item == "all") {
      out = {fhbench::BoundKind::Phenom, fhbench::BoundKind::OneDim,
             fhbench::BoundKind::Plaq};
    } else if (item == "phenom") {
      out.push_back(fhbench::BoundKind::Phenom);
    } else if (item == "onedim") {
      out.push_back(fhbench::BoundKind::OneDim);
    } else if (item == "plaq") {
      out.push_back(fhbench::BoundKind::Plaq);
    } else {
      throw fhbench::ConfigError("unknown bound '" + item +
                                 "' (phenom | onedim | plaq | all)");
    }
  }
  if (out.empty()) throw fhbench::ConfigError("--bound needs at least one name");
  return out;
}

// --config JSON: values fill in exactly the flags not set on the command
// line, so explicit flags always win. Keys use the long flag spelling
// (underscores and dashes interchangeable). Unknown keys are errors.
struct ConfigBinder {
  std::map<std::string, std::pair<CLI::Option*, std::function<void(const ordered_json&)>>>
      entries;

  static std::string norm(std::string k) {
    for (char& c : k)
      if (c == '_') c = '-';
    return k;
  }

  void bind(CLI::Option* opt, const std::string& key,
            std::function<void(const ordered_json&)> set) {
    entries[norm(key)] = {opt, std::move(set)};
  }

  void bind_int(CLI::Option* o, const std::string& k, int* v) {
    bind(o, k, [v](const ordered_json& j) { *v = j.get<int>(); });
  }
  void bind_double(CLI::Option* o, const std::string& k, double* v) {
    bind(o, k, [v](const ordered_json& j) { *v = j.get<double>(); });
  }
  void bind_string(CLI::Option* o, const std::string& k, std::string* v) {
    bind(o, k, [v](const ordered_json& j) {
      *v = j.is_string() ? j.get<std::string>() : j.dump();
    });
  }
  void bind_bool(CLI::Option* o, const std::string& k, bool* v) {
    bind(o, k, [v](const ordered_json& j) { *v = j.get<bool>(); });
  }

  void apply(const std::string& path) const {
    std::ifstream in(path);
    if (!in) throw fhbench::ConfigError("cannot open config '" + path + "'");
    ordered_json j;
    try {
      in >> j;
    } catch (const std::exception& ex) {
      throw fhbench::ConfigError(format("config '%s' is not valid JSON: %s",
                                        path.c_str(), ex.what()));
    }
    if (!j.is_object()) throw fhbench::ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      const auto it = entries.find(norm(key));
      if (it == entries.end())
        throw fhbench::ConfigError("config key '" + key +
                                   "' does not match any flag of this subcommand");
      const auto& [opt, set] = it->second;
      if (opt != nullptr && opt->count() > 0) continue;  // flag wins
      set(value);
    }
  }
};

struct CommonCli {
  ModelCli model;
  std::string s_grid;
  double beta_max = 200.0;
  int workers = 1;
  std::string entropy_per = "qubit";
  std::string config_path;
};

void add_model_options(CLI::App* app, ModelCli* m, ConfigBinder* cfg) {
  auto* oL = app->add_option("--L", m->L, "Linear lattice size");
  auto* og = app->add_option("--geometry", m->geometry,
                             "square | ring | plaquette (default square)");
  auto* ot = app->add_option("--t", m->t, "Hopping amplitude (energy unit)");
  auto* oU = app->add_option("--U", m->U, "On-site repulsion U/t");
  auto* om = app->add_option("--mu", m->mu, "Chemical potential, or 'half' for U/2");
  auto* ol = app->add_option("--l2-pbc-multiedge", m->l2_multiedge,
                             "Keep doubled wrap bonds at L=2 (default true)");
  cfg->bind_int(oL, "L", &m->L);
  cfg->bind_string(og, "geometry", &m->geometry);
  cfg->bind_double(ot, "t", &m->t);
  cfg->bind_double(oU, "U", &m->U);
  cfg->bind_string(om, "mu", &m->mu);
  cfg->bind_bool(ol, "l2-pbc-multiedge", &m->l2_multiedge);
}

void add_common_options(CLI::App* app, CommonCli* c, ConfigBinder* cfg) {
  add_model_options(app, &c->model, cfg);
  auto* os = app->add_option("--s-grid", c->s_grid,
                             "Entropy grid min:max:step (default 0.02:1:0.00098)");
  auto* ob = app->add_option("--beta-max", c->beta_max,
                             "Largest inverse temperature (default 200)");
  auto* ow = app->add_option("--workers", c->workers,
                             "Worker threads for sector/grid loops (default 1)");
  auto* oe = app->add_option("--entropy-per", c->entropy_per,
                             "Output entropy units: qubit | site (default qubit)");
  cfg->bind_string(os, "s-grid", &c->s_grid);
  cfg->bind_double(ob, "beta-max", &c->beta_max);
  cfg->bind_int(ow, "workers", &c->workers);
  cfg->bind_string(oe, "entropy-per", &c->entropy_per);
  app->add_option("--config", c->config_path,
                  "JSON file supplying defaults for any flag of this subcommand");
}

fhbench::SGrid parse_s_grid(const std::string& text) {
  if (text.empty()) return fhbench::SGrid{};
  return fhbench::SGrid::parse(text);
}

fhbench::EntropyPer parse_entropy_per(const std::string& text) {
  if (text == "qubit") return fhbench::EntropyPer::Qubit;
  if (text == "site") return fhbench::EntropyPer::Site;
  throw fhbench::ConfigError("--entropy-per takes qubit or site");
}

fhbench::BoundOptions to_bound_options(const CommonCli& c) {
  fhbench::BoundOptions o;
  o.beta_max = c.beta_max;
  o.beta_grid.beta_max = c.beta_max;
  o.workers = c.workers;
  return o;
}

void emit_curve(const fhbench::BoundCurve& curve, const std::string& out,
                fhbench::EntropyPer per) {
  for (const std::string& note : curve.notes) std::cerr << "note: " << note << "\n";
  if (out.empty()) {
    std::cout << fhbench::curve_csv_text(curve, per);
  } else {
    fhbench::write_curve_with_sidecar(out, curve, per);
    std::cerr << format("wrote %s (%zu samples) and %s.meta.json\n", out.c_str(),
                        curve.samples.size(), out.c_str());
  }
}

int run(int argc, char** argv) {
  CLI::App app{
      "fhbench: Fermi-Hubbard Gibbs boundaries, entropy thresholds and "
      "circuit budgets under depolarizing noise.\n"
      "Densities are per qubit: s in bits per spin-orbital, e in units of "
      "t per spin-orbital (a site is two qubits)."};
  app.require_subcommand(1);

  // ---- curve ----
  auto* curve_cmd = app.add_subcommand(
      "curve", "Sample one boundary curve (a bound, or the exact small-lattice one)");
  ConfigBinder curve_cfg;
  CommonCli curve_common;
  std::string curve_bound = "phenom";
  std::string curve_out;
  add_common_options(curve_cmd, &curve_common, &curve_cfg);
  auto* cb = curve_cmd->add_option("--bound", curve_bound,
                                   "phenom | onedim | plaq | exact");
  curve_cfg.bind_string(cb, "bound", &curve_bound);
  auto* co = curve_cmd->add_option("--out", curve_out, "CSV path (default: stdout)");
  curve_cfg.bind_string(co, "out", &curve_out);

  curve_cmd->callback([&] {
    if (!curve_common.config_path.empty()) curve_cfg.apply(curve_common.config_path);
    const fhbench::HubbardSpec spec = to_spec(curve_common.model);
    const fhbench::SGrid grid = parse_s_grid(curve_common.s_grid);
    const fhbench::BoundOptions opts = to_bound_options(curve_common);
    const fhbench::EntropyPer per = parse_entropy_per(curve_common.entropy_per);
    fhbench::BoundCurve curve;
    if (curve_bound == "phenom")
      curve = fhbench::phenom_curve(spec, grid, opts);
    else if (curve_bound == "onedim")
      curve = fhbench::onedim_curve(spec, grid, opts);
    else if (curve_bound == "plaq")
      curve = fhbench::plaquette_curve(spec, grid, opts);
    else if (curve_bound == "exact")
      curve = fhbench::exact_boundary(spec, opts.beta_grid, opts);
    else
      throw fhbench::ConfigError("curve --bound takes phenom | onedim | plaq | exact");
    emit_curve(curve, curve_out, per);
  });

  // ---- combine ----
  auto* comb_cmd = app.add_subcommand(
      "combine", "Pointwise-best combination of the requested bound curves");
  ConfigBinder comb_cfg;
  CommonCli comb_common;
  std::string comb_bound = "all";
  std::string comb_out;
  add_common_options(comb_cmd, &comb_common, &comb_cfg);
  auto* mb = comb_cmd->add_option("--bound", comb_bound,
                                  "Comma list of phenom,onedim,plaq or all");
  comb_cfg.bind_string(mb, "bound", &comb_bound);
  auto* mo = comb_cmd->add_option("--out", comb_out, "CSV path (default: stdout)");
  comb_cfg.bind_string(mo, "out", &comb_out);

  comb_cmd->callback([&] {
    if (!comb_common.config_path.empty()) comb_cfg.apply(comb_common.config_path);
    const fhbench::HubbardSpec spec = to_spec(comb_common.model);
    const fhbench::SGrid grid = parse_s_grid(comb_common.s_grid);
    const fhbench::BoundOptions opts = to_bound_options(comb_common);
    const fhbench::EntropyPer per = parse_entropy_per(comb_common.entropy_per);
    std::vector<fhbench::BoundCurve> curves;
    for (fhbench::BoundKind k : parse_bounds(comb_bound)) {
      if (k == fhbench::BoundKind::Phenom)
        curves.push_back(fhbench::phenom_curve(spec, grid, opts));
      else if (k == fhbench::BoundKind::OneDim)
        curves.push_back(fhbench::onedim_curve(spec, grid, opts));
      else
        curves.push_back(fhbench::plaquette_curve(spec, grid, opts));
    }
    for (const fhbench::BoundCurve& c : curves)
      if (!c.valid)
        std::cerr << format("note: %s bound not valid here, excluded\n",
                            fhbench::bound_kind_name(c.kind));
    emit_curve(fhbench::combine_curves(curves, grid), comb_out, per);
  });

  // ---- threshold ----
  auto* thr_cmd = app.add_subcommand(
      "threshold", "Entropy density where the boundary crosses the classical energy");
  ConfigBinder thr_cfg;
  CommonCli thr_common;
  std::string thr_bound = "all";
  double thr_eclass = std::numeric_limits<double>::quiet_NaN();
  std::string thr_out;
  add_common_options(thr_cmd, &thr_common, &thr_cfg);
  auto* tb = thr_cmd->add_option("--bound", thr_bound,
                                 "Comma list of phenom,onedim,plaq or all");
  auto* te = thr_cmd->add_option("--e-class", thr_eclass,
                                 "Classical reference energy per qubit (units of t)");
  auto* to = thr_cmd->add_option("--out", thr_out, "Optional JSON result path");
  thr_cfg.bind_string(tb, "bound", &thr_bound);
  thr_cfg.bind_double(te, "e-class", &thr_eclass);
  thr_cfg.bind_string(to, "out", &thr_out);

  thr_cmd->callback([&] {
    if (!thr_common.config_path.empty()) thr_cfg.apply(thr_common.config_path);
    if (std::isnan(thr_eclass))
      throw fhbench::ConfigError("threshold needs --e-class");
    fhbench::BenchmarkConfig cfg;
    cfg.spec = to_spec(thr_common.model);
    cfg.bounds = parse_bounds(thr_bound);
    cfg.e_class = thr_eclass;
    cfg.s_grid = parse_s_grid(thr_common.s_grid);
    cfg.options = to_bound_options(thr_common);
    cfg.entropy_per = parse_entropy_per(thr_common.entropy_per);
    const fhbench::BenchmarkReport rep = fhbench::run_benchmark(cfg);
    const double scale = cfg.entropy_per == fhbench::EntropyPer::Site ? 2.0 : 1.0;
    std::cout << format("s_th = %.8f bits per %s (bound: %s)\n",
                        rep.threshold.s_th * scale,
                        fhbench::entropy_per_name(cfg.entropy_per),
                        fhbench::bound_kind_name(rep.bound_used));
    if (!rep.threshold.note.empty()) std::cout << rep.threshold.note << "\n";
    if (!thr_out.empty()) {
      ordered_json j = fhbench::report_to_json(rep);
      fhbench::detail::write_text_file(thr_out, j.dump(2) + "\n");
      std::cerr << "wrote " << thr_out << "\n";
    }
  });

  // ---- depth ----
  auto* dep_cmd = app.add_subcommand(
      "depth", "CNOT budget and ansatz layers at one noise level");
  ConfigBinder dep_cfg;
  int dep_L = 8;
  double dep_sth = std::numeric_limits<double>::quiet_NaN();
  double dep_p2 = std::numeric_limits<double>::quiet_NaN();
  std::string dep_ansatz = "hva,ldca";
  std::string dep_ldca = "paper";
  std::string dep_config;
  auto* dL = dep_cmd->add_option("--L", dep_L, "Linear lattice size (n = 2 L^2)");
  auto* ds = dep_cmd->add_option("--s-th", dep_sth, "Entropy threshold, bits per qubit");
  auto* dp = dep_cmd->add_option("--p2", dep_p2, "Two-qubit depolarizing probability");
  auto* da = dep_cmd->add_option("--ansatz", dep_ansatz, "hva | ldca | hva,ldca");
  auto* dl = dep_cmd->add_option("--ldca-count", dep_ldca,
                                 "LDCA gates per layer: exact | paper (default paper)");
  dep_cmd->add_option("--config", dep_config, "JSON defaults for these flags");
  dep_cfg.bind_int(dL, "L", &dep_L);
  dep_cfg.bind_double(ds, "s-th", &dep_sth);
  dep_cfg.bind_double(dp, "p2", &dep_p2);
  dep_cfg.bind_string(da, "ansatz", &dep_ansatz);
  dep_cfg.bind_string(dl, "ldca-count", &dep_ldca);

  dep_cmd->callback([&] {
    if (!dep_config.empty()) dep_cfg.apply(dep_config);
    if (std::isnan(dep_sth) || std::isnan(dep_p2))
      throw fhbench::ConfigError("depth needs --s-th and --p2");
    const fhbench::LdcaCount mode = dep_ldca == "exact" ? fhbench::LdcaCount::Exact
                                    : dep_ldca == "paper"
                                        ? fhbench::LdcaCount::Paper
                                        : throw fhbench::ConfigError(
                                              "--ldca-count takes exact or paper");
    const int n = 2 * dep_L * dep_L;
    const fhbench::CnotBudget b =
        fhbench::max_cnot_count({n, dep_p2, dep_sth});
    if (b.unbounded) {
      std::cout << "N2_max = unbounded (threshold density 1: no restriction)\n";
      return;
    }
    std::cout << format("n = %d qubits, N2_max = %lld CNOTs\n", n, b.N2_max);
    std::istringstream ss(dep_ansatz);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name == "hva") {
        const fhbench::HvaCounts h = fhbench::hva_counts(dep_L);
        std::cout << format(
            "hva:  prep = %lld, layer = %lld, max layers = %lld\n", h.prep, h.layer,
            fhbench::max_layers({fhbench::AnsatzFamily::HVA, dep_L}, b.N2_max, mode));
      } else if (name == "ldca") {
        std::cout << format(
            "ldca: layer = %lld (%s count), max layers = %lld\n",
            fhbench::ldca_layer_cnots(dep_L, mode), dep_ldca.c_str(),
            fhbench::max_layers({fhbench::AnsatzFamily::LDCA, dep_L}, b.N2_max, mode));
      } else {
        throw fhbench::ConfigError("--ansatz takes hva, ldca or hva,ldca");
      }
    }
  });

  // ---- sweep ----
  auto* sw_cmd = app.add_subcommand(
      "sweep", "Layer budgets across a log-spaced range of noise levels");
  ConfigBinder sw_cfg;
  int sw_L = 8;
  double sw_sth = std::numeric_limits<double>::quiet_NaN();
  double sw_min = 1e-5, sw_max = 1e-2;
  int sw_points = 50;
  std::string sw_ldca = "paper";
  std::string sw_out;
  std::string sw_config;
  auto* sL = sw_cmd->add_option("--L", sw_L, "Linear lattice size");
  auto* st = sw_cmd->add_option("--s-th", sw_sth, "Entropy threshold, bits per qubit");
  auto* s0 = sw_cmd->add_option("--p2-min", sw_min, "Smallest p2 (default 1e-5)");
  auto* s1 = sw_cmd->add_option("--p2-max", sw_max, "Largest p2 (default 1e-2)");
  auto* sn = sw_cmd->add_option("--p2-points", sw_points, "Sample count (default 50)");
  auto* sl = sw_cmd->add_option("--ldca-count", sw_ldca, "exact | paper");
  auto* so = sw_cmd->add_option("--out", sw_out, "CSV path (default: stdout)");
  sw_cmd->add_option("--config", sw_config, "JSON defaults for these flags");
  sw_cfg.bind_int(sL, "L", &sw_L);
  sw_cfg.bind_double(st, "s-th", &sw_sth);
  sw_cfg.bind_double(s0, "p2-min", &sw_min);
  sw_cfg.bind_double(s1, "p2-max", &sw_max);
  sw_cfg.bind_int(sn, "p2-points", &sw_points);
  sw_cfg.bind_string(sl, "ldca-count", &sw_ldca);
  sw_cfg.bind_string(so, "out", &sw_out);

  sw_cmd->callback([&] {
    if (!sw_config.empty()) sw_cfg.apply(sw_config);
    if (std::isnan(sw_sth)) throw fhbench::ConfigError("sweep needs --s-th");
    const fhbench::LdcaCount mode =
        sw_ldca == "exact" ? fhbench::LdcaCount::Exact : fhbench::LdcaCount::Paper;
    const auto rows = fhbench::p2_sweep(sw_L, sw_sth, sw_min, sw_max, sw_points, mode);
    if (sw_out.empty())
      std::cout << fhbench::sweep_csv_text(rows);
    else {
      fhbench::write_sweep_csv(sw_out, rows);
      std::cerr << format("wrote %s (%zu rows)\n", sw_out.c_str(), rows.size());
    }
  });

  // ---- benchmark ----
  auto* bm_cmd = app.add_subcommand(
      "benchmark", "Full pipeline: bounds, combination, threshold, budgets, report");
  ConfigBinder bm_cfg;
  CommonCli bm_common;
  std::string bm_bound = "all";
  double bm_eclass = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> bm_p2;
  double bm_p2min = 0, bm_p2max = 0;
  int bm_p2points = 0;
  std::string bm_ansatz = "hva,ldca";
  std::string bm_ldca = "paper";
  std::string bm_out = ".";
  std::string bm_format = "csv-bundle";
  add_common_options(bm_cmd, &bm_common, &bm_cfg);
  auto* bb = bm_cmd->add_option("--bound", bm_bound, "Comma list or all");
  auto* be = bm_cmd->add_option("--e-class", bm_eclass,
                                "Classical reference energy per qubit (units of t)");
  auto* bp = bm_cmd->add_option("--p2", bm_p2, "Noise level(s), repeatable");
  auto* b0 = bm_cmd->add_option("--p2-min", bm_p2min, "Sweep start");
  auto* b1 = bm_cmd->add_option("--p2-max", bm_p2max, "Sweep end");
  auto* bn = bm_cmd->add_option("--p2-points", bm_p2points, "Sweep samples");
  auto* ba = bm_cmd->add_option("--ansatz", bm_ansatz, "hva | ldca | hva,ldca");
  auto* bl = bm_cmd->add_option("--ldca-count", bm_ldca, "exact | paper");
  auto* bo = bm_cmd->add_option("--out", bm_out, "Output directory (default .)");
  auto* bf = bm_cmd->add_option("--format", bm_format, "csv-bundle | json");
  bm_cfg.bind_string(bb, "bound", &bm_bound);
  bm_cfg.bind_double(be, "e-class", &bm_eclass);
  bm_cfg.bind(bp, "p2", [&bm_p2](const ordered_json& j) {
    bm_p2.clear();
    if (j.is_array())
      for (const auto& v : j) bm_p2.push_back(v.get<double>());
    else
      bm_p2.push_back(j.get<double>());
  });
  bm_cfg.bind_double(b0, "p2-min", &bm_p2min);
  bm_cfg.bind_double(b1, "p2-max", &bm_p2max);
  bm_cfg.bind_int(bn, "p2-points", &bm_p2points);
  bm_cfg.bind_string(ba, "ansatz", &bm_ansatz);
  bm_cfg.bind_string(bl, "ldca-count", &bm_ldca);
  bm_cfg.bind_string(bo, "out", &bm_out);
  bm_cfg.bind_string(bf, "format", &bm_format);

  bm_cmd->callback([&] {
    if (!bm_common.config_path.empty()) bm_cfg.apply(bm_common.config_path);
    fhbench::BenchmarkConfig cfg;
    cfg.spec = to_spec(bm_common.model);
    cfg.bounds = parse_bounds(bm_bound);
    cfg.e_class = bm_eclass;
    cfg.p2_values = bm_p2;
    cfg.p2_min = bm_p2min;
    cfg.p2_max = bm_p2max;
    cfg.p2_points = bm_p2points;
    cfg.s_grid = parse_s_grid(bm_common.s_grid);
    cfg.options = to_bound_options(bm_common);
    cfg.ldca = bm_ldca == "exact" ? fhbench::LdcaCount::Exact : fhbench::LdcaCount::Paper;
    cfg.entropy_per = parse_entropy_per(bm_common.entropy_per);

    const fhbench::BenchmarkReport rep = fhbench::run_benchmark(cfg);
    const fhbench::ExportFormat fmt = bm_format == "json"
                                          ? fhbench::ExportFormat::Json
                                          : fhbench::ExportFormat::CsvBundle;
    const auto files = fhbench::export_report(rep, fmt, bm_out);

    for (const fhbench::BoundCurve& c : rep.curves) {
      std::cout << format("%-8s %s, %zu samples", fhbench::bound_kind_name(c.kind),
                          c.valid ? "valid" : "not valid", c.samples.size());
      if (!c.samples.empty())
        std::cout << format(", s in [%.4f, %.4f]", c.s_min(), c.s_max());
      std::cout << "\n";
      for (const std::string& note : c.notes) std::cout << "  note: " << note << "\n";
    }
    if (rep.have_threshold) {
      const double scale =
          cfg.entropy_per == fhbench::EntropyPer::Site ? 2.0 : 1.0;
      std::cout << format("s_th = %.8f bits per %s (bound: %s)\n",
                          rep.threshold.s_th * scale,
                          fhbench::entropy_per_name(cfg.entropy_per),
                          fhbench::bound_kind_name(rep.bound_used));
      if (!rep.threshold.note.empty()) std::cout << rep.threshold.note << "\n";
    }
    const bool want_hva = bm_ansatz.find("hva") != std::string::npos;
    const bool want_ldca = bm_ansatz.find("ldca") != std::string::npos;
    for (const fhbench::BudgetRow& r : rep.budgets) {
      if (r.budget.unbounded) {
        std::cout << format("p2 = %.6g: unbounded budget (threshold density 1)\n",
                            r.p2);
        continue;
      }
      std::cout << format("p2 = %.6g: N2_max = %lld", r.p2, r.budget.N2_max);
      if (want_hva) std::cout << format(", hva layers = %lld", r.hva_layers);
      if (want_ldca) std::cout << format(", ldca layers = %lld", r.ldca_layers);
      std::cout << format(" (ref N_layers = %lld)\n", r.hva_ref_line);
    }
    for (const fhbench::DominanceRow& d : rep.dominance) {
      std::cout << format("dominance %-8s max excess over exact = %.3g",
                          fhbench::bound_kind_name(d.kind), d.max_excess);
      if (cfg.has_e_class() && !d.bound_unreachable && !d.exact_unreachable)
        std::cout << format(", s_th bound %.6f vs exact %.6f", d.s_th_bound,
                            d.s_th_exact);
      std::cout << "\n";
    }
    std::cout << "wrote:";
    for (const std::string& f : files) std::cout << " " << f;
    std::cout << "\n";
  });

  // ---- verify ----
  auto* ver_cmd = app.add_subcommand("verify", "Run the internal consistency checks");
  int ver_workers = 1;
  ver_cmd->add_option("--workers", ver_workers, "Worker threads");
  int verify_failures = 0;
  ver_cmd->callback([&] {
    fhbench::VerifyOptions vo;
    vo.workers = ver_workers;
    verify_failures = fhbench::run_verify(std::cout, vo);
  });

  CLI11_PARSE(app, argc, argv);
  return verify_failures;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}
