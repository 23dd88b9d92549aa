// Copyright 2026 The fhbench Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "fhbench/benchmark.hpp"

using namespace fhbench;

namespace {

BoundCurve line_curve(double s0, double e0, double s1, double e1, int n = 11) {
  BoundCurve c;
  for (int i = 0; i < n; ++i) {
    const double f = double(i) / (n - 1);
    c.samples.push_back({s0 + f * (s1 - s0), e0 + f * (e1 - e0)});
  }
  return c;
}

BenchmarkConfig l2_config() {
  BenchmarkConfig cfg;
  cfg.spec.L = 2;
  cfg.spec.geometry = Geometry::Square2D_PBC;
  cfg.spec.U = 5.0;
  cfg.spec.mu = 2.5;
  cfg.e_class = -1.2;
  cfg.p2_values = {3e-4};
  cfg.s_grid = SGrid{0.1, 1.0, 91};
  return cfg;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("solve_threshold finds the leftmost crossing") {
  const BoundCurve c = line_curve(0.0, -1.0, 1.0, 0.0);

  const ThresholdResult mid = solve_threshold(c, -0.5);
  CHECK(mid.s_th == Catch::Approx(0.5).margin(1e-8));
  CHECK(!mid.saturated_high);

  CHECK(solve_threshold(c, -1.0).s_th == Catch::Approx(0.0).margin(1e-12));
  CHECK_THROWS_AS(solve_threshold(c, -2.0), UnreachableError);

  const ThresholdResult high = solve_threshold(c, 0.5);
  CHECK(high.s_th == 1.0);
  CHECK(high.saturated_high);
  CHECK(!high.note.empty());
}

TEST_CASE("solve_threshold is conservative on flat segments") {
  // plateau at e = -1 up to s = 0.6, then rising: crossing at the plateau
  // energy must return the leftmost point of the flat stretch
  BoundCurve c;
  c.samples = {{0.2, -1.0}, {0.4, -1.0}, {0.6, -1.0}, {0.8, -0.5}, {1.0, 0.0}};
  const ThresholdResult r = solve_threshold(c, -1.0);
  CHECK(r.s_th == Catch::Approx(0.2).margin(1e-8));
  const ThresholdResult r2 = solve_threshold(c, -0.75);
  CHECK(r2.s_th == Catch::Approx(0.7).margin(1e-8));
}

TEST_CASE("run_benchmark assembles curves, threshold, budgets and dominance") {
  const BenchmarkConfig cfg = l2_config();
  const BenchmarkReport rep = run_benchmark(cfg);

  REQUIRE(rep.curves.size() == 3);
  CHECK(rep.curves[0].kind == BoundKind::Phenom);
  CHECK(rep.curves[1].kind == BoundKind::OneDim);
  CHECK(rep.curves[2].kind == BoundKind::Plaq);
  CHECK(!rep.curves[2].valid);  // L = 2 cannot host the plaquette tiling
  CHECK(rep.bound_used == BoundKind::Combination);
  REQUIRE(!rep.combination.samples.empty());

  REQUIRE(rep.have_threshold);
  CHECK(rep.threshold.s_th > 0.0);
  CHECK(rep.threshold.s_th < 1.0);

  REQUIRE(rep.budgets.size() == 1);
  CHECK(!rep.budgets[0].budget.unbounded);
  CHECK(rep.budgets[0].hva_ref_line == 4);

  // exact boundary is automatic at four sites; bounds stay conservative
  REQUIRE(!rep.exact.samples.empty());
  REQUIRE(!rep.dominance.empty());
  for (const DominanceRow& d : rep.dominance) {
    CHECK(d.max_excess <= 1e-9);
    // Both thresholds come from chord interpolation; where the true curves
    // coincide (onedim equals exact at L=2) the coarser bound chords sit
    // slightly above the finer exact chords, so allow O(h^2) slack.
    if (!d.bound_unreachable && !d.exact_unreachable)
      CHECK(d.s_th_bound >= d.s_th_exact - 1e-4);
  }
}

TEST_CASE("threshold saturates when e_class exceeds the entropy ceiling") {
  BenchmarkConfig cfg = l2_config();
  cfg.e_class = -0.5;  // above e(1) = (U/4 - mu)/2 = -0.625
  const BenchmarkReport rep = run_benchmark(cfg);
  CHECK(rep.threshold.s_th == 1.0);
  CHECK(rep.threshold.saturated_high);
  REQUIRE(!rep.budgets.empty());
  CHECK(rep.budgets[0].budget.unbounded);
  CHECK(rep.budgets[0].hva_layers == -1);
}

TEST_CASE("threshold reproduces from the exported curve to 1e-6") {
  const BenchmarkConfig cfg = l2_config();
  const BenchmarkReport rep = run_benchmark(cfg);

  const auto dir = std::filesystem::temp_directory_path() / "fhbench-repro-test";
  std::filesystem::create_directories(dir);
  write_curve_csv((dir / "comb.csv").string(), rep.combination);
  const BoundCurve reread = read_curve_csv((dir / "comb.csv").string());
  const ThresholdResult again = solve_threshold(reread, cfg.e_class);
  CHECK(again.s_th == Catch::Approx(rep.threshold.s_th).margin(1e-6));
  std::filesystem::remove_all(dir);
}

TEST_CASE("benchmark p2 sweep generation") {
  BenchmarkConfig cfg = l2_config();
  cfg.p2_values.clear();
  cfg.p2_min = 1e-4;
  cfg.p2_max = 1e-3;
  cfg.p2_points = 7;
  const std::vector<double> p2 = benchmark_p2_list(cfg);
  REQUIRE(p2.size() == 7);
  CHECK(p2.front() == Catch::Approx(1e-4));
  CHECK(p2.back() == Catch::Approx(1e-3));
  const BenchmarkReport rep = run_benchmark(cfg);
  CHECK(rep.budgets.size() == 7);
}

TEST_CASE("report JSON carries the schema and survives a round trip") {
  const BenchmarkReport rep = run_benchmark(l2_config());
  const ordered_json j = report_to_json(rep, /*stamp=*/false);
  CHECK(j["schema"] == "fhbench-report v1");
  CHECK(j["config"]["L"] == 2);
  CHECK(j["threshold"]["s_th"].get<double>() ==
        Catch::Approx(rep.threshold.s_th).margin(1e-12));

  const ordered_json reparsed = ordered_json::parse(j.dump(2));
  CHECK(reparsed == j);
}

TEST_CASE("export writes a parseable bundle with byte-stable CSVs") {
  const BenchmarkReport rep = run_benchmark(l2_config());
  const auto dir = std::filesystem::temp_directory_path() / "fhbench-export-test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);

  const auto files = export_report(rep, ExportFormat::CsvBundle, dir.string());
  CHECK(std::find(files.begin(), files.end(), "report.json") != files.end());
  CHECK(std::find(files.begin(), files.end(), "curve_combination.csv") != files.end());
  CHECK(std::find(files.begin(), files.end(), "curve_exact.csv") != files.end());
  CHECK(std::find(files.begin(), files.end(), "sweep.csv") != files.end());
  for (const std::string& f : files) CHECK(std::filesystem::exists(dir / f));

  const ordered_json parsed = ordered_json::parse(slurp(dir / "report.json"));
  CHECK(parsed["schema"] == "fhbench-report v1");
  CHECK(parsed.contains("generated_at"));
  const ordered_json expect = report_to_json(rep, /*stamp=*/false);
  ordered_json stripped = parsed;
  stripped.erase("generated_at");
  stripped.erase("artifacts");
  CHECK(stripped == expect);

  // re-export: every CSV byte-identical (timestamps live in JSON only)
  std::map<std::string, std::string> before;
  for (const std::string& f : files)
    if (f.find(".csv") != std::string::npos) before[f] = slurp(dir / f);
  export_report(rep, ExportFormat::CsvBundle, dir.string());
  for (const auto& [f, text] : before) CHECK(slurp(dir / f) == text);
  std::filesystem::remove_all(dir);
}

TEST_CASE("curve CSV honors the per-site entropy option") {
  BoundCurve c;
  c.samples = {{0.5, -1.25}, {1.0, -0.625}};
  CHECK(curve_csv_text(c, EntropyPer::Qubit) == "s,e\n0.5,-1.25\n1,-0.625\n");
  CHECK(curve_csv_text(c, EntropyPer::Site) == "s,e\n1,-1.25\n2,-0.625\n");

  const auto dir = std::filesystem::temp_directory_path() / "fhbench-csv-test";
  std::filesystem::create_directories(dir);
  write_curve_csv((dir / "site.csv").string(), c, EntropyPer::Site);
  const BoundCurve back = read_curve_csv((dir / "site.csv").string(), EntropyPer::Site);
  REQUIRE(back.samples.size() == 2);
  CHECK(back.samples[0].s == Catch::Approx(0.5).margin(1e-12));
  std::filesystem::remove_all(dir);
}

TEST_CASE("unreachable reference energy raises with a clear message") {
  BenchmarkConfig cfg = l2_config();
  cfg.e_class = -5.0;  // below every curve
  try {
    run_benchmark(cfg);
    FAIL("expected UnreachableError");
  } catch (const UnreachableError& ex) {
    CHECK(std::string(ex.what()).find("unreachable") != std::string::npos);
  }
}
