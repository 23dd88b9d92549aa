// Copyright 2026 The fhbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Internal consistency battery behind `fhbench verify`: one PASS/FAIL
// line per check, covering the exact-diagonalization core, the Gibbs
// kernel, the bound constructions and the noise-budget arithmetic.

#ifndef FHBENCH_VERIFY_HPP
#define FHBENCH_VERIFY_HPP

#include <functional>
#include <iostream>

#include "fhbench/benchmark.hpp"

namespace fhbench {
namespace detail {

/// <N_particles> in the Gibbs state, from the sector-resolved spectrum.
inline double mean_filling(const SpectrumSet& spec, double beta) {
  double shift = spec.min_eigenvalue();
  double Z = 0, NZ = 0;
  for (const SectorSpectrum& sec : spec.sectors) {
    const double np = sec.n_up + sec.n_down;
    for (double lam : sec.eigenvalues) {
      const double w = std::exp(-beta * (lam - shift));
      Z += w;
      NZ += np * w;
    }
  }
  return NZ / Z;
}

/// Direct -sum p log2 p, independent of the S = (beta E + ln Z) route.
inline double direct_entropy_bits(const std::vector<double>& evals, double beta) {
  const double shift = *std::min_element(evals.begin(), evals.end());
  double Z = 0;
  for (double lam : evals) Z += std::exp(-beta * (lam - shift));
  double S = 0;
  for (double lam : evals) {
    const double p = std::exp(-beta * (lam - shift)) / Z;
    if (p > 0) S -= p * std::log2(p);
  }
  return S;
}

}  // namespace detail

struct VerifyOptions {
  int workers = 1;
  std::string cache_dir;
};

/// Runs every check, printing one line each; returns the failure count.
inline int run_verify(std::ostream& os, const VerifyOptions& opts = {}) {
  int failures = 0;
  auto check = [&](const char* name, const std::function<std::string()>& body) {
    std::string detail;
    try {
      detail = body();
    } catch (const std::exception& ex) {
      detail = format("exception: %s", ex.what());
    }
    if (detail.empty()) {
      os << "PASS  " << name << "\n";
    } else {
      os << "FAIL  " << name << ": " << detail << "\n";
      ++failures;
    }
  };
  auto expect = [](bool ok, const std::string& msg) { return ok ? std::string() : msg; };

  HubbardSpec l2;
  l2.L = 2;
  l2.geometry = Geometry::Square2D_PBC;
  l2.U = 5.0;
  l2.mu = 2.5;

  check("sector-dimensions", [&] {
    std::size_t total = 0;
    for (const SectorBlock& b : build_sector_blocks(l2)) total += b.basis.size();
    if (total != 256) return format("L=2 square basis has %zu states, want 256", total);
    HubbardSpec ring;
    ring.L = 3;
    ring.geometry = Geometry::Ring1D;
    ring.U = 1.0;
    total = 0;
    for (const SectorBlock& b : build_sector_blocks(ring)) total += b.basis.size();
    if (total != 64) return format("L=3 ring basis has %zu states, want 64", total);
    return std::string();
  });

  check("hermiticity", [&] {
    double worst = 0;
    for (const SectorBlock& b : build_sector_blocks(l2))
      worst = std::max(worst, max_asymmetry(b));
    return expect(worst <= 1e-12, format("max |H - H^T| = %.3g", worst));
  });

  check("single-site-spectrum", [&] {
    HubbardSpec site;
    site.L = 1;
    site.geometry = Geometry::Ring1D;
    site.U = 4.0;
    const SpectrumSet s = diagonalize(build_sector_blocks(site), opts.workers);
    const std::vector<double> want = {0, 0, 0, 4};
    for (int i = 0; i < 4; ++i)
      if (std::abs(s.eigenvalues[i] - want[i]) > 1e-12)
        return format("eigenvalue %d = %.12g, want %g", i, s.eigenvalues[i], want[i]);
    return std::string();
  });

  check("decoupled-pair-spectrum", [&] {
    HubbardSpec pair;
    pair.L = 2;
    pair.geometry = Geometry::Ring1D;
    pair.t = 0.0;
    pair.U = 4.0;
    const SpectrumSet s = diagonalize(build_sector_blocks(pair), opts.workers);
    int n0 = 0, n4 = 0, n8 = 0;
    for (double lam : s.eigenvalues) {
      if (std::abs(lam) < 1e-12) ++n0;
      else if (std::abs(lam - 4) < 1e-12) ++n4;
      else if (std::abs(lam - 8) < 1e-12) ++n8;
    }
    return expect(n0 == 9 && n4 == 6 && n8 == 1,
                  format("multiplicities {0:%d, 4:%d, 8:%d}, want {9, 6, 1}", n0, n4, n8));
  });

  check("ring2-wrapped-hopping", [&] {
    HubbardSpec ring;
    ring.L = 2;
    ring.geometry = Geometry::Ring1D;
    for (const SectorBlock& b : build_sector_blocks(ring)) {
      if (b.n_up != 1 || b.n_down != 0) continue;
      arma::vec ev;
      arma::eig_sym(ev, b.matrix);
      if (std::abs(ev[0] + 2) > 1e-12 || std::abs(ev[1] - 2) > 1e-12)
        return format("(1,0) sector = {%.6g, %.6g}, want {-2t, +2t}", ev[0], ev[1]);
      return std::string();
    }
    return std::string("sector (1,0) missing");
  });

  check("particle-hole-filling", [&] {
    HubbardSpec half = l2;
    half.U = 4.0;
    half.mu = 2.0;
    const SpectrumSet s = diagonalize(build_sector_blocks(half), opts.workers);
    for (double beta : {0.0, 1.0, 5.0}) {
      const double filling = detail::mean_filling(s, beta);
      if (std::abs(filling - 4.0) > 1e-9)
        return format("<N> = %.12g at beta = %g, want 4", filling, beta);
    }
    return std::string();
  });

  check("entropy-identity", [&] {
    const SpectrumSet s = diagonalize(build_sector_blocks(l2), opts.workers);
    for (double beta : BetaGrid{1e-4, 200, 40}.values()) {
      const GibbsPoint p = gibbs_point(s, beta);
      const double direct = detail::direct_entropy_bits(s.eigenvalues, beta);
      const double rel = std::abs(p.S_bits - direct) / std::max(1.0, std::abs(direct));
      if (rel > 1e-9)
        return format("S mismatch %.3g (relative) at beta = %g", rel, beta);
    }
    return std::string();
  });

  check("kronecker-additivity", [&] {
    HubbardSpec site;
    site.L = 1;
    site.geometry = Geometry::Ring1D;
    site.U = 4.0;
    site.mu = 1.0;
    HubbardSpec pair = site;
    pair.L = 2;
    pair.t = 0.0;
    const SpectrumSet s1 = diagonalize(build_sector_blocks(site), opts.workers);
    const SpectrumSet s2 = diagonalize(build_sector_blocks(pair), opts.workers);
    for (double beta : {0.3, 2.0}) {
      const GibbsPoint a = gibbs_point(s1, beta);
      const GibbsPoint b = gibbs_point(s2, beta);
      if (std::abs(b.E - 2 * a.E) > 1e-12 || std::abs(b.S_bits - 2 * a.S_bits) > 1e-12)
        return format("E or S not additive at beta = %g", beta);
    }
    return std::string();
  });

  check("beta0-anchors", [&] {
    HubbardSpec spec;
    spec.L = 2;
    spec.geometry = Geometry::Square2D_PBC;
    spec.U = 3.0;
    spec.mu = 0.7;
    const double want = (spec.U / 4 - spec.mu) / 2;
    SGrid top{1.0, 1.0, 1};
    BoundOptions bo;
    bo.workers = opts.workers;
    bo.cache_dir = opts.cache_dir;
    for (const BoundCurve& c :
         {phenom_curve(spec, top, bo), onedim_curve(spec, top, bo),
          plaquette_curve(spec, top, bo)}) {
      if (c.samples.empty() || std::abs(c.samples.back().e - want) > 1e-9)
        return format("%s e(1) = %.12g, want %.12g", bound_kind_name(c.kind),
                      c.samples.empty() ? 0.0 : c.samples.back().e, want);
    }
    return std::string();
  });

  check("closed-forms-vs-ed", [&] {
    HubbardSpec tb = l2;
    tb.U = 0;
    tb.mu = 0;
    const SpectrumSet sed = diagonalize(build_sector_blocks(tb), opts.workers);
    const ModeDispersion disp = square_dispersion(2, 1.0);
    for (double beta : BetaGrid{1e-4, 50, 25}.values()) {
      const GibbsPoint p = gibbs_point(sed, beta);
      const ThermoEval q = tb_gibbs(disp, beta);
      if (std::abs(p.E - q.E) > 1e-10 || std::abs(p.S_bits - q.S_bits) > 1e-10)
        return format("tight-binding mismatch at beta = %g", beta);
    }
    HubbardSpec at;
    at.L = 1;
    at.geometry = Geometry::Ring1D;
    at.U = 4.0;
    at.mu = 1.0;
    const SpectrumSet aed = diagonalize(build_sector_blocks(at), opts.workers);
    for (double beta : BetaGrid{1e-4, 50, 25}.values()) {
      const GibbsPoint p = gibbs_point(aed, beta);
      const ThermoEval q = atomic_gibbs(at.mu, at.U, beta);
      if (std::abs(p.E - q.E) > 1e-10 || std::abs(p.S_bits - q.S_bits) > 1e-10)
        return format("atomic mismatch at beta = %g", beta);
    }
    return std::string();
  });

  check("thermo-identities", [&] {
    const SpectrumSet s = diagonalize(build_sector_blocks(l2), opts.workers);
    const auto r = thermo_identities_check(s, 1.0);
    if (r.energy_lnz > 1e-5)
      return format("E vs -d lnZ/d beta residual %.3g", r.energy_lnz);
    if (r.entropy_energy > 1e-5)
      return format("dS/dE vs beta residual %.3g", r.entropy_energy);
    return std::string();
  });

  BoundOptions bo;
  bo.workers = opts.workers;
  bo.cache_dir = opts.cache_dir;
  const SGrid grid{0.05, 1.0, 96};

  check("dominance-L2", [&] {
    const BoundCurve exact = exact_boundary(l2, BetaGrid{}, bo);
    for (const BoundCurve& c : {phenom_curve(l2, grid, bo), onedim_curve(l2, grid, bo)}) {
      for (const BoundSample& p : c.samples) {
        const double ee = interp_e(exact, p.s);
        if (!std::isnan(ee) && p.e > ee + 1e-9)
          return format("%s exceeds exact by %.3g at s = %.4f",
                        bound_kind_name(c.kind), p.e - ee, p.s);
      }
    }
    return std::string();
  });

  check("combination-sandwich", [&] {
    const std::vector<BoundCurve> parts = {phenom_curve(l2, grid, bo),
                                           onedim_curve(l2, grid, bo)};
    const BoundCurve comb = combine_curves(parts, grid);
    const BoundCurve exact = exact_boundary(l2, BetaGrid{}, bo);
    for (const BoundSample& p : comb.samples) {
      for (const BoundCurve& c : parts) {
        const double e = interp_e(c, p.s);
        if (!std::isnan(e) && p.e < e - 1e-9)
          return format("combination below %s at s = %.4f", bound_kind_name(c.kind), p.s);
      }
      const double ee = interp_e(exact, p.s);
      if (!std::isnan(ee) && p.e > ee + 1e-9)
        return format("combination above exact at s = %.4f", p.s);
    }
    return std::string();
  });

  check("threshold-conservative", [&] {
    const BoundCurve comb =
        combine_curves({phenom_curve(l2, grid, bo), onedim_curve(l2, grid, bo)}, grid);
    const BoundCurve exact = exact_boundary(l2, BetaGrid{}, bo);
    const double e_class = -1.2;
    const double s_b = solve_threshold(comb, e_class).s_th;
    const double s_x = solve_threshold(exact, e_class).s_th;
    return expect(s_b >= s_x - 1e-9,
                  format("bound threshold %.6f below exact %.6f", s_b, s_x));
  });

  check("curve-monotonicity", [&] {
    HubbardSpec big;
    big.L = 4;
    big.geometry = Geometry::Square2D_PBC;
    big.U = 4.0;
    big.mu = 2.0;
    for (const BoundCurve& c : {phenom_curve(big, grid, bo), onedim_curve(big, grid, bo),
                                plaquette_curve(big, grid, bo)}) {
      for (std::size_t i = 1; i < c.samples.size(); ++i)
        if (c.samples[i].e < c.samples[i - 1].e - 1e-12)
          return format("%s decreases at s = %.4f", bound_kind_name(c.kind),
                        c.samples[i].s);
    }
    return std::string();
  });

  check("noise-inversion", [&] {
    const int bad = inversion_consistency_failures();
    return expect(bad == 0, format("%d of 100 random budgets inconsistent", bad));
  });

  check("budget-asymptotics", [&] {
    for (double p2 : {1e-4, 1e-3}) {
      const NoiseBudget b{128, p2, 0.69};
      const double got = double(max_cnot_count(b).N2_max);
      const double approx = b.n * b.s_th * kLn2 / (2 * p2);
      if (std::abs(got - approx) / approx > 0.02)
        return format("N2_max = %.6g vs n s_th ln2 / 2 p2 = %.6g at p2 = %g", got,
                      approx, p2);
    }
    return std::string();
  });

  check("ansatz-count-identities", [&] {
    for (int L = 2; L <= 12; ++L) {
      const HvaEnumeration e = hva_enumerate(L);
      const HvaCounts h = hva_counts(L);
      if (e.table_total != h.layer)
        return format("distance-table total %lld != closed form %lld at L = %d",
                      e.table_total, h.layer, L);
      if (e.layer_total != h.layer - 12LL * L)
        return format("snake enumeration %lld != closed form - 12L = %lld at L = %d",
                      e.layer_total, h.layer - 12LL * L, L);
      const long long N = 2LL * L * L;
      if (ldca_layer_cnots(L, LdcaCount::Paper) -
              ldca_layer_cnots(L, LdcaCount::Exact) != 5 * N)
        return format("LDCA paper - exact != 5N at L = %d", L);
    }
    const HvaCounts h8 = hva_counts(8);
    if (h8.prep != 65024 || h8.layer != 35488)
      return format("L=8 HVA counts {%lld, %lld}, want {65024, 35488}", h8.prep,
                    h8.layer);
    if (ldca_layer_cnots(8, LdcaCount::Exact) != 81280 ||
        ldca_layer_cnots(8, LdcaCount::Paper) != 81920)
      return std::string("L=8 LDCA counts off");
    return std::string();
  });

  check("frozen-anchors", [&] {
    HubbardSpec ring;
    ring.L = 4;
    ring.geometry = Geometry::Ring1D;
    ring.U = 4.0;
    const SpectrumSet rs = diagonalize(build_sector_blocks(ring), opts.workers);
    if (std::abs(rs.min_eigenvalue() - (-3.418550718873846)) > 1e-9)
      return format("ring L=4 ground energy %.15g", rs.min_eigenvalue());
    HubbardSpec plaq;
    plaq.L = 2;
    plaq.geometry = Geometry::Plaquette2x2_OBC;
    plaq.U = 2.0;
    plaq.mu = 1.0;
    const SpectrumSet ps = diagonalize(build_sector_blocks(plaq), opts.workers);
    if (std::abs(ps.min_eigenvalue() - (-6.828427124746189)) > 1e-9)
      return format("plaquette ground energy %.15g", ps.min_eigenvalue());
    HubbardSpec big;
    big.L = 8;
    big.geometry = Geometry::Square2D_PBC;
    big.U = 4.0;
    big.mu = 2.0;
    const BoundCurve c = plaquette_curve(big, SGrid{0.69, 0.69, 1}, bo);
    if (c.samples.empty() || std::abs(c.samples[0].e - (-1.433874022347)) > 1e-9)
      return format("plaquette bound e(0.69) = %.12g",
                    c.samples.empty() ? 0.0 : c.samples[0].e);
    return std::string();
  });

  os << (failures == 0 ? "verify: all checks passed\n"
                       : format("verify: %d check(s) failed\n", failures));
  return failures;
}

}  // namespace fhbench

#endif  // FHBENCH_VERIFY_HPP
