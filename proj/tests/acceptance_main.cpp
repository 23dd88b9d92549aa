// Copyright 2026 The fhbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Release gate: ten numbered criteria, one PASS/FAIL line each, exit code
// equal to the number of failures. Tolerances and time limits are part of
// the criterion and are printed with it. Criteria 2 and 3 consume the
// threshold computed by criterion 1.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "fhbench/benchmark.hpp"
#include "fhbench/bounds.hpp"
#include "fhbench/closed_forms.hpp"
#include "fhbench/gibbs.hpp"
#include "fhbench/noise.hpp"

namespace {

using fhbench::BoundCurve;
using fhbench::BoundOptions;
using fhbench::Geometry;
using fhbench::HubbardSpec;
using fhbench::SGrid;
using fhbench::interp_e;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

HubbardSpec square(int L, double U) {
  HubbardSpec s;
  s.L = L;
  s.geometry = Geometry::Square2D_PBC;
  s.t = 1.0;
  s.U = U;
  s.mu = U / 2.0;  // half filling throughout the gate
  return s;
}

struct Gate {
  int failures = 0;

  template <typename Body>
  void criterion(int idx, const char* title, double time_limit_s, Body&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = body(&detail);
    } catch (const std::exception& ex) {
      detail = std::string("exception: ") + ex.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && time_limit_s > 0 && secs > time_limit_s) {
      ok = false;
      detail += fhbench::format("%s[time limit %.0fs exceeded]",
                                detail.empty() ? "" : "  ", time_limit_s);
    }
    std::printf("%s  %2d  %-46s  %7.2fs  %s\n", ok ? "PASS" : "FAIL", idx, title,
                secs, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

}  // namespace

int main() {
  Gate gate;
  double s_th_1 = kNaN;  // carried from criterion 1 into 2 and 3

  gate.criterion(1, "plaq threshold at e_class=-1.43 in [0.67,0.71]", 10.0,
                 [&](std::string* d) {
    const HubbardSpec spec = square(8, 4.0);
    const SGrid grid{0.05, 1.0, 951};
    const BoundCurve plaq = fhbench::plaquette_curve(spec, grid, {});
    const fhbench::ThresholdResult th = fhbench::solve_threshold(plaq, -1.43);
    s_th_1 = th.s_th;
    *d = fhbench::format("s_th = %.6f", th.s_th);
    return !th.saturated_high && th.s_th >= 0.67 && th.s_th <= 0.71;
  });

  gate.criterion(2, "one layer at p2=3e-4, none at 1e-3 (n=128)", 0,
                 [&](std::string* d) {
    if (!(s_th_1 > 0)) {
      *d = "no threshold from criterion 1";
      return false;
    }
    const fhbench::AnsatzSpec hva{fhbench::AnsatzFamily::HVA, 8};
    const fhbench::AnsatzSpec ldca{fhbench::AnsatzFamily::LDCA, 8};
    const fhbench::CnotBudget lo = fhbench::max_cnot_count({128, 3e-4, s_th_1});
    const fhbench::CnotBudget hi = fhbench::max_cnot_count({128, 1e-3, s_th_1});
    if (lo.unbounded || hi.unbounded) {
      *d = "budget unexpectedly unbounded";
      return false;
    }
    const long long h3 = fhbench::max_layers(hva, lo.N2_max);
    const long long l3 = fhbench::max_layers(ldca, lo.N2_max);
    const long long h1 = fhbench::max_layers(hva, hi.N2_max);
    const long long l1 = fhbench::max_layers(ldca, hi.N2_max);
    *d = fhbench::format("N2_max = %lld, layers = {%lld,%lld} then {%lld,%lld}",
                         lo.N2_max, h3, l3, h1, l1);
    return h3 == 1 && l3 == 1 && h1 == 0 && l1 == 0;
  });

  gate.criterion(3, "64-layer HVA transition p2 in [1e-5,3e-5]", 0,
                 [&](std::string* d) {
    if (!(s_th_1 > 0)) {
      *d = "no threshold from criterion 1";
      return false;
    }
    const double p2 = fhbench::layers_transition_p2(
        {fhbench::AnsatzFamily::HVA, 8}, s_th_1, 64);
    *d = fhbench::format("transition p2 = %.4g", p2);
    return p2 >= 1e-5 && p2 <= 3e-5;
  });

  gate.criterion(4, "bounds below exact at L=2 within 1e-9", 60.0,
                 [&](std::string* d) {
    double worst_excess = -std::numeric_limits<double>::infinity();
    double worst_gap = 0;  // combination below best individual bound
    const SGrid grid{0.05, 1.0, 191};
    for (double U : {0.1, 1.0, 5.0, 10.0}) {
      const HubbardSpec spec = square(2, U);
      const BoundCurve ph = fhbench::phenom_curve(spec, grid, {});
      const BoundCurve od = fhbench::onedim_curve(spec, grid, {});
      const BoundCurve ex = fhbench::exact_boundary(spec, fhbench::BetaGrid{}, {});
      const BoundCurve comb = fhbench::combine_curves({ph, od}, grid);
      for (const BoundCurve* c : {&ph, &od}) {
        if (!c->valid) return (*d = "bound curve unexpectedly invalid", false);
        for (const auto& sm : c->samples) {
          const double ee = interp_e(ex, sm.s);
          if (std::isnan(ee)) continue;
          worst_excess = std::max(worst_excess, sm.e - ee);
        }
      }
      for (const auto& sm : comb.samples) {
        const double ee = interp_e(ex, sm.s);
        if (!std::isnan(ee)) worst_excess = std::max(worst_excess, sm.e - ee);
        double best = -std::numeric_limits<double>::infinity();
        for (const BoundCurve* c : {&ph, &od}) {
          const double be = interp_e(*c, sm.s);
          if (!std::isnan(be)) best = std::max(best, be);
        }
        if (std::isfinite(best)) worst_gap = std::max(worst_gap, best - sm.e);
      }
    }
    *d = fhbench::format("max excess = %.2e, max sandwich gap = %.2e",
                         worst_excess, worst_gap);
    return worst_excess <= 1e-9 && worst_gap <= 1e-12;
  });

  gate.criterion(5, "phenom/onedim ordering flips with U at L=2", 0,
                 [&](std::string* d) {
    const SGrid grid{0.02, 1.0, 197};
    // Weak coupling: phenom wins pointwise on s in [0.6, 1].
    const HubbardSpec weak = square(2, 0.1);
    const BoundCurve ph_w = fhbench::phenom_curve(weak, grid, {});
    const BoundCurve od_w = fhbench::onedim_curve(weak, grid, {});
    double min_margin = std::numeric_limits<double>::infinity();
    for (const auto& sm : od_w.samples) {
      if (sm.s < 0.6 || sm.s > 1.0) continue;
      const double pe = interp_e(ph_w, sm.s);
      if (std::isnan(pe)) return (*d = "phenom missing on [0.6,1]", false);
      min_margin = std::min(min_margin, pe - sm.e);
    }
    // Strong coupling: onedim overtakes somewhere.
    const HubbardSpec strong = square(2, 10.0);
    const BoundCurve ph_s = fhbench::phenom_curve(strong, grid, {});
    const BoundCurve od_s = fhbench::onedim_curve(strong, grid, {});
    double max_reversal = -std::numeric_limits<double>::infinity();
    for (const auto& sm : od_s.samples) {
      const double pe = interp_e(ph_s, sm.s);
      if (std::isnan(pe)) continue;
      max_reversal = std::max(max_reversal, sm.e - pe);
    }
    *d = fhbench::format("U=0.1 min(ph-od) = %.2e, U=10 max(od-ph) = %.2e",
                         min_margin, max_reversal);
    return min_margin >= -1e-12 && max_reversal > 1e-12;
  });

  gate.criterion(6, "scale invariance: plaq bitwise, phenom/onedim drift", 900.0,
                 [&](std::string* d) {
    const SGrid grid{0.8, 1.0, 41};
    const BoundCurve plaq4 = fhbench::plaquette_curve(square(4, 4.0), grid, {});
    const BoundCurve plaq8 = fhbench::plaquette_curve(square(8, 4.0), grid, {});
    if (plaq4.samples.size() != plaq8.samples.size())
      return (*d = "plaq sample counts differ", false);
    for (std::size_t i = 0; i < plaq4.samples.size(); ++i)
      if (plaq4.samples[i].s != plaq8.samples[i].s ||
          plaq4.samples[i].e != plaq8.samples[i].e)
        return (*d = "plaq curves are not bitwise identical", false);

    // Drift in units of t per site: e is per qubit, one site = two qubits.
    const auto drift = [&](const BoundCurve& a, const BoundCurve& b) {
      double worst = 0;
      for (const auto& sm : a.samples) {
        const double be = interp_e(b, sm.s);
        if (!std::isnan(be)) worst = std::max(worst, 2.0 * std::abs(sm.e - be));
      }
      return worst;
    };
    const double ph_drift = drift(fhbench::phenom_curve(square(4, 4.0), grid, {}),
                                  fhbench::phenom_curve(square(7, 4.0), grid, {}));
    const double od_drift = drift(fhbench::onedim_curve(square(4, 4.0), grid, {}),
                                  fhbench::onedim_curve(square(7, 4.0), grid, {}));
    *d = fhbench::format("phenom drift = %.4f (<=0.02), onedim drift = %.4f (<=0.03)",
                         ph_drift, od_drift);
    return ph_drift <= 2e-2 && od_drift <= 3e-2;
  });

  gate.criterion(7, "Gibbs identity residuals <= 1e-5", 0, [&](std::string* d) {
    std::vector<fhbench::SpectrumSet> systems;
    {
      fhbench::SpectrumSet atom;
      atom.eigenvalues = {0.0, -1.3, -1.3, 4.0 - 2.6};  // single site, U=4 mu=1.3
      atom.n_qubits = 2;
      atom.finalize();
      systems.push_back(std::move(atom));
      fhbench::SpectrumSet two;
      two.eigenvalues = {0.0, 1.0};
      two.n_qubits = 1;
      two.finalize();
      systems.push_back(std::move(two));
      systems.push_back(fhbench::load_or_diagonalize(square(2, 4.0)));
    }
    double worst = 0;
    for (const auto& ss : systems)
      for (double beta : {0.1, 1.0, 10.0}) {
        const fhbench::IdentityResiduals r = fhbench::thermo_identities_check(ss, beta);
        worst = std::max({worst, r.energy_lnz, r.entropy_energy});
      }
    *d = fhbench::format("max residual = %.2e", worst);
    return worst <= 1e-5;
  });

  gate.criterion(8, "tangent envelope gap in [0, 2e-3 t N_sites]", 0,
                 [&](std::string* d) {
    const fhbench::BetaGrid bgrid{};
    double worst = 0, most_negative = 0;
    for (double U : {0.1, 5.0, 10.0}) {
      const fhbench::SpectrumSet ss = fhbench::load_or_diagonalize(square(2, U));
      for (double beta : {0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 20.0}) {
        const fhbench::GibbsPoint p = fhbench::gibbs_point(ss, beta);
        const double env = fhbench::tangent_envelope(ss, p.S_bits, bgrid);
        worst = std::max(worst, p.E - env);
        most_negative = std::min(most_negative, p.E - env);
      }
    }
    *d = fhbench::format("max gap = %.2e (cap 8e-3), min gap = %.1e", worst,
                         most_negative);
    return worst <= 8e-3 && most_negative >= -1e-9;
  });

  gate.criterion(9, "closed forms match ED to 1e-10 at L=2", 0,
                 [&](std::string* d) {
    double worst = 0;
    {
      HubbardSpec tb = square(2, 0.0);
      tb.mu = 0.0;
      const fhbench::SpectrumSet ed = fhbench::load_or_diagonalize(tb);
      const fhbench::ModeDispersion disp = fhbench::square_dispersion(2, tb.t);
      for (double beta : fhbench::BetaGrid{}.values()) {
        const fhbench::GibbsPoint p = fhbench::gibbs_point(ed, beta);
        const fhbench::ThermoEval cf = fhbench::tb_gibbs(disp, beta);
        worst = std::max({worst, std::abs(p.E - cf.E), std::abs(p.S_bits - cf.S_bits)});
      }
    }
    {
      HubbardSpec at = square(2, 4.0);
      at.t = 0.0;
      at.mu = 1.3;
      const fhbench::SpectrumSet ed = fhbench::load_or_diagonalize(at);
      for (double beta : fhbench::BetaGrid{}.values()) {
        const fhbench::GibbsPoint p = fhbench::gibbs_point(ed, beta);
        const fhbench::ThermoEval cf = fhbench::atomic_gibbs(at.mu, at.U, beta);
        worst = std::max({worst, std::abs(p.E - 4.0 * cf.E),
                          std::abs(p.S_bits - 4.0 * cf.S_bits)});
      }
    }
    *d = fhbench::format("max |ED - closed form| = %.2e", worst);
    return worst <= 1e-10;
  });

  gate.criterion(10, "noise inversion consistent on 100 random cases", 0,
                 [&](std::string* d) {
    const int bad = fhbench::inversion_consistency_failures();
    *d = fhbench::format("failures = %d", bad);
    return bad == 0;
  });

  std::printf("acceptance: %d/10 criteria passed\n", 10 - gate.failures);
  return gate.failures;
}
