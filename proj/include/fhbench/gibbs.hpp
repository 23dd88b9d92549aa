// Copyright 2026 The fhbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Full-spectrum Gibbs thermodynamics. All Boltzmann sums are shifted by
// the minimum eigenvalue (log-sum-exp) so beta up to 1e4 cannot overflow;
// entropies are accumulated in nats and exported in bits.

#ifndef FHBENCH_GIBBS_HPP
#define FHBENCH_GIBBS_HPP

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "fhbench/hubbard.hpp"
#include "fhbench/version.hpp"

namespace fhbench {

struct SectorSpectrum {
  int n_up = 0;
  int n_down = 0;
  std::vector<double> eigenvalues;
};

/// Complete eigenvalue multiset of one Hamiltonian instance.
struct SpectrumSet {
  std::vector<double> eigenvalues;  // ascending
  long total_dim = 0;
  int n_qubits = 0;
  int degeneracy_of_min = 0;
  std::vector<SectorSpectrum> sectors;  // empty when loaded from cache

  double min_eigenvalue() const { return eigenvalues.front(); }
  double plateau_bits() const { return std::log2(double(degeneracy_of_min)); }

  void finalize() {
    std::sort(eigenvalues.begin(), eigenvalues.end());
    total_dim = static_cast<long>(eigenvalues.size());
    const double lam0 = eigenvalues.front();
    degeneracy_of_min = 0;
    for (double v : eigenvalues) {
      if (v > lam0 + 1e-9) break;
      ++degeneracy_of_min;
    }
  }
};

/// Run fn(i) for i in [0, count) on up to `workers` threads.
/// Outputs must be written to disjoint slots; iteration order is not defined.
inline void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::min(std::max(workers, 1), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      try {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

/// Eigenvalues of every sector block, merged and sorted.
inline SpectrumSet diagonalize(const std::vector<SectorBlock>& blocks, int workers = 1) {
  SpectrumSet out;
  out.sectors.resize(blocks.size());
  parallel_for(static_cast<int>(blocks.size()), workers, [&](int i) {
    const SectorBlock& blk = blocks[i];
    if (!blk.matrix.is_finite()) throw std::runtime_error("non-finite matrix entries");
    SectorSpectrum& sec = out.sectors[i];
    sec.n_up = blk.n_up;
    sec.n_down = blk.n_down;
    if (blk.matrix.n_rows == 1) {
      sec.eigenvalues = {blk.matrix(0, 0)};
    } else {
      arma::vec ev;
      if (!arma::eig_sym(ev, blk.matrix))
        throw std::runtime_error("eig_sym failed on a sector block");
      sec.eigenvalues.assign(ev.begin(), ev.end());
    }
  });
  int max_filling = 0;
  for (const auto& sec : out.sectors) {
    out.eigenvalues.insert(out.eigenvalues.end(), sec.eigenvalues.begin(),
                           sec.eigenvalues.end());
    max_filling = std::max(max_filling, sec.n_up + sec.n_down);
  }
  out.n_qubits = max_filling;  // the fully filled sector has 2 N_sites fermions
  out.finalize();
  return out;
}

/// One point of the Gibbs family. Densities are per qubit: e = E / n,
/// s = S_bits / n with n = 2 N_sites spin-orbitals.
struct GibbsPoint {
  double beta = 0;
  double E = 0;       // total energy, units of t
  double S_bits = 0;  // total von Neumann entropy, bits
  double lnZ = 0;
  double var = 0;  // Var(H), drives Newton steps: dS_nats/dbeta = -beta Var
  double e = 0;
  double s = 0;
};

inline GibbsPoint gibbs_point(const SpectrumSet& spec, double beta) {
  if (beta < 0) throw ConfigError("beta must be >= 0 (negative branch unsupported)");
  const double lam0 = spec.min_eigenvalue();
  double z = 0, s1 = 0, s2 = 0;
  for (double lam : spec.eigenvalues) {
    const double w = std::exp(-beta * (lam - lam0));
    z += w;
    s1 += lam * w;
    s2 += lam * lam * w;
  }
  GibbsPoint p;
  p.beta = beta;
  p.E = s1 / z;
  p.var = std::max(0.0, s2 / z - p.E * p.E);
  p.lnZ = std::log(z) - beta * lam0;
  p.S_bits = (beta * p.E + p.lnZ) / kLn2;
  p.e = p.E / spec.n_qubits;
  p.s = p.S_bits / spec.n_qubits;
  return p;
}

struct GibbsCurve {
  std::vector<GibbsPoint> points;  // ascending in s
};

/// Sample the Gibbs family on a beta grid. Points land sorted by s;
/// plateau duplicates (|ds| < 1e-12) are collapsed keeping the minimal e.
inline GibbsCurve gibbs_curve(const SpectrumSet& spec, const BetaGrid& grid,
                              int workers = 1) {
  const std::vector<double> betas = grid.values();
  if (betas.empty()) throw ConfigError("empty beta grid");
  std::vector<GibbsPoint> pts(betas.size());
  parallel_for(static_cast<int>(betas.size()), workers,
               [&](int i) { pts[i] = gibbs_point(spec, betas[i]); });
  std::sort(pts.begin(), pts.end(),
            [](const GibbsPoint& a, const GibbsPoint& b) { return a.s < b.s; });
  GibbsCurve out;
  for (const GibbsPoint& p : pts) {
    if (!out.points.empty() && p.s - out.points.back().s < 1e-12) {
      if (p.E < out.points.back().E) out.points.back() = p;
    } else {
      out.points.push_back(p);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Entropy-matched inverse-temperature solving.
//
// The same solver serves the full-spectrum Gibbs family and the closed-form
// tight-binding / atomic families, so it works on an abstract monotone
// model: S(beta) strictly decreasing from S0 to the ground plateau.

struct ThermoEval {
  double E = 0;
  double S_bits = 0;
  double dS_bits = 0;  // dS/dbeta in bits, always <= 0
};

struct ThermoModel {
  std::function<ThermoEval(double)> eval;
  double S0_bits = 0;       // entropy at beta = 0
  double plateau_bits = 0;  // beta -> inf limit
};

struct BetaSolve {
  double beta = 0;
  bool saturated = false;  // target within tolerance below reachable plateau
  ThermoEval at;           // model evaluation at the returned beta
};

/// Find beta with S(beta) = S_target (bits), |error| <= tol_bits.
/// Newton steps on the bracketing interval with bisection fallback.
/// Targets below the reachable band: within plateau_tol of the plateau
/// saturate at beta_max, further below raise EntropyRangeError.
inline BetaSolve entropy_match(const ThermoModel& model, double S_target,
                               double beta_max, double tol_bits,
                               double plateau_tol = 1e-6) {
  if (S_target > model.S0_bits + std::max(tol_bits, 1e-12))
    throw EntropyRangeError(
        format("entropy target %.12g bits above maximum %.12g", S_target, model.S0_bits),
        model.plateau_bits);
  if (S_target >= model.S0_bits - tol_bits) {
    BetaSolve r{0.0, false, model.eval(0.0)};
    return r;
  }
  ThermoEval at_max = model.eval(beta_max);
  if (S_target < at_max.S_bits) {
    if (S_target >= model.plateau_bits - plateau_tol) return {beta_max, true, at_max};
    throw EntropyRangeError(
        format("entropy target %.12g bits below ground plateau %.12g", S_target,
               model.plateau_bits),
        model.plateau_bits);
  }

  double lo = 0.0, hi = beta_max;  // S(lo) >= target >= S(hi)
  double newton = -1.0;
  ThermoEval ev;
  for (int it = 0; it < 200; ++it) {
    const double x = (newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
    ev = model.eval(x);
    if (std::abs(ev.S_bits - S_target) <= tol_bits) {
      // one Newton polish: the quadratic step typically lands orders of
      // magnitude inside the tolerance, which keeps dominance margins clean
      if (ev.dS_bits < 0) {
        const double xx = x - (ev.S_bits - S_target) / ev.dS_bits;
        if (xx > lo && xx < hi) {
          const ThermoEval e2 = model.eval(xx);
          if (std::abs(e2.S_bits - S_target) < std::abs(ev.S_bits - S_target))
            return {xx, false, e2};
        }
      }
      return {x, false, ev};
    }
    if (ev.S_bits > S_target)
      lo = x;
    else
      hi = x;
    newton = (ev.dS_bits < 0) ? x - (ev.S_bits - S_target) / ev.dS_bits : -1.0;
    if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
  }
  if (std::abs(ev.S_bits - S_target) <= 1e3 * tol_bits)  // interval exhausted
    return {0.5 * (lo + hi), false, ev};
  throw std::runtime_error(format("entropy solve stalled at target %.12g bits", S_target));
}

inline ThermoModel spectrum_model(const SpectrumSet& spec) {
  ThermoModel m;
  m.S0_bits = std::log2(double(spec.total_dim));
  m.plateau_bits = spec.plateau_bits();
  m.eval = [&spec](double beta) {
    const GibbsPoint p = gibbs_point(spec, beta);
    return ThermoEval{p.E, p.S_bits, -beta * p.var / kLn2};
  };
  return m;
}

/// beta with S(beta) = S_target on a full spectrum; tolerance per the
/// contract is 1e-9 * n_qubits bits.
inline BetaSolve entropy_to_beta(const SpectrumSet& spec, double S_target_bits,
                                 double beta_max = 200.0) {
  return entropy_match(spectrum_model(spec), S_target_bits, beta_max,
                       1e-9 * spec.n_qubits);
}

/// beta with E(beta) = E_target; E decreases monotonically in beta.
/// Companion to entropy_to_beta for energy-matched comparisons.
inline BetaSolve energy_to_beta(const SpectrumSet& spec, double E_target,
                                double beta_max = 200.0) {
  const GibbsPoint at0 = gibbs_point(spec, 0.0);
  const double tol = 1e-10 * std::max(1.0, std::abs(at0.E) + std::abs(E_target));
  if (E_target > at0.E + tol)
    throw EntropyRangeError("energy target above beta=0 mean", spec.plateau_bits());
  if (E_target >= at0.E - tol) return {0.0, false, {at0.E, at0.S_bits, 0.0}};
  GibbsPoint pm = gibbs_point(spec, beta_max);
  if (E_target < pm.E - tol) return {beta_max, true, {pm.E, pm.S_bits, 0.0}};

  double lo = 0.0, hi = beta_max;
  double newton = -1.0;
  for (int it = 0; it < 200; ++it) {
    const double x = (newton > lo && newton < hi) ? newton : 0.5 * (lo + hi);
    const GibbsPoint p = gibbs_point(spec, x);
    if (std::abs(p.E - E_target) <= tol) return {x, false, {p.E, p.S_bits, 0.0}};
    if (p.E > E_target)
      lo = x;
    else
      hi = x;
    newton = (p.var > 0) ? x + (p.E - E_target) / p.var : -1.0;
  }
  const GibbsPoint p = gibbs_point(spec, 0.5 * (lo + hi));
  return {0.5 * (lo + hi), false, {p.E, p.S_bits, 0.0}};
}

/// Energy lower bound from the union of free-energy tangents at the grid
/// betas: E(S) >= max_beta (S_nats - ln Z_beta) / beta. At S = n the
/// beta -> 0 tangent dominates and equals the mean eigenvalue.
inline double tangent_envelope(const SpectrumSet& spec, double S_bits,
                               const BetaGrid& grid) {
  const double S_nats = S_bits * kLn2;
  double best = -std::numeric_limits<double>::infinity();
  for (double beta : grid.values()) {
    if (beta <= 0) continue;
    const GibbsPoint p = gibbs_point(spec, beta);
    best = std::max(best, (S_nats - p.lnZ) / beta);
  }
  if (S_bits >= spec.n_qubits - 1e-9) best = std::max(best, gibbs_point(spec, 0.0).E);
  return best;
}

/// Central-difference residuals of the two Gibbs identities:
/// E = -d(ln Z)/dbeta and beta dE/dbeta = dS_nats/dbeta.
struct IdentityResiduals {
  double energy_lnz = 0;
  double entropy_energy = 0;
};

inline IdentityResiduals thermo_identities_check(const SpectrumSet& spec, double beta,
                                                 double h = 0.0) {
  if (beta <= 0) throw ConfigError("identities check needs beta > 0");
  if (h <= 0) h = 1e-5 * std::max(1.0, beta);
  const GibbsPoint mid = gibbs_point(spec, beta);
  const GibbsPoint up = gibbs_point(spec, beta + h);
  const GibbsPoint dn = gibbs_point(spec, beta - h);
  const double dlnZ = (up.lnZ - dn.lnZ) / (2 * h);
  const double dE = (up.E - dn.E) / (2 * h);
  const double dS = (up.S_bits - dn.S_bits) * kLn2 / (2 * h);
  IdentityResiduals r;
  r.energy_lnz = std::abs(mid.E + dlnZ) / (std::abs(mid.E) + 1.0);
  r.entropy_energy = std::abs(beta * dE - dS) / (std::abs(dS) + 1e-12);
  return r;
}

// ---------------------------------------------------------------------------
// Spectrum cache. One file per instance under FHBENCH_CACHE_DIR (or an
// explicit directory): header line, then one eigenvalue per line, %.17g.

inline std::string cache_file_name(const HubbardSpec& spec) {
  std::string name = format("fhbench-%s-L%d-t%.17g-U%.17g-mu%.17g",
                            geometry_name(spec.geometry), spec.L, spec.t, spec.U, spec.mu);
  if (spec.L == 2 && spec.geometry != Geometry::Plaquette2x2_OBC && !spec.l2_multiedge)
    name += "-simple";  // different graph, must not collide
  return name + ".spectrum";
}

inline bool read_spectrum_cache(const std::string& path, long expected_dim,
                                SpectrumSet& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::string header;
  if (!std::getline(in, header) || header != spectrum_schema()) return false;
  out = SpectrumSet{};
  double v;
  while (in >> v) out.eigenvalues.push_back(v);
  if (static_cast<long>(out.eigenvalues.size()) != expected_dim) return false;
  out.finalize();
  return true;
}

inline void write_spectrum_cache(const std::string& path, const SpectrumSet& spec) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream outf(tmp);
    if (!outf) return;  // cache is best effort
    outf << spectrum_schema() << "\n";
    for (double v : spec.eigenvalues) outf << format("%.17g\n", v);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
}

/// Diagonalize with a read-through cache. cache_dir empty means the
/// FHBENCH_CACHE_DIR environment variable; if that is unset too, caching
/// is disabled. Cached spectra carry no per-sector breakdown.
inline SpectrumSet load_or_diagonalize(const HubbardSpec& spec, int workers = 1,
                                       std::string cache_dir = "", int max_sites = 8) {
  spec.validate();
  if (cache_dir.empty()) {
    if (const char* env = std::getenv("FHBENCH_CACHE_DIR")) cache_dir = env;
  }
  const long dim = 1L << (2 * spec.n_sites());
  std::string path;
  if (!cache_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    path = (std::filesystem::path(cache_dir) / cache_file_name(spec)).string();
    SpectrumSet cached;
    if (read_spectrum_cache(path, dim, cached)) {
      cached.n_qubits = spec.n_qubits();
      return cached;
    }
  }
  SpectrumSet fresh = diagonalize(build_sector_blocks(spec, max_sites), workers);
  if (!path.empty()) write_spectrum_cache(path, fresh);
  return fresh;
}

}  // namespace fhbench

#endif  // FHBENCH_GIBBS_HPP
