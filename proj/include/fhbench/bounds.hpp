// Copyright 2026 The fhbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Gibbs-boundary lower bounds from Hamiltonian partitionings, their
// pointwise-max combination, and the small-lattice exact boundary.
//
// Every curve is a list of (s, e) samples in per-qubit densities:
// s in bits per spin-orbital, e in units of t per spin-orbital. Each
// partition piece is entropy-matched to the full target (a product state
// of sub-Gibbs states at the target density minimizes the summed energy),
// so a piece whose spectrum cannot reach the target entropy invalidates
// that sample: such samples are dropped, not extrapolated. A fully
// degenerate piece (zero spread, e.g. the atomic term at U = mu = 0)
// carries no entropy restriction and contributes its constant energy.

#ifndef FHBENCH_BOUNDS_HPP
#define FHBENCH_BOUNDS_HPP

#include "fhbench/closed_forms.hpp"

namespace fhbench {

enum class BoundKind { Phenom, OneDim, Plaq, Combination, Exact };

inline const char* bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::Phenom: return "phenom";
    case BoundKind::OneDim: return "onedim";
    case BoundKind::Plaq: return "plaq";
    case BoundKind::Combination: return "combination";
    case BoundKind::Exact: return "exact";
  }
  return "?";
}

struct BoundSample {
  double s = 0;
  double e = 0;
};

struct BoundCurve {
  BoundKind kind = BoundKind::Phenom;
  std::vector<BoundSample> samples;  // ascending s, nondecreasing e
  bool valid = true;
  std::vector<std::string> notes;
  HubbardSpec spec;
  int dropped = 0;                   // grid points below a sub-plateau

  double s_min() const { return samples.front().s; }
  double s_max() const { return samples.back().s; }
  double e_min() const { return samples.front().e; }
  double e_max() const { return samples.back().e; }
};

struct BoundOptions {
  double beta_max = 200.0;
  BetaGrid beta_grid{};
  int workers = 1;
  std::string cache_dir;  // empty: FHBENCH_CACHE_DIR or disabled
  int max_sites = 8;
};

/// Monotone piecewise-linear interpolation; NaN outside the sample range.
inline double interp_e(const BoundCurve& curve, double s) {
  const auto& v = curve.samples;
  if (v.empty() || s < v.front().s - 1e-12 || s > v.back().s + 1e-12)
    return std::numeric_limits<double>::quiet_NaN();
  if (s <= v.front().s) return v.front().e;
  if (s >= v.back().s) return v.back().e;
  auto hi = std::lower_bound(v.begin(), v.end(), s,
                             [](const BoundSample& a, double x) { return a.s < x; });
  auto lo = hi - 1;
  const double f = (s - lo->s) / (hi->s - lo->s);
  return lo->e + f * (hi->e - lo->e);
}

namespace detail {

/// Entropy-match one partition piece at S_target bits. Returns false when
/// the target is below the piece's plateau (sample must be dropped).
inline bool piece_energy(const ThermoModel& model, double S_target, double beta_max,
                         double tol_bits, double* E_out) {
  try {
    *E_out = entropy_match(model, S_target, beta_max, tol_bits).at.E;
    return true;
  } catch (const EntropyRangeError&) {
    return false;
  }
}

struct GridAccum {
  std::vector<double> s, e;
  std::vector<char> ok;
  explicit GridAccum(const std::vector<double>& grid)
      : s(grid), e(grid.size(), 0.0), ok(grid.size(), 0) {}

  void fill(BoundCurve* curve) const {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (ok[i])
        curve->samples.push_back({s[i], e[i]});
      else
        curve->dropped += 1;
    }
    if (curve->dropped > 0)
      curve->notes.push_back(format(
          "%d grid point(s) below an entropy plateau were dropped", curve->dropped));
  }
};

}  // namespace detail

/// Phenomenological partitioning: kinetic term matched in momentum space
/// plus N_sites atomic terms, every piece at the full target density.
/// e(s) = [E_TB(beta_TB) + N_sites E_site(beta_at)] / n per qubit.
inline BoundCurve phenom_curve(const HubbardSpec& spec, const SGrid& s_grid,
                               const BoundOptions& opts = {}) {
  spec.validate();
  if (spec.geometry != Geometry::Square2D_PBC)
    throw ConfigError("phenom bound is defined on the square lattice");
  BoundCurve curve;
  curve.kind = BoundKind::Phenom;
  curve.spec = spec;

  const int n = spec.n_qubits();
  const int n_sites = spec.n_sites();
  const ModeDispersion disp = square_dispersion(spec.L, spec.t);
  double eps_span = 0;
  for (double eps : disp.epsilons) eps_span = std::max(eps_span, std::abs(eps));
  const bool tb_flat = eps_span < 1e-15;
  const auto lam = atomic_levels(spec.mu, spec.U);
  const bool atomic_flat =
      std::max({lam[0], lam[1], lam[2], lam[3]}) - std::min({lam[0], lam[1], lam[2], lam[3]}) <
      1e-15;
  const ThermoModel tb = tb_model(disp);
  const ThermoModel atomic = atomic_model(spec.mu, spec.U);

  const std::vector<double> grid = s_grid.values();
  detail::GridAccum acc(grid);
  parallel_for(static_cast<int>(grid.size()), opts.workers, [&](int i) {
    const double s = grid[i];
    double E_tb = 0, E_at = lam[0];
    bool have = true;
    if (!tb_flat)
      have = detail::piece_energy(tb, s * n, opts.beta_max, 1e-9 * n, &E_tb);
    if (have && !atomic_flat)
      have = detail::piece_energy(atomic, 2.0 * s, opts.beta_max, 2e-9, &E_at);
    if (have) {
      acc.e[i] = (E_tb + n_sites * E_at) / n;
      acc.ok[i] = 1;
    }
  });
  acc.fill(&curve);
  return curve;
}

/// One-dimensional partitioning: 2L independent L-site rings at couplings
/// (t, U/2, mu/2), each matched to the full target density.
/// e(s) = E_1d(beta') / L per qubit. Full-spectrum ED caps at L <= 8.
inline BoundCurve onedim_curve(const HubbardSpec& spec, const SGrid& s_grid,
                               const BoundOptions& opts = {}) {
  spec.validate();
  if (spec.geometry != Geometry::Square2D_PBC)
    throw ConfigError("one-dim bound is defined on the square lattice");
  if (spec.L > 8)
    throw SizeError(format("one-dim bound needs the full ring spectrum; L=%d exceeds "
                           "the L <= 8 cap",
                           spec.L));
  BoundCurve curve;
  curve.kind = BoundKind::OneDim;
  curve.spec = spec;

  HubbardSpec ring;
  ring.L = spec.L;
  ring.geometry = Geometry::Ring1D;
  ring.t = spec.t;
  ring.U = spec.U / 2;
  ring.mu = spec.mu / 2;
  ring.l2_multiedge = spec.l2_multiedge;
  const SpectrumSet ring_spec =
      load_or_diagonalize(ring, opts.workers, opts.cache_dir, opts.max_sites);
  const ThermoModel model = spectrum_model(ring_spec);
  const bool flat =
      ring_spec.eigenvalues.back() - ring_spec.eigenvalues.front() < 1e-15;

  const std::vector<double> grid = s_grid.values();
  detail::GridAccum acc(grid);
  parallel_for(static_cast<int>(grid.size()), opts.workers, [&](int i) {
    double E1d = ring_spec.min_eigenvalue();
    bool have = true;
    if (!flat)
      have = detail::piece_energy(model, grid[i] * 2 * spec.L, opts.beta_max,
                                  1e-9 * 2 * spec.L, &E1d);
    if (have) {
      acc.e[i] = E1d / spec.L;
      acc.ok[i] = 1;
    }
  });
  acc.fill(&curve);
  return curve;
}

/// Plaquette partitioning: disjoint 2x2 open plaquettes at couplings
/// (t, U/2, mu/2); the curve depends only on the couplings, never on L.
/// e(s) = E_plaq(beta') / 4 per qubit. A proper lower bound needs the two
/// interleaved tilings to cover the lattice, hence even L >= 4; the curve
/// is still computable elsewhere for diagnostics (valid = false).
inline BoundCurve plaquette_curve(const HubbardSpec& spec, const SGrid& s_grid,
                                  const BoundOptions& opts = {}) {
  spec.validate();
  if (spec.geometry != Geometry::Square2D_PBC)
    throw ConfigError("plaquette bound is defined on the square lattice");
  BoundCurve curve;
  curve.kind = BoundKind::Plaq;
  curve.spec = spec;
  curve.valid = (spec.L >= 4 && spec.L % 2 == 0);
  if (!curve.valid)
    curve.notes.push_back("plaquette tiling needs even L >= 4; curve kept for "
                          "diagnostics only");

  HubbardSpec plaq;
  plaq.L = 2;
  plaq.geometry = Geometry::Plaquette2x2_OBC;
  plaq.t = spec.t;
  plaq.U = spec.U / 2;
  plaq.mu = spec.mu / 2;
  const SpectrumSet pspec =
      load_or_diagonalize(plaq, opts.workers, opts.cache_dir, opts.max_sites);
  const ThermoModel model = spectrum_model(pspec);
  const bool flat = pspec.eigenvalues.back() - pspec.eigenvalues.front() < 1e-15;

  const std::vector<double> grid = s_grid.values();
  detail::GridAccum acc(grid);
  parallel_for(static_cast<int>(grid.size()), opts.workers, [&](int i) {
    double E = pspec.min_eigenvalue();
    bool have = true;
    if (!flat)
      have = detail::piece_energy(model, grid[i] * 8, opts.beta_max, 8e-9, &E);
    if (have) {
      acc.e[i] = E / 4.0;
      acc.ok[i] = 1;
    }
  });
  acc.fill(&curve);
  return curve;
}

/// Exact Gibbs boundary by full diagonalization; N_sites <= 4 only.
inline BoundCurve exact_boundary(const HubbardSpec& spec, const BetaGrid& beta_grid,
                                 const BoundOptions& opts = {}) {
  spec.validate();
  if (spec.n_sites() > 4)
    throw SizeError(format("exact boundary needs the full 4^%d spectrum; capped at "
                           "N_sites <= 4",
                           spec.n_sites()));
  BoundCurve curve;
  curve.kind = BoundKind::Exact;
  curve.spec = spec;
  const SpectrumSet full =
      load_or_diagonalize(spec, opts.workers, opts.cache_dir, opts.max_sites);
  for (const GibbsPoint& p : gibbs_curve(full, beta_grid, opts.workers).points)
    curve.samples.push_back({p.s, p.e});
  return curve;
}

/// Pointwise max of the valid curves, sampled on s_grid over the union of
/// their ranges (each grid point takes the best bound defined there).
inline BoundCurve combine_curves(const std::vector<BoundCurve>& curves,
                                 const SGrid& s_grid) {
  std::vector<const BoundCurve*> in;
  for (const BoundCurve& c : curves)
    if (c.valid && !c.samples.empty()) in.push_back(&c);
  if (in.empty()) throw ConfigError("combination needs at least one valid curve");

  double common_lo = 0, common_hi = 1;
  for (const BoundCurve* c : in) {
    common_lo = std::max(common_lo, c->s_min());
    common_hi = std::min(common_hi, c->s_max());
  }
  if (common_lo > common_hi + 1e-12)
    throw ConfigError("curves share no common entropy range");

  BoundCurve out;
  out.kind = BoundKind::Combination;
  out.spec = in.front()->spec;
  for (double s : s_grid.values()) {
    double best = -std::numeric_limits<double>::infinity();
    bool have = false;
    for (const BoundCurve* c : in) {
      const double e = interp_e(*c, s);
      if (!std::isnan(e)) {
        best = std::max(best, e);
        have = true;
      }
    }
    if (have) out.samples.push_back({s, best});
  }
  return out;
}

}  // namespace fhbench

#endif  // FHBENCH_BOUNDS_HPP
