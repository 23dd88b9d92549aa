// Copyright 2026 The fhbench Authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "fhbench/bounds.hpp"

using namespace fhbench;

namespace {

HubbardSpec square(int L, double U, double mu) {
  HubbardSpec s;
  s.L = L;
  s.geometry = Geometry::Square2D_PBC;
  s.U = U;
  s.mu = mu;
  return s;
}

/// Exact boundary energy at entropy density s, by direct inversion of the
/// full spectrum (no beta-grid interpolation).
double exact_e_at(const SpectrumSet& spec, double s) {
  return entropy_to_beta(spec, s * spec.n_qubits).at.E / spec.n_qubits;
}

}  // namespace

TEST_CASE("tight-binding closed form matches diagonalization") {
  const SpectrumSet ed = diagonalize(build_sector_blocks(square(2, 0.0, 0.0)));
  const ModeDispersion disp = square_dispersion(2, 1.0);
  for (double beta : BetaGrid{1e-4, 200, 60}.values()) {
    const GibbsPoint p = gibbs_point(ed, beta);
    const ThermoEval q = tb_gibbs(disp, beta);
    CHECK(std::abs(p.E - q.E) <= 1e-10);
    CHECK(std::abs(p.S_bits - q.S_bits) <= 1e-10);
  }
  // dispersion of the doubled L=2 graph: {-4, 0, 0, 4} with 2t bonds
  REQUIRE(disp.epsilons.size() == 4);
  CHECK(disp.epsilons.front() == Catch::Approx(-4.0).margin(1e-13));
  CHECK(disp.epsilons.back() == Catch::Approx(4.0).margin(1e-13));
  CHECK(tb_plateau_bits(disp) == Catch::Approx(4.0).margin(1e-13));  // two zero modes
}

TEST_CASE("atomic closed form matches a single-site diagonalization") {
  HubbardSpec site;
  site.L = 1;
  site.geometry = Geometry::Ring1D;
  site.U = 4.0;
  site.mu = 1.0;
  const SpectrumSet ed = diagonalize(build_sector_blocks(site));
  for (double beta : BetaGrid{1e-4, 200, 60}.values()) {
    const GibbsPoint p = gibbs_point(ed, beta);
    const ThermoEval q = atomic_gibbs(site.mu, site.U, beta);
    CHECK(std::abs(p.E - q.E) <= 1e-10);
    CHECK(std::abs(p.S_bits - q.S_bits) <= 1e-10);
  }
}

TEST_CASE("all bounds share the infinite-temperature anchor") {
  const HubbardSpec spec = square(2, 3.0, 0.7);
  const double want = (spec.U / 4 - spec.mu) / 2;
  const SGrid top{1.0, 1.0, 1};
  for (const BoundCurve& c : {phenom_curve(spec, top), onedim_curve(spec, top),
                              plaquette_curve(spec, top)}) {
    REQUIRE(!c.samples.empty());
    CHECK(c.samples.back().e == Catch::Approx(want).margin(1e-9));
  }
}

TEST_CASE("bounds never exceed the exact boundary at L=2") {
  const SGrid grid{0.1, 1.0, 46};
  for (double U : {1.0, 5.0}) {
    const HubbardSpec spec = square(2, U, U / 2);
    const SpectrumSet full = diagonalize(build_sector_blocks(spec));
    for (const BoundCurve& c : {phenom_curve(spec, grid), onedim_curve(spec, grid)}) {
      for (const BoundSample& p : c.samples)
        CHECK(p.e <= exact_e_at(full, p.s) + 1e-9);
    }
  }
}

TEST_CASE("at U = 0 the phenom bound is the exact boundary") {
  const HubbardSpec spec = square(2, 0.0, 0.0);
  const SpectrumSet full = diagonalize(build_sector_blocks(spec));
  const BoundCurve c = phenom_curve(spec, SGrid{0.55, 1.0, 10});
  REQUIRE(!c.samples.empty());
  for (const BoundSample& p : c.samples)
    CHECK(p.e == Catch::Approx(exact_e_at(full, p.s)).margin(1e-8));
}

TEST_CASE("plaquette bound is independent of L") {
  const SGrid grid{0.3, 1.0, 50};
  const BoundCurve a = plaquette_curve(square(4, 4.0, 2.0), grid);
  const BoundCurve b = plaquette_curve(square(8, 4.0, 2.0), grid);
  CHECK(a.valid);
  CHECK(b.valid);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].s == b.samples[i].s);  // bitwise: same arithmetic path
    CHECK(a.samples[i].e == b.samples[i].e);
  }
}

TEST_CASE("plaquette tiling validity") {
  const SGrid grid{0.5, 1.0, 6};
  CHECK_FALSE(plaquette_curve(square(2, 4.0, 2.0), grid).valid);
  CHECK_FALSE(plaquette_curve(square(5, 4.0, 2.0), grid).valid);
  CHECK(plaquette_curve(square(6, 4.0, 2.0), grid).valid);
  CHECK(!plaquette_curve(square(2, 4.0, 2.0), grid).notes.empty());
}

TEST_CASE("one-dim bound refuses rings beyond the spectrum cap") {
  CHECK_THROWS_AS(onedim_curve(square(9, 4.0, 2.0), SGrid{0.5, 1.0, 2}), SizeError);
}

TEST_CASE("frozen anchor: plaquette bound at the case-study point") {
  // equals the exact L=2 boundary there: the L=2 torus is two plaquettes
  // at halved couplings
  const BoundCurve c = plaquette_curve(square(8, 4.0, 2.0), SGrid{0.69, 0.69, 1});
  REQUIRE(c.samples.size() == 1);
  CHECK(c.samples[0].e == Catch::Approx(-1.433874022347).margin(1e-9));

  const HubbardSpec l2 = square(2, 4.0, 2.0);
  const SpectrumSet full = diagonalize(build_sector_blocks(l2));
  CHECK(exact_e_at(full, 0.69) == Catch::Approx(-1.433874022347).margin(1e-9));
}

TEST_CASE("plateau-limited grid points are dropped with a note") {
  // mu = 0, U = 4: the atomic piece plateaus at log2(3) bits per site, so
  // phenom targets below s = log2(3)/2 have no matched atomic state
  const BoundCurve c = phenom_curve(square(4, 4.0, 0.0), SGrid{0.5, 1.0, 101});
  CHECK(c.dropped > 0);
  REQUIRE(!c.samples.empty());
  CHECK(c.samples.front().s >= std::log2(3.0) / 2 - 1e-6);
  REQUIRE(!c.notes.empty());
  CHECK(c.notes.front().find("dropped") != std::string::npos);
}

TEST_CASE("fully degenerate pieces impose no entropy restriction") {
  // U = mu = 0: the atomic spectrum is {0,0,0,0}. Matching it against any
  // positive target would throw, so only the carve-out keeps these samples.
  // Grid stays above the kinetic plateau (6 zero modes at L=4: s >= 0.375).
  const BoundCurve c = phenom_curve(square(4, 0.0, 0.0), SGrid{0.4, 1.0, 13});
  CHECK(c.dropped == 0);
  CHECK(c.samples.size() == 13);
}

TEST_CASE("exact boundary caps at four sites") {
  CHECK_THROWS_AS(exact_boundary(square(4, 4.0, 2.0), BetaGrid{}), SizeError);
  const BoundCurve c = exact_boundary(square(2, 4.0, 2.0), BetaGrid{});
  CHECK(c.kind == BoundKind::Exact);
  CHECK(c.samples.size() >= 100);
}

TEST_CASE("interp_e clamps inside and returns NaN outside") {
  BoundCurve c;
  c.samples = {{0.2, -1.0}, {0.4, -0.5}, {0.8, 0.3}};
  CHECK(std::isnan(interp_e(c, 0.1)));
  CHECK(std::isnan(interp_e(c, 0.9)));
  CHECK(interp_e(c, 0.2) == -1.0);
  CHECK(interp_e(c, 0.3) == Catch::Approx(-0.75));
  CHECK(interp_e(c, 0.8) == 0.3);
}

TEST_CASE("combine takes the pointwise best over the union of domains") {
  BoundCurve a;
  a.kind = BoundKind::Phenom;
  a.samples = {{0.2, -2.0}, {1.0, 0.0}};
  BoundCurve b;
  b.kind = BoundKind::OneDim;
  b.samples = {{0.5, -1.2}, {1.0, -0.1}};
  const SGrid grid{0.2, 1.0, 17};

  const BoundCurve comb = combine_curves({a, b}, grid);
  CHECK(comb.kind == BoundKind::Combination);
  CHECK(comb.samples.front().s == Catch::Approx(0.2));  // union, not intersection
  for (const BoundSample& p : comb.samples) {
    const double ea = interp_e(a, p.s);
    const double eb = interp_e(b, p.s);
    double want = -std::numeric_limits<double>::infinity();
    if (!std::isnan(ea)) want = std::max(want, ea);
    if (!std::isnan(eb)) want = std::max(want, eb);
    CHECK(p.e == Catch::Approx(want).margin(1e-12));
  }

  SECTION("single curve passes through") {
    const BoundCurve solo = combine_curves({a}, grid);
    for (const BoundSample& p : solo.samples)
      CHECK(p.e == Catch::Approx(interp_e(a, p.s)).margin(1e-12));
  }
  SECTION("invalid curves are excluded") {
    BoundCurve bad = b;
    bad.valid = false;
    const BoundCurve solo = combine_curves({a, bad}, grid);
    for (const BoundSample& p : solo.samples)
      CHECK(p.e == Catch::Approx(interp_e(a, p.s)).margin(1e-12));
  }
  SECTION("no valid curve is an error") {
    BoundCurve bad = a;
    bad.valid = false;
    CHECK_THROWS_AS(combine_curves({bad}, grid), ConfigError);
  }
  SECTION("disjoint ranges are an error") {
    BoundCurve low;
    low.samples = {{0.1, -1.0}, {0.3, -0.8}};
    BoundCurve high;
    high.samples = {{0.6, -0.5}, {0.9, -0.2}};
    CHECK_THROWS_AS(combine_curves({low, high}, grid), ConfigError);
  }
}

TEST_CASE("bound curves are nondecreasing in s") {
  const SGrid grid{0.3, 1.0, 36};
  const HubbardSpec spec = square(4, 4.0, 2.0);
  for (const BoundCurve& c : {phenom_curve(spec, grid), onedim_curve(spec, grid),
                              plaquette_curve(spec, grid)}) {
    for (std::size_t i = 1; i < c.samples.size(); ++i)
      CHECK(c.samples[i].e >= c.samples[i - 1].e - 1e-12);
  }
}

TEST_CASE("worker count does not change bound curves") {
  const SGrid grid{0.4, 1.0, 25};
  const HubbardSpec spec = square(4, 4.0, 2.0);
  BoundOptions serial;
  serial.workers = 1;
  BoundOptions threaded;
  threaded.workers = 4;
  const BoundCurve a = onedim_curve(spec, grid, serial);
  const BoundCurve b = onedim_curve(spec, grid, threaded);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    CHECK(a.samples[i].e == b.samples[i].e);
}
