// Copyright 2026 The fhbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Lattice geometries and hopping-edge construction for the Fermi-Hubbard
// instances handled by this library: the L x L square lattice with periodic
// boundaries, the L-site ring, and the open 2x2 plaquette.

#ifndef FHBENCH_LATTICE_HPP
#define FHBENCH_LATTICE_HPP

#include <string>
#include <utility>
#include <vector>

#include "fhbench/common.hpp"

namespace fhbench {

enum class Geometry { Square2D_PBC, Ring1D, Plaquette2x2_OBC };

inline const char* geometry_name(Geometry g) {
  switch (g) {
    case Geometry::Square2D_PBC: return "square2d-pbc";
    case Geometry::Ring1D: return "ring1d";
    case Geometry::Plaquette2x2_OBC: return "plaquette2x2-obc";
  }
  return "?";
}

/// Problem instance: lattice plus couplings, t as the energy unit.
struct HubbardSpec {
  int L = 2;
  Geometry geometry = Geometry::Square2D_PBC;
  double t = 1.0;
  double U = 0.0;
  double mu = 0.0;
  /// L = 2 periodic lattices: keep the wrap edge that coincides with the
  /// direct edge (multiplicity 2, effective hopping 2t per geometric edge).
  bool l2_multiedge = true;

  int n_sites() const {
    switch (geometry) {
      case Geometry::Square2D_PBC: return L * L;
      case Geometry::Ring1D: return L;
      case Geometry::Plaquette2x2_OBC: return 4;
    }
    return 0;
  }
  int n_qubits() const { return 2 * n_sites(); }

  void validate() const {
    if (L < 1) throw ConfigError("L must be >= 1, got " + std::to_string(L));
    if (geometry == Geometry::Plaquette2x2_OBC && L != 2)
      throw ConfigError("plaquette geometry requires L = 2, got L = " + std::to_string(L));
    if (U < 0) throw ConfigError("U must be >= 0");
  }

  std::string describe() const {
    return format("%s L=%d t=%g U=%g mu=%g%s", geometry_name(geometry), L, t, U, mu,
                  (L == 2 && geometry != Geometry::Plaquette2x2_OBC && !l2_multiedge)
                      ? " simple-graph"
                      : "");
  }
};

/// Column-major snake site index: column x runs bottom-up when x is even
/// and top-down when x is odd, so consecutive indices are lattice
/// neighbours along the whole path.
inline int snake_index(int x, int y, int L) {
  return x * L + (x % 2 == 0 ? y : L - 1 - y);
}

/// One per-spin hopping edge; multiplicity 2 encodes the L = 2 wrap.
struct Edge {
  int i, j;
  int mult;
};

/// Classification of square-lattice edges, one count per hopping family.
struct EdgeTally {
  int vertical = 0;
  int horizontal = 0;
  int vertical_pbc = 0;
  int horizontal_pbc = 0;
};

struct EdgeList {
  std::vector<Edge> edges;
  EdgeTally tally;  // populated for Square2D only

  /// Hopping-term count per spin species, multiplicities included.
  int per_spin_count() const {
    int n = 0;
    for (const Edge& e : edges) n += e.mult;
    return n;
  }
};

/// Deterministic edge enumeration in snake-site indices.
/// Square2D: vertical (in-column) edges first per column, then horizontal;
/// wrap edges are distinct entries except at L = 2 where they merge into
/// multiplicity 2 (or are dropped when multiedge is off).
inline EdgeList build_edges(const HubbardSpec& spec) {
  spec.validate();
  EdgeList out;
  const int L = spec.L;
  auto add = [&out](int i, int j, int mult) {
    if (i > j) std::swap(i, j);
    out.edges.push_back({i, j, mult});
  };

  switch (spec.geometry) {
    case Geometry::Plaquette2x2_OBC:
      // 4-cycle; the snake order of the 2x2 block makes it index-consecutive.
      add(0, 1, 1);
      add(1, 2, 1);
      add(2, 3, 1);
      add(0, 3, 1);
      break;

    case Geometry::Ring1D: {
      if (L == 1) break;  // wrap would be a self loop; isolated site
      if (L == 2) {
        add(0, 1, spec.l2_multiedge ? 2 : 1);
        break;
      }
      for (int i = 0; i + 1 < L; ++i) add(i, i + 1, 1);
      add(0, L - 1, 1);
      break;
    }

    case Geometry::Square2D_PBC: {
      if (L == 1) break;
      if (L == 2) {
        const int m = spec.l2_multiedge ? 2 : 1;
        for (int x = 0; x < 2; ++x) {
          add(snake_index(x, 0, 2), snake_index(x, 1, 2), m);
          out.tally.vertical += 1;
        }
        for (int y = 0; y < 2; ++y) {
          add(snake_index(0, y, 2), snake_index(1, y, 2), m);
          out.tally.horizontal += 1;
        }
        break;
      }
      for (int x = 0; x < L; ++x) {
        for (int y = 0; y + 1 < L; ++y) {
          add(snake_index(x, y, L), snake_index(x, y + 1, L), 1);
          out.tally.vertical += 1;
        }
        add(snake_index(x, L - 1, L), snake_index(x, 0, L), 1);
        out.tally.vertical_pbc += 1;
      }
      for (int y = 0; y < L; ++y) {
        for (int x = 0; x + 1 < L; ++x) {
          add(snake_index(x, y, L), snake_index(x + 1, y, L), 1);
          out.tally.horizontal += 1;
        }
        add(snake_index(L - 1, y, L), snake_index(0, y, L), 1);
        out.tally.horizontal_pbc += 1;
      }
      break;
    }
  }
  return out;
}

}  // namespace fhbench

#endif  // FHBENCH_LATTICE_HPP
