// Copyright 2026 The fhbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Symmetry-sector-blocked Hubbard Hamiltonians in the occupation-number
// basis. Spin-orbital ordering: up orbitals 0..N_sites-1 followed by down
// orbitals N_sites..2N_sites-1. With that ordering a same-spin hop between
// orbitals p < q picks up the parity of the occupations strictly between
// p and q within its own spin block only, so independent chains and
// plaquettes compose without cross-spin sign strings.

#ifndef FHBENCH_HUBBARD_HPP
#define FHBENCH_HUBBARD_HPP

#include <armadillo>
#include <bit>
#include <cstdint>
#include <vector>

#include "fhbench/lattice.hpp"

namespace fhbench {

/// One (n_up, n_down) invariant block. Basis state a*dim_down + b pairs
/// the a-th up configuration with the b-th down configuration; both config
/// lists are ascending as integers. The packed bitstring is
/// up_mask | (down_mask << N_sites).
struct SectorBlock {
  int n_up = 0;
  int n_down = 0;
  std::vector<std::uint32_t> basis;
  arma::mat matrix;
};

namespace detail {

inline std::vector<std::uint32_t> configs_with_count(int n_sites, int count) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < (1u << n_sites); ++c)
    if (std::popcount(c) == count) out.push_back(c);
  return out;  // ascending by construction
}

/// Hop amplitude entries (row config index, col config index, value) for a
/// single spin species. The sign is the fermionic string between the two
/// orbitals: parity of occupied orbitals strictly inside (min, max).
struct HopEntry {
  int from, to;
  double value;
};

inline std::vector<HopEntry> hop_entries(const std::vector<std::uint32_t>& configs,
                                         const EdgeList& edges, double t) {
  std::vector<HopEntry> out;
  std::vector<int> index(configs.empty() ? 0 : configs.back() + 1, -1);
  for (int a = 0; a < static_cast<int>(configs.size()); ++a) index[configs[a]] = a;
  for (int a = 0; a < static_cast<int>(configs.size()); ++a) {
    const std::uint32_t c = configs[a];
    for (const Edge& e : edges.edges) {
      for (const auto& [src, dst] : {std::pair{e.i, e.j}, std::pair{e.j, e.i}}) {
        if (!((c >> src) & 1u) || ((c >> dst) & 1u)) continue;
        const std::uint32_t c2 = c ^ (1u << src) ^ (1u << dst);
        const int lo = std::min(src, dst), hi = std::max(src, dst);
        const std::uint32_t between = (((1u << hi) - 1u) ^ ((1u << (lo + 1)) - 1u));
        const int sign = (std::popcount(c & between) % 2 == 0) ? 1 : -1;
        out.push_back({a, index[c2], -t * e.mult * sign});
      }
    }
  }
  return out;
}

}  // namespace detail

/// Build every (n_up, n_down) block of H = -t sum c+c + U sum n.n - mu N.
/// The default cap bounds the full-spectrum workload (4^N_sites states).
inline std::vector<SectorBlock> build_sector_blocks(const HubbardSpec& spec,
                                                    int max_sites = 8) {
  spec.validate();
  const int ns = spec.n_sites();
  if (ns > max_sites)
    throw SizeError(format(
        "instance %s has N_sites=%d (4^%d = %.3g states); cap is N_sites <= %d",
        spec.describe().c_str(), ns, ns, std::pow(4.0, ns), max_sites));

  const EdgeList edges = build_edges(spec);
  std::vector<std::vector<std::uint32_t>> by_count(ns + 1);
  for (int k = 0; k <= ns; ++k) by_count[k] = detail::configs_with_count(ns, k);

  std::vector<SectorBlock> blocks;
  blocks.reserve((ns + 1) * (ns + 1));
  for (int nup = 0; nup <= ns; ++nup) {
    const auto& ups = by_count[nup];
    const auto up_hops = detail::hop_entries(ups, edges, spec.t);
    for (int ndn = 0; ndn <= ns; ++ndn) {
      const auto& dns = by_count[ndn];
      const auto dn_hops = detail::hop_entries(dns, edges, spec.t);
      const int du = static_cast<int>(ups.size());
      const int dd = static_cast<int>(dns.size());

      SectorBlock blk;
      blk.n_up = nup;
      blk.n_down = ndn;
      blk.basis.reserve(static_cast<std::size_t>(du) * dd);
      blk.matrix.zeros(static_cast<std::size_t>(du) * dd, static_cast<std::size_t>(du) * dd);

      for (int a = 0; a < du; ++a)
        for (int b = 0; b < dd; ++b) {
          blk.basis.push_back(ups[a] | (dns[b] << ns));
          const int doubly = std::popcount(ups[a] & dns[b]);
          blk.matrix(a * dd + b, a * dd + b) = -spec.mu * (nup + ndn) + spec.U * doubly;
        }
      for (const auto& h : up_hops)
        for (int b = 0; b < dd; ++b)
          blk.matrix(h.from * dd + b, h.to * dd + b) += h.value;
      for (const auto& h : dn_hops)
        for (int a = 0; a < du; ++a)
          blk.matrix(a * dd + h.from, a * dd + h.to) += h.value;

      blocks.push_back(std::move(blk));
    }
  }
  return blocks;
}

/// Largest |H - H^T| entry; the occupation basis makes H exactly symmetric,
/// so anything above 1e-12 indicates a construction bug.
inline double max_asymmetry(const SectorBlock& blk) {
  return arma::abs(blk.matrix - blk.matrix.t()).max();
}

}  // namespace fhbench

#endif  // FHBENCH_HUBBARD_HPP
