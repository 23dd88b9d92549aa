// Copyright 2026 The fhbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Walkthrough of the headline calculation at L = 8, U/t = 4, half filling:
// bound the Gibbs boundary with the plaquette partition, find the entropy
// density where it crosses a classical reference energy, and translate that
// density into CNOT and layer budgets for two ansatz families.

#include <cstdio>

#include "fhbench/benchmark.hpp"
#include "fhbench/bounds.hpp"
#include "fhbench/noise.hpp"

int main() {
  fhbench::HubbardSpec spec;
  spec.L = 8;
  spec.U = 4.0;
  spec.mu = spec.U / 2;  // half filling

  // Lower bound on the exact boundary from disjoint 2x2 plaquettes at U/2.
  // The curve is independent of L for any even L >= 4.
  const fhbench::SGrid grid{0.05, 1.0, 951};
  const fhbench::BoundCurve plaq = fhbench::plaquette_curve(spec, grid, {});
  std::printf("plaq bound: %zu samples, e(s) from %.6f to %.6f t per qubit\n",
              plaq.samples.size(), plaq.e_min(), plaq.e_max());

  // Classical reference energy for U/t = 4 at half filling, per qubit.
  const double e_class = -1.43;
  const fhbench::ThresholdResult th = fhbench::solve_threshold(plaq, e_class);
  std::printf("e_class = %.2f t: advantage is lost above s_th = %.4f bits/qubit\n",
              e_class, th.s_th);

  // Depolarizing noise turns the threshold into a CNOT budget for n qubits.
  const int n = spec.n_qubits();
  std::printf("\n%-10s %12s %12s %12s   (n = %d, ref N_layers = L^2 = %d)\n",
              "p2", "N2_max", "hva layers", "ldca layers", n, spec.L * spec.L);
  for (double p2 : {1e-4, 3e-4, 1e-3}) {
    const fhbench::CnotBudget b = fhbench::max_cnot_count({n, p2, th.s_th});
    std::printf("%-10.1e %12lld %12lld %12lld\n", p2, b.N2_max,
                fhbench::max_layers({fhbench::AnsatzFamily::HVA, spec.L}, b.N2_max),
                fhbench::max_layers({fhbench::AnsatzFamily::LDCA, spec.L}, b.N2_max));
  }

  // Noise level needed to reach a depth proportional to the lattice size.
  const double p2_star = fhbench::layers_transition_p2(
      {fhbench::AnsatzFamily::HVA, spec.L}, th.s_th, spec.L * spec.L);
  std::printf("\n%d HVA layers fit only for p2 <= %.3g\n", spec.L * spec.L, p2_star);
  return 0;
}
