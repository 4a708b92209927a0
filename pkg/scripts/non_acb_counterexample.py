#!/usr/bin/env python3
"""End-to-end walk through the complex balanced but not absolutely complex
balanced power-law system: structure, order matrices, equilibria, verdict.

Run: python3 scripts/non_acb_counterexample.py
"""

import numpy as np

import crnbalance as cb


def main():
    net = cb.build_network(
        ["A1", "A2", "A3"],
        [[2, 2, 2], [0, 3, 3], [4, 1, 1], [6, 0, 0]],
        [(0, 1, "r1"), (1, 0, "r2"), (1, 2, "r3"), (2, 3, "r4"), (3, 0, "r5")],
    )
    kin = cb.power_law(
        [[0, -1, 1], [-1, -1, 1], [-1, -1, 1], [0, -2, 0], [0, 0, -2]],
        ["1", "1", "1", "1", "3/2"],
    )
    inv = cb.structural_invariants(net)
    print("== structure ==")
    print(f"complexes {inv.n}, reactions {inv.r}, linkage classes {inv.l}")
    print(f"rank S = {inv.s}, deficiency = {inv.delta}, "
          f"weakly reversible = {inv.weakly_reversible}")

    t = cb.build_t_matrices(net, kin)
    print("\n== kinetic order matrices ==")
    print("T-hat =")
    for row in t.that:
        print("   " + "  ".join(f"{v:5.1f}" for v in row))
    print(f"rank T-hat = {t.q_hat} (exact), kinetic reactant deficiency = "
          f"{t.delta_hat}, maximal rank: {cb.is_pl_tik(t)}")
    sub = cb.kinetic_order_subspace(t, net)
    print(f"kinetic order subspace dim = {sub.dim} (stoichiometric rank {inv.s})")

    system = cb.KineticSystem(net, kin)
    cfg = cb.SolveConfig()
    analysis = cb.analyze_acb(system, cfg)
    print("\n== equilibria ==")
    print(f"positive equilibria found: {len(analysis.e_points)}")
    ones = [p for p in analysis.e_points if np.max(np.abs(p.x - 1)) < 1e-9]
    if ones:
        p = ones[0]
        print(f"the all-ones state is a positive equilibrium: "
              f"sfrf {p.sfrf_residual:.1e}, cfrf {p.cfrf_residual:.3f} "
              f"(not complex balanced)")
    for p in analysis.z_points:
        print(f"complex balanced point: ({', '.join(f'{v:.6f}' for v in p.x)})")

    print("\n== kinetic image span ==")
    k = analysis.kse
    print(f"r - s = {k.r_minus_s}, sampled span = {k.sampled_span_dim}, "
          f"dim ker Ia = {k.incidence_kernel_dim}")
    print("(rows r2 and r3 share rate and orders, so the span caps at 3; "
          "3 > dim ker Ia still settles the question)")

    verdict = cb.acb_verdict(analysis, cfg)
    print("\n== verdict ==")
    print(verdict.status)
    for c in verdict.justification:
        print(f"  [{c.rule}] {c.statement}")


if __name__ == "__main__":
    main()
