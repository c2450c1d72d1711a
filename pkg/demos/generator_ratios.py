"""Compare analytic and observed within/cross ratios for the three generators.

Run: python3 demos/generator_ratios.py [draws]
"""
import sys
from collections import Counter

from hypermod.generators import (DchsbmParams, HabcdParams, dchsbm_expected_rho,
                                 dchsbm_p_for_rho, empirical_rho, gen_dchsbm, gen_habcd,
                                 gen_hsbm, hsbm_diagnostics, solve_hsbm, within_fraction)

draws = int(sys.argv[1]) if len(sys.argv) > 1 else 50
target = 1.7


def pooled_ratio(samples):
    within, cross = Counter(), Counter()
    for H, P in samples:
        w, c = empirical_rho(H, P)
        within.update(w)
        cross.update(c)
    return {s: within[s] / cross[s] for s in sorted(within) if cross[s]}


hsbm = solve_hsbm(100, 3, {2: target, 3: target}, {2: 397, 3: 178})
print("HSBM analytic rho:", hsbm_diagnostics(hsbm)[0])
print("HSBM observed rho:", pooled_ratio(gen_hsbm(hsbm, seed) for seed in range(draws)))

p = {s: dchsbm_p_for_rho(target, within_fraction(100, 3, s)) for s in (2, 3)}
dch = DchsbmParams(n=100, K=3, p=p, edges_per_size={2: 400, 3: 174})
print("DCHSBM placement probabilities:", {s: round(v, 4) for s, v in p.items()})
print("DCHSBM expected rho:", {s: dchsbm_expected_rho(dch, s) for s in (2, 3)})
print("DCHSBM observed rho:", pooled_ratio(gen_dchsbm(dch, seed) for seed in range(draws)))

# in the strict setting every homogeneous edge is a within-cluster edge,
# so xi = 1/(1 + rho) targets the same ratio
habcd = HabcdParams(n=150, cluster_sizes=[50, 50, 50], q={2: 0.75, 3: 0.25},
                    xi=1 / (1 + target), setting="strict", gamma=2.5, d_min=2, d_max=20)
print("h-ABCD observed rho:", pooled_ratio(gen_habcd(habcd, seed) for seed in range(draws)))
