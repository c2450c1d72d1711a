"""Regenerate the scenario preset files in src/hypermod/presets/.

Each preset targets the descriptors of one simulated scenario: node count,
mean numbers of size-2 and size-3 hyperedges, the within/cross ratio and
the cluster layout.  Run from the repository root:

    python3 tools/make_presets.py
"""
import json
import math
from pathlib import Path

import numpy as np

from hypermod.generators import dchsbm_p_for_rho, largest_remainder, solve_hsbm, within_fraction

OUT = Path(__file__).resolve().parents[1] / "src" / "hypermod" / "presets"
K = 3

HSBM = {  # scenario -> (n, E2, E3)
    "A": {1: (50, 198, 85), 2: (100, 397, 178), 3: (150, 592, 265), 4: (200, 795, 354),
          5: (500, 1990, 885)},
    "C": {1: (50, 227, 100), 2: (100, 460, 208), 3: (150, 690, 313), 4: (200, 929, 423),
          5: (500, 2319, 1063)},
}
DCHSBM = {  # scenario -> (rho, {case: (n, E2, E3)})
    "A": (1.7, {1: (50, 194, 89), 2: (100, 400, 174), 3: (150, 604, 263), 4: (200, 804, 345),
                5: (500, 2015, 860), 6: (1000, 4030, 1720)}),
    "B": (1.7, {1: (50, 554, 245), 2: (100, 1117, 483), 3: (150, 1680, 720),
                4: (200, 2242, 958), 5: (500, 5614, 2386), 6: (1000, 11198, 4802)}),
    "D": (1.7, {1: (50, 84, 199), 2: (100, 173, 402), 3: (150, 258, 607), 4: (200, 344, 805),
                5: (500, 860, 2015), 6: (1000, 1722, 4028)}),
    "E": (2.0, {1: (50, 195, 88), 2: (100, 403, 172), 3: (150, 605, 262), 4: (200, 805, 344),
                5: (500, 2008, 867), 6: (1000, 4040, 1710)}),
    "F": (1.4, {1: (50, 199, 84), 2: (100, 408, 167), 3: (150, 605, 262), 4: (200, 811, 334),
                5: (500, 2004, 871), 6: (1000, 4024, 1726)}),
}
HABCD_A = {1: 50, 2: 100, 3: 150, 4: 200, 5: 500, 6: 1000}
HABCD_Z = {1: (100, 49, 18), 2: (150, 72, 27), 3: (200, 96, 37), 4: (500, 239, 94),
           5: (1000, 478, 187)}
LABELS = {"A": "base case", "B": "less sparse", "C": "unbalanced clusters",
          "D": "more size-3 than size-2 hyperedges", "E": "larger within/cross ratio",
          "F": "smaller within/cross ratio", "Z": "default-style h-ABCD"}


def power_law_sizes(n, exponent, s_min, s_max, seed):
    """Cluster sizes from a truncated power law, the last one absorbing the remainder."""
    rng = np.random.default_rng(seed)
    support = np.arange(s_min, s_max + 1)
    prob = support.astype(float) ** -exponent
    prob /= prob.sum()
    sizes = []
    while n - sum(sizes) >= 2 * s_min:
        sizes.append(int(min(rng.choice(support, p=prob), n - sum(sizes) - s_min)))
    sizes.append(n - sum(sizes))
    return sorted(sizes, reverse=True)


def write(cfg):
    (OUT / f"{cfg['id']}.json").write_text(json.dumps(cfg, indent=2) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for f in OUT.glob("*.json"):
        f.unlink()
    for scen, cases in HSBM.items():
        pi = [1 / 6, 1 / 3, 1 / 2] if scen == "C" else None
        for case, (n, e2, e3) in cases.items():
            p = solve_hsbm(n, K, {2: 1.7, 3: 1.7}, {2: e2, 3: e3}, pi=pi)
            write({"id": f"Scen{scen}-HSBM-{scen}{case}", "model": "hsbm",
                   "notes": f"{LABELS[scen]}; K=3, rho_s=1.7, expected |E_2|={e2}, |E_3|={e3}",
                   "params": {"n": n, "K": K, "pi": p.pi,
                              "alpha": {str(s): v for s, v in p.alpha.items()},
                              "beta": {str(s): v for s, v in p.beta.items()}}})
    for scen, (rho, cases) in DCHSBM.items():
        for case, (n, e2, e3) in cases.items():
            p = {str(s): dchsbm_p_for_rho(rho, within_fraction(n, K, s)) for s in (2, 3)}
            write({"id": f"Scen{scen}-DCHSBM-{scen}{case}", "model": "dchsbm",
                   "notes": f"{LABELS[scen]}; K=3 balanced, expected rho_s={rho}, "
                            f"|E_2|={e2}, |E_3|={e3}",
                   "params": {"n": n, "K": K, "p": p,
                              "edges_per_size": {"2": e2, "3": e3}}})
    for case, n in HABCD_A.items():
        write({"id": f"ScenA-hABCD-A{case}", "model": "habcd",
               "notes": "base case; strict setting, xi chosen for rho_s=1.7, |E_2|=3|E_3|, "
                        "power-law degrees gamma=2.07 on [1, 32]",
               "params": {"n": n, "cluster_sizes": largest_remainder(n, [1, 1, 1]),
                          "q": {"2": 0.75, "3": 0.25}, "xi": 1 / 2.7, "setting": "strict",
                          "gamma": 2.07, "d_min": 1, "d_max": 32}})
    for case, (n, e2, e3) in HABCD_Z.items():
        write({"id": f"ScenZ-hABCD-Z{case}", "model": "habcd",
               "notes": "default-style h-ABCD; linear setting, power-law degrees gamma=2.5 "
                        "on [1, 10], power-law cluster sizes (exponent 1.5)",
               "params": {"n": n,
                          "cluster_sizes": power_law_sizes(n, 1.5, 10, max(10, n // 4), 1000 + case),
                          "q": {"2": round(e2 / (e2 + e3), 4), "3": round(1 - e2 / (e2 + e3), 4)},
                          "xi": 0.3, "setting": "linear", "gamma": 2.5, "d_min": 1, "d_max": 10}})


if __name__ == "__main__":
    main()
