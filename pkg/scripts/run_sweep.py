"""Tabulate beta(G) and the B-group flags over the catalogue sweep.

    python3 scripts/run_sweep.py --max-order 100 > sweep.tsv
"""

import argparse
import sys
import time
from dataclasses import dataclass

from bgroups.bgroup import beta, is_b_group
from bgroups.catalogue import identify, sweep
from bgroups.lattice import all_subgroups, normal_subgroups
from bgroups.perm_core import is_nilpotent, is_solvable


@dataclass
class SweepConfig:
    max_order: int = 100
    progress: bool = False


def main(cfg: SweepConfig):
    print("\t".join(["group", "order", "subgroups", "normal", "b_group", "beta", "beta_order",
                     "nilpotent", "beta_nilpotent", "solvable", "beta_solvable"]))
    t0 = time.perf_counter()
    for G in sweep(cfg.max_order):
        L = all_subgroups(G)
        B = beta(G).beta_group
        row = [G.name, G.order, len(L), len(normal_subgroups(L)), is_b_group(G), identify(B), B.order,
               is_nilpotent(G), is_nilpotent(B), is_solvable(G), is_solvable(B)]
        print("\t".join(map(str, row)))
        if cfg.progress:
            print(f"{G.name} done at {time.perf_counter() - t0:.1f}s", file=sys.stderr)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=SweepConfig.max_order)
    ap.add_argument("--progress", action="store_true")
    a = ap.parse_args()
    main(SweepConfig(a.max_order, a.progress))
