"""Summarize the Out(S) verdicts per family type and list the exceptions.

    python3 scripts/outer_table.py --n-max 8 --q-max 32
"""

import argparse
from collections import Counter, defaultdict
from dataclasses import dataclass

from bgroups.out_data import ROWS, cyclic_mod_r_verdict, explicit_out_group_crosscheck, table_rows


@dataclass
class TableConfig:
    n_max: int = 8
    q_max: int = 32


def main(cfg: TableConfig):
    by_type = defaultdict(Counter)
    degenerate = []
    for p in table_rows(n_max=cfg.n_max, q_max=cfg.q_max):
        v = cyclic_mod_r_verdict(p)
        by_type[p.family_type][v.verdict] += 1
        if v.verdict == "exception" and p.family_type == 2 and 2 * p.d * p.f_part <= 400:
            if explicit_out_group_crosscheck(p):
                degenerate.append(p.name)
    print(f"{'type':>4}  {'row':<6} {'yes':>5} {'exception':>9}")
    for t in sorted(by_type):
        c = by_type[t]
        print(f"{t:>4}  {ROWS[t].label:<6} {c['yes']:>5} {c['exception']:>9}")
    # type-2 rows whose explicit Out(S) is nevertheless hypo-elementary
    print(f"\ntype 2 rows with hypo-elementary D x C (kept as exceptions): {len(degenerate)}")
    print(" ".join(degenerate))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=TableConfig.n_max)
    ap.add_argument("--q-max", type=int, default=TableConfig.q_max)
    a = ap.parse_args()
    main(TableConfig(a.n_max, a.q_max))
