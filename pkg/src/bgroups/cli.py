"""Command line: ``bgroups analyze|beta|verify|outer``.

Exit codes: 0 pass, 1 property failure, 2 usage or parse error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

from . import lattice
from .bgroup import beta, is_b_group, m_value, prime_divisors
from .catalogue import LatticeCache, construct, identify
from .errors import CapExceeded, ConditionViolated, ParseError
from .lattice import all_subgroups, normal_subgroups
from .out_data import (
    SPORADIC_OUT,
    TSV_COLUMNS,
    alternating_params,
    cyclic_mod_r_verdict,
    sporadic_params,
    table_rows,
    tsv_row,
)
from .perm_core import (
    LIMITS,
    is_cyclic,
    is_hypo_elementary,
    is_nilpotent,
    is_p_hypo_elementary,
    is_solvable,
)
from .verify import SUITES, run_suite


def frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass
class AnalysisReport:
    spec: str
    order: int
    subgroup_count: int
    normal_subgroup_count: int
    m_table: list
    is_b_group: bool
    beta_spec: str
    beta_order: int
    flags: dict

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)


def analyze(spec: str) -> AnalysisReport:
    G = construct(spec)
    L = all_subgroups(G)
    normals = normal_subgroups(L)
    m_table = [{"index": L.position(N), "order": N.order, "m": frac(m_value(G, N))} for N in normals]
    B = beta(G).beta_group
    hypo, witness = is_hypo_elementary(G)
    flags = {
        "cyclic": is_cyclic(G),
        "nilpotent": is_nilpotent(G),
        "solvable": is_solvable(G),
        "hypo_elementary": hypo,
        "hypo_elementary_prime": witness,
        "p_hypo_elementary": {str(p): is_p_hypo_elementary(G, p) for p in prime_divisors(G.order)},
        "beta_nilpotent": is_nilpotent(B),
        "beta_solvable": is_solvable(B),
    }
    return AnalysisReport(G.name, G.order, len(L), len(normals), m_table,
                          is_b_group(G), identify(B), B.order, flags)


def _print_report(rep: AnalysisReport):
    print(f"group            {rep.spec}")
    print(f"order            {rep.order}")
    print(f"subgroups        {rep.subgroup_count}")
    print(f"normal subgroups {rep.normal_subgroup_count}")
    print("m(G,N):")
    print(f"  {'index':>6} {'|N|':>6}  m")
    for row in rep.m_table:
        print(f"  {row['index']:>6} {row['order']:>6}  {Fraction(row['m'])}")
    print(f"B-group          {rep.is_b_group}")
    print(f"beta(G)          {rep.beta_spec} (order {rep.beta_order})")
    for k, v in rep.flags.items():
        print(f"{k:<16} {v}")


def cmd_analyze(args) -> int:
    rep = analyze(args.spec)
    if args.json:
        print(rep.to_json())
    else:
        _print_report(rep)
    return 0


def cmd_beta(args) -> int:
    G = construct(args.spec)
    res = beta(G)
    doc = {
        "spec": G.name,
        "beta": identify(res.beta_group),
        "beta_order": res.beta_group.order,
        "kernel_order": res.kernel.order,
        "certificate": [{"order": N.order, "m": frac(m)} for N, m in res.certificate],
        "chain": [{"group_order": s.group.order, "kernel_order": s.kernel.order, "m": frac(s.m)}
                  for s in res.chain],
    }
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(f"beta({G.name}) = {doc['beta']}  (kernel of order {res.kernel.order})")
        for step in doc["chain"]:
            print(f"  |G|={step['group_order']}: quotient by minimal normal of order "
                  f"{step['kernel_order']}, m = {Fraction(step['m'])}")
    return 0


def cmd_verify(args) -> int:
    if args.max_order > LIMITS.order_cap:
        print(f"max order {args.max_order} exceeds cap {LIMITS.order_cap}", file=sys.stderr)
        return 3
    results = run_suite(args.suite, args.max_order)
    for r in results:
        print(r.line())
        for n in r.notes:
            print(f"    {n}")
        for f in r.failures:
            print(f"    counterexample: {f}")
    return 0 if all(r.passed for r in results) else 1


def parse_range(text: str) -> list[int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"malformed range {text!r}; use N or A..B")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def cmd_outer(args) -> int:
    rows = []
    lie = args.type is not None or (args.alternating is None and not args.sporadic)
    if lie:
        types = None if args.type is None else [args.type]
        if args.type is not None and not 1 <= args.type <= 20:
            print(f"no table row of type {args.type}", file=sys.stderr)
            return 2
        ns = args.n if args.n is not None else list(range(1, 9))
        qs = args.q if args.q is not None else list(range(2, 33))
        rows += table_rows(types=types, n_values=ns, q_values=qs)
    if args.alternating is not None or (args.type is None and not args.sporadic):
        rows += [alternating_params(n) for n in (args.alternating or range(5, 11)) if n >= 5]
    if args.sporadic or (args.type is None and args.alternating is None):
        rows += [sporadic_params(name) for name in SPORADIC_OUT]
    if args.exceptions_only:
        rows = [r for r in rows if cyclic_mod_r_verdict(r).verdict == "exception"]
    print("\t".join(TSV_COLUMNS))
    for r in rows:
        print(tsv_row(r))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bgroups", description=__doc__.splitlines()[0])
    ap.add_argument("--cap", type=int, default=None, help="group order cap (default 400)")
    ap.add_argument("--no-cache", action="store_true", help="do not use the on-disk lattice cache")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report on one group")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("beta", help="largest quotient B-group")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("verify", help="run property suites over the catalogue")
    p.add_argument("--max-order", type=int, default=48)
    p.add_argument("suite", choices=SUITES + ("all",))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("outer", help="Out(S) verdict table as TSV")
    p.add_argument("--type", type=int)
    p.add_argument("--n", type=parse_range)
    p.add_argument("--q", type=parse_range)
    p.add_argument("--alternating", type=parse_range)
    p.add_argument("--sporadic", action="store_true")
    p.add_argument("--exceptions-only", action="store_true")
    p.set_defaults(func=cmd_outer)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cap is not None:
        LIMITS.order_cap = args.cap
    if args.no_cache:
        lattice.set_persistent_store(None)
    else:
        cache_dir = os.environ.get("BLAT_CACHE_DIR") or Path.home() / ".cache" / "blat"
        lattice.set_persistent_store(LatticeCache(cache_dir))
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ConditionViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
