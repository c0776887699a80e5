"""Command-line interface: ``loopgen <command> (--file PATH | --builtin NAME) ...``"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .constructors import builtin
from .dot import lattice_dot, orbit_dot
from .errors import LoopError, ResourceLimit
from .loop import (
    check_power_associative,
    find_nonassociative_triple,
    format_table,
    load_table,
    satisfies_moufang,
)
from .oracle import DEFAULT_BUDGET, exhaustive_count, monte_carlo
from .pipeline import Analysis
from .probability import all_typed, gen_count, gen_count_typed
from .properties import run_all

SCHEMA = "loopgen/1"

EXIT_INPUT, EXIT_BUDGET, EXIT_MISMATCH = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps({"schema": SCHEMA, "command": args.command, **payload}, indent=2, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_info(args, an: Analysis) -> int:
    loop = an.loop
    pa, witness = check_power_associative(loop)
    assoc = find_nonassociative_triple(loop) is None
    payload = {
        "order": loop.n,
        "neutral": loop.neutral,
        "powerAssociative": pa,
        "associative": assoc,
        "commutative": loop.is_commutative,
        "moufang": satisfies_moufang(loop),
    }
    lines = [
        f"order\t{loop.n}",
        f"neutral\t{loop.neutral}",
        f"power-associative\t{'yes' if pa else f'no (witness {witness})'}",
        f"associative\t{'yes' if assoc else 'no'}",
        f"commutative\t{'yes' if loop.is_commutative else 'no'}",
        f"moufang\t{'yes' if payload['moufang'] else 'no'}",
    ]
    if pa:
        counts = {str(i): len(d) for i, d in an.profile.by_order.items()}
        payload["orderCounts"] = counts
        lines += [f"|D_{i}|\t{c}" for i, c in counts.items()]
    else:
        payload["witness"] = witness
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_subloops(args, an: Analysis) -> int:
    lat = an.lattice
    by_size: dict[int, int] = {}
    for A in lat:
        by_size[A.size] = by_size.get(A.size, 0) + 1
    payload = {
        "count": len(lat),
        "covers": len(lat.covers),
        "bySize": {str(k): v for k, v in sorted(by_size.items())},
    }
    lines = [f"subloops\t{len(lat)}", f"covering pairs\t{len(lat.covers)}"]
    lines += [f"size {k}\t{v}" for k, v in sorted(by_size.items())]
    if args.list:
        payload["subloops"] = [list(A.members) for A in lat]
        lines += [f"{A.id}\t{' '.join(map(str, A.members))}" for A in lat]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_orbits(args, an: Analysis) -> int:
    lat, orbits = an.lattice, an.orbits
    rows = []
    for o, label in enumerate(orbits.labels):
        rep = lat[orbits.reps[o]]
        rows.append({"label": label, "representative": list(rep.members), "orbitSize": orbits.size(o), "cardinality": rep.size})
    lines = [f"# |Aut| = {an.automorphisms.order}", "label\torbit size\tcardinality\trepresentative"]
    lines += [f"{r['label']}\t{r['orbitSize']}\t{r['cardinality']}\t{' '.join(map(str, r['representative']))}" for r in rows]
    _emit(args, {"automorphismGroupOrder": an.automorphisms.order, "orbits": rows}, "\n".join(lines))
    return 0


def cmd_nu(args, an: Analysis) -> int:
    jt = an.jumps
    if args.dot:
        sys.stdout.write(orbit_dot(an.lattice, an.orbits, jt))
        return 0
    rows = [(jt.labels[s], i, jt.labels[d], v) for s, i, d, v in jt.rows()]
    payload = {"nu": [{"source": s, "order": i, "target": d, "count": v} for s, i, d, v in rows]}
    lines = ["source\torder\ttarget\tcount"] + [f"{s}\t{i}\t{d}\t{v}" for s, i, d, v in rows]
    _emit(args, payload, "\n".join(lines))
    return 0


def _report_lines(rep, jt) -> list[str]:
    head = f"type {','.join(map(str, rep.type))}" if rep.type else f"m={rep.m}"
    p = rep.probability
    lines = [f"{head}\tgenCount {rep.gen_count}\tP = {p.numerator}/{p.denominator} ({rep.decimal()})"]
    for c in rep.classes:
        lines.append(f"  {' -> '.join(c.labels(jt))}\t{c.size}")
    return lines


def cmd_prob(args, an: Analysis) -> int:
    jt = an.jumps
    if args.type:
        reports = [gen_count_typed(jt, args.type)]
    elif args.all_types:
        if args.m is None:
            raise ValueError("--all-types needs --m")
        reports = all_typed(jt, args.m)
    else:
        if args.m is None:
            raise ValueError("prob needs --m or --type")
        reports = [gen_count(jt, args.m)]
    lines = []
    for rep in reports:
        lines += _report_lines(rep, jt)
    _emit(args, {"order": an.loop.n, "reports": [r.to_dict(jt) for r in reports]}, "\n".join(lines))
    return 0


def cmd_verify(args, an: Analysis) -> int:
    ok = True
    payload: dict = {}
    lines = []
    if args.properties:
        results = run_all(an)
        payload["properties"] = [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]
        lines += [f"{'PASS' if r.ok else 'FAIL'}\t{r.name}\t{r.detail}" for r in results]
        ok &= all(r.ok for r in results)
    if args.m is not None or args.type:
        m = len(args.type) if args.type else args.m
        formula = gen_count_typed(an.jumps, args.type) if args.type else gen_count(an.jumps, m)
        if args.mc:
            res = monte_carlo(an.loop, an.lattice, m, args.mc, args.seed, args.type or None)
            p = float(formula.probability)
            sigma = (p * (1 - p) / res.samples) ** 0.5
            z = (res.rate - p) / sigma if sigma else (0.0 if res.rate == p else float("inf"))
            good = abs(z) <= args.sigmas
            payload["monteCarlo"] = {"hits": res.hits, "samples": res.samples, "seed": res.seed, "expected": p, "z": z, "ok": good}
            lines.append(f"{'PASS' if good else 'FAIL'}\tmonte-carlo\t{res.hits}/{res.samples} vs {p:.6f} (z = {z:.2f})")
        else:
            res = exhaustive_count(an.loop, an.lattice, m, args.type or None, budget=args.budget, workers=args.threads)
            good = res.gen_count == formula.gen_count
            payload["exhaustive"] = {"oracle": res.gen_count, "formula": formula.gen_count, "ok": good}
            lines.append(f"{'PASS' if good else 'FAIL'}\texhaustive\toracle {res.gen_count} formula {formula.gen_count}")
        ok &= good
    if not lines:
        raise ValueError("verify needs --m, --type or --properties")
    payload["ok"] = ok
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else EXIT_MISMATCH


def cmd_export_dot(args, an: Analysis) -> int:
    if args.lattice:
        sys.stdout.write(lattice_dot(an.lattice, an.orbits))
    else:
        sys.stdout.write(orbit_dot(an.lattice, an.orbits, an.jumps))
    return 0


def cmd_emit_table(args, an: Analysis) -> int:
    sys.stdout.write(format_table(an.loop, comment=args.comment))
    return 0


COMMANDS = {
    "info": cmd_info,
    "subloops": cmd_subloops,
    "orbits": cmd_orbits,
    "nu": cmd_nu,
    "prob": cmd_prob,
    "verify": cmd_verify,
    "export-dot": cmd_export_dot,
    "emit-table": cmd_emit_table,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="Cayley table in loopgen text format")
    src.add_argument("--builtin", help="s3, paige2 or cyclic:K")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1, help="worker cap for parallel stages")
    common.add_argument("--max-subloops", type=int, default=100_000)
    common.add_argument("--node-budget", type=int, default=50_000_000, help="automorphism search cap")
    common.add_argument("--cache", metavar="DIR", help=argparse.SUPPRESS)  # reserved

    parser = _Parser(prog="loopgen", description=__doc__)
    parser.add_argument("--version", action="version", version=f"loopgen {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("info", parents=[common], help="basic loop properties")
    p = sub.add_parser("subloops", parents=[common], help="subloop lattice summary")
    p.add_argument("--list", action="store_true")
    sub.add_parser("orbits", parents=[common], help="Aut-orbits of subloops")
    p = sub.add_parser("nu", parents=[common], help="jump constants as TSV")
    p.add_argument("--dot", action="store_true", help="emit the annotated orbit graph instead")
    p = sub.add_parser("prob", parents=[common], help="generation probabilities")
    p.add_argument("--m", type=int)
    p.add_argument("--type", type=_ints)
    p.add_argument("--all-types", action="store_true")
    p = sub.add_parser("verify", parents=[common], help="compare against brute force")
    p.add_argument("--m", type=int)
    p.add_argument("--type", type=_ints)
    p.add_argument("--mc", type=int, metavar="N", help="Monte Carlo with N samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sigmas", type=float, default=4.0, help="Monte Carlo tolerance in standard errors")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="exhaustive closure-step cap")
    p.add_argument("--properties", action="store_true", help="run the property suite")
    p = sub.add_parser("export-dot", parents=[common], help="DOT graph of orbits or of the lattice")
    p.add_argument("--lattice", action="store_true", help="every subloop instead of orbits")
    p = sub.add_parser("emit-table", parents=[common], help="print the Cayley table")
    p.add_argument("--comment")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        loop = load_table(args.file) if args.file else builtin(args.builtin)
        an = Analysis(loop, args.max_subloops, args.node_budget, max(1, args.threads))
        return COMMANDS[args.command](args, an)
    except ResourceLimit as exc:
        print(f"loopgen: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (LoopError, ValueError, OSError) as exc:
        print(f"loopgen: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
