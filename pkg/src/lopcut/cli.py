"""Command-line surface: gen, solve, analyze, cuts, verify, bench.

Exit codes: 0 success, 1 usage error, 2 verification failure (invalid cut
or bound violation), 3 scale error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .facet_engine import (NotSeparatedError, cut_bundle_to_json,
                           facet_cuts_for_vertex, inequality_from_json,
                           inequality_to_json)
from .instance import (InstanceParseError, parse_instance, random_instance,
                       serialize_instance)
from .oracle import (EXHAUSTIVE_CAP, ScaleError, brute_force_opt,
                     facet_dimension, validate_inequality)
from .relaxation import build_bn, objective_from_instance
from .simplex import lp_solve
from .solver import SolverConfig, report_to_json_text, solve
from .vertex_analysis import fence_point, profile_from_point, profile_to_json

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2
EXIT_SCALE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise SystemExit(EXIT_USAGE)


def _dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _load_instance(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        sys.stderr.write(f"error: cannot read {path}: {exc}\n")
        raise SystemExit(EXIT_USAGE)
    try:
        return parse_instance(text, name=Path(path).stem)
    except InstanceParseError as exc:
        sys.stderr.write(f"error: {path}: {exc}\n")
        raise SystemExit(EXIT_USAGE)


def _load_vertex(path: str) -> tuple[int, tuple[Fraction, ...]]:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    n = int(doc["n"])
    x = tuple(Fraction(e["num"], e["den"]) for e in doc["x"])
    return n, x


def _cmd_gen(args) -> int:
    inst = random_instance(args.n, args.seed, _parse_range(args.range))
    Path(args.out).write_text(serialize_instance(inst), encoding="utf-8")
    print(f"wrote {args.out} (n={inst.n}, seed={args.seed})")
    return EXIT_OK


def _cmd_solve(args) -> int:
    inst = _load_instance(args.file)
    cfg = SolverConfig(max_iterations=args.max_iter,
                       reduction_enabled=not args.no_reduce)
    report = solve(inst, cfg)
    text = report_to_json_text(report)
    if args.json:
        Path(args.json).write_text(text, encoding="utf-8")
    bound = report.best_bound
    print(f"status: {report.status}")
    print(f"best bound: {bound.numerator}/{bound.denominator}"
          if bound.denominator != 1 else f"best bound: {bound.numerator}")
    if report.incumbent is not None:
        order, value = report.incumbent
        print(f"optimal ordering: {' '.join(map(str, order))} (value {value})")
    print(f"iterations: {len(report.iterations)}, "
          f"cuts in pool: {len(report.cut_pool_final)}")
    if not args.json:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_analyze(args) -> int:
    if args.fence is not None:
        m = args.fence
        if m < 3:
            sys.stderr.write("error: fence needs m >= 3\n")
            return EXIT_USAGE
        n = 2 * m
        x = fence_point(tuple(range(1, m + 1)), tuple(range(m + 1, n + 1)), n)
        profile = profile_from_point(x, n)
    else:
        inst = _load_instance(args.file)
        sysn = build_bn(inst.n)
        objective, _ = objective_from_instance(inst)
        sol = lp_solve(sysn, objective, "max")
        profile = profile_from_point(sol.x, inst.n)
    sys.stdout.write(_dump(profile_to_json(profile)))
    return EXIT_OK


def _cmd_cuts(args) -> int:
    if args.fence is not None:
        m = args.fence
        if m < 3:
            sys.stderr.write("error: fence needs m >= 3\n")
            return EXIT_USAGE
        n = 2 * m
        x = fence_point(tuple(range(1, m + 1)), tuple(range(m + 1, n + 1)), n)
        sysn = build_bn(n)
    else:
        n, x = _load_vertex(args.from_vertex)
        sysn = build_bn(n)
    try:
        bundle = facet_cuts_for_vertex(sysn, x)
    except NotSeparatedError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VERIFICATION
    sys.stdout.write(_dump(cut_bundle_to_json(bundle)))
    return EXIT_OK


def _cmd_verify(args) -> int:
    doc = json.loads(Path(args.cut).read_text(encoding="utf-8"))
    cut_docs = doc["cuts"] if "cuts" in doc else [doc]
    n = args.n
    results = []
    all_valid = True
    for cdoc in cut_docs:
        cut = inequality_from_json(cdoc)
        report = validate_inequality(cut, n)
        entry = {
            "origin": cut.origin,
            "valid": report.valid,
            "mode": report.mode,
            "max_lhs": {"num": report.max_lhs.numerator,
                        "den": report.max_lhs.denominator},
            "tight_count": report.tight_count,
            "facet_dim": None,
            "facet": None,
        }
        if report.valid and n <= EXHAUSTIVE_CAP:
            dim = facet_dimension(cut, n)
            entry["facet_dim"] = dim
            entry["facet"] = dim == n * (n - 1) // 2 - 1
        results.append(entry)
        all_valid = all_valid and report.valid
    sys.stdout.write(_dump({"n": n, "results": results}))
    return EXIT_OK if all_valid else EXIT_VERIFICATION


def _cmd_bench(args) -> int:
    lo, hi = _parse_range(args.range)
    rows = []
    violation = False
    for k in range(args.count):
        seed = args.seed + k
        inst = random_instance(args.n, seed, (lo, hi))
        report = solve(inst, SolverConfig())
        optimum = brute_force_opt(inst).best_value
        bound = report.best_bound
        ok = bound >= optimum
        exact = (report.status == "Optimal"
                 and report.incumbent is not None
                 and report.incumbent[1] == optimum)
        rows.append({
            "seed": seed,
            "status": report.status,
            "best_bound": {"num": bound.numerator, "den": bound.denominator},
            "optimum": optimum,
            "bound_ok": ok,
            "optimal_exact": exact,
        })
        if not ok or (report.status == "Optimal" and not exact):
            violation = True
    header = f"{'seed':>6} {'status':<15} {'bound':>12} {'optimum':>8} {'ok':>3}"
    print(header)
    for r in rows:
        b = Fraction(r["best_bound"]["num"], r["best_bound"]["den"])
        bstr = str(b.numerator) if b.denominator == 1 else f"{b}"
        print(f"{r['seed']:>6} {r['status']:<15} {bstr:>12} "
              f"{r['optimum']:>8} {'yes' if r['bound_ok'] else 'NO':>3}")
    if args.json:
        Path(args.json).write_text(_dump({"n": args.n, "rows": rows}),
                                   encoding="utf-8")
    return EXIT_VERIFICATION if violation else EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="lopcut",
                     description="exact cutting planes for linear ordering")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("gen", help="write a random instance file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--range", default="0:99", help="LO:HI inclusive")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("solve", help="run the cutting-plane loop")
    p.add_argument("file")
    p.add_argument("--max-iter", type=int, default=50)
    p.add_argument("--no-reduce", action="store_true")
    p.add_argument("--json", help="write the JSON report here")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("analyze", help="profile the LP vertex of an instance "
                                       "or a constructed fence point")
    p.add_argument("file", nargs="?")
    p.add_argument("--fence", type=int, help="fence size m (uses n = 2m)")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("cuts", help="emit verified cuts as JSON")
    p.add_argument("--fence", type=int, help="fence size m (uses n = 2m)")
    p.add_argument("--from-vertex", help="JSON vertex file")
    p.set_defaults(func=_cmd_cuts)

    p = sub.add_parser("verify", help="oracle-check a cut file")
    p.add_argument("--cut", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bench", help="seeded batch of solves vs brute force")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--range", default="0:99")
    p.add_argument("--json", help="write the JSON table here")
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "analyze" and args.file is None and args.fence is None:
        sys.stderr.write("error: analyze needs a file or --fence\n")
        return EXIT_USAGE
    if args.command == "cuts" and (args.fence is None) == (args.from_vertex is None):
        sys.stderr.write("error: cuts needs exactly one of --fence/--from-vertex\n")
        return EXIT_USAGE
    try:
        return args.func(args)
    except ScaleError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SCALE
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
