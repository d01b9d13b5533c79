"""Command-line front end.

Data goes to stdout (or to --out PATH), logs to stderr.  Rationals print
as "p/q"; floats carry 12 significant digits.  Exit codes: 0 success or
check passed, 1 check failure or operation error, 2 usage error.

Identical invocations produce byte-identical output; seeds fully
determine every experiment (see the montecarlo module for the replica
derivation rule).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .errors import EulerAdicError
from .graph import Vertex, eulerian, eulerian_row
from .measure import (
    check_invariance_conditions,
    exact_moments,
    pair_drift,
    pushforward_check,
    WeightSystem,
)
from .montecarlo import (
    RngConfig,
    birkhoff_experiment,
    chebyshev_experiment,
    meeting_experiment,
    sample_experiment,
    variance_experiment,
)
from .paths import FinitePath, min_path_to, is_maximal
from .rationals import fraction_to_text, float_text, jsonable, stable_json
from .stacking import build_stage
from .transform import orbit_rank, successor


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_series(series, path: str) -> None:
    rows = ["level,value"]
    rows += [f"{lev},{float_text(val)}" for lev, val in series]
    Path(path).write_text("\n".join(rows) + "\n")


def _vertex(text: str) -> Vertex:
    try:
        n, _, k = text.partition(",")
        return Vertex(int(n), int(k))
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad vertex {text!r}: {exc}")


def _cylinder(text: str) -> FinitePath:
    try:
        return FinitePath.from_text(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


# --- subcommands ---------------------------------------------------------------


def _cmd_eulerian(args) -> int:
    lines = [",".join(str(a) for a in eulerian_row(n)) for n in range(args.n + 1)]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_orbit(args) -> int:
    v = args.vertex
    total = eulerian(v.level, v.column)
    if total > args.cap:
        raise EulerAdicError(f"fiber of {v} has {total} paths, cap is {args.cap}")
    lines = []
    p = min_path_to(v)
    for rank in range(total):
        lines.append(f"{rank},{p.to_text()}")
        if rank < total - 1:
            p = successor(p)
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_invariance(args) -> int:
    inv = check_invariance_conditions(WeightSystem.symmetric(), args.levels)
    push = [pushforward_check(n) for n in range(args.pushforward_depth + 1)]
    payload = {
        "schema": "euleradic/invariance/1",
        "conditions": jsonable(inv) | {"ok": inv.ok},
        "pushforward": [jsonable(r) | {"ok": r.ok} for r in push],
    }
    _emit(stable_json(payload), args.out)
    return 0 if inv.ok and all(r.ok for r in push) else 1


def _cmd_moments(args) -> int:
    rows = ["n,surplus_mean,surplus_var,scaled_sq,increment_sq"]
    for r in exact_moments(args.levels):
        inc = fraction_to_text(r.increment_sq) if r.increment_sq is not None else ""
        rows.append(
            f"{r.level},{fraction_to_text(r.surplus_mean)},"
            f"{fraction_to_text(r.surplus_var)},{fraction_to_text(r.scaled_sq)},{inc}"
        )
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def _cmd_drift(args) -> int:
    rows = ["n,k,k2,drift"]
    bad = 0
    for n in range(args.levels + 1):
        for k in range(n + 1):
            for k2 in range(n + 1):
                d = pair_drift(n, k, k2)
                if k != k2 and d > 0:
                    bad += 1
                rows.append(f"{n},{k},{k2},{fraction_to_text(d)}")
    _emit("\n".join(rows) + "\n", args.out)
    if bad:
        print(f"sign check failed for {bad} pairs", file=sys.stderr)
        return 1
    return 0


def _cmd_sample(args) -> int:
    rep = sample_experiment(args.level, args.reps, RngConfig(args.seed, args.replicas))
    _emit(rep.to_json(), args.out)
    return 0 if rep.passed else 1


def _cmd_variance(args) -> int:
    rep = variance_experiment(args.level, args.reps, RngConfig(args.seed, args.replicas))
    _emit(rep.to_json(), args.out)
    return 0 if rep.passed else 1


def _cmd_chebyshev(args) -> int:
    rep = chebyshev_experiment(
        args.level, Fraction(args.eps), args.reps, RngConfig(args.seed, args.replicas)
    )
    _emit(rep.to_json(), args.out)
    return 0 if rep.passed else 1


def _cmd_meeting(args) -> int:
    stats = meeting_experiment(
        args.nmax,
        args.reps,
        RngConfig(args.seed, args.replicas),
        min_meetings=args.min_meetings,
        keep_series=args.series is not None,
    )
    _emit(stats.to_json(), args.out)
    if args.series:
        _emit_series(stats.series, args.series)
    if args.min_fraction is not None and stats.fraction_with_min < args.min_fraction:
        print(
            f"fraction {stats.fraction_with_min} below {args.min_fraction}",
            file=sys.stderr,
        )
        return 1
    return 0


def _cmd_birkhoff(args) -> int:
    cfg = RngConfig(args.seed, args.replicas) if args.mode == "orbit_mc" else None
    rep = birkhoff_experiment(
        args.cylinder,
        args.level,
        mode=args.mode,
        cfg=cfg,
        column=args.column,
        budget=args.budget,
        tolerance=args.tolerance,
    )
    _emit(rep.to_json(), args.out)
    return 0 if rep.passed else 1


def _cmd_stack(args) -> int:
    layout = build_stage(args.stage, cap=args.cap)
    rows = ["path,level,column,lo,hi,rank,maximal"]
    for p, lo, hi in layout.iter_intervals():
        v = p.terminal
        rows.append(
            f"{p.to_text()},{v.level},{v.column},{fraction_to_text(lo)},"
            f"{fraction_to_text(hi)},{orbit_rank(p)},{int(is_maximal(p))}"
        )
    _emit("\n".join(rows) + "\n", args.out)
    return 0


# --- parser --------------------------------------------------------------------


def _add_rng_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, required=True, help="master seed")
    p.add_argument("--replicas", type=int, default=1, help="replica count")
    p.add_argument("--reps", type=int, required=True, help="sample count")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="euleradic",
        description="Exact combinatorics and seeded experiments for the "
        "Euler adic system.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=fn)
        p.add_argument("--out", help="write output to this file instead of stdout")
        return p

    p = cmd("eulerian", _cmd_eulerian, "print triangle rows 0..N as CSV")
    p.add_argument("--n", type=int, required=True)

    p = cmd("orbit", _cmd_orbit, "list a fiber in successor order")
    p.add_argument("--vertex", type=_vertex, required=True, metavar="n,k")
    p.add_argument("--cap", type=int, default=10**6)

    p = cmd("invariance", _cmd_invariance, "invariance conditions and pushforward")
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--pushforward-depth", type=int, default=6)

    p = cmd("moments", _cmd_moments, "exact moment table as CSV")
    p.add_argument("--levels", type=int, required=True)

    p = cmd("drift", _cmd_drift, "exact pair-drift table and sign check")
    p.add_argument("--levels", type=int, required=True)

    p = cmd("sample", _cmd_sample, "column frequencies vs the exact law")
    p.add_argument("--level", type=int, required=True)
    _add_rng_flags(p)

    p = cmd("variance", _cmd_variance, "surplus mean and variance vs exact")
    p.add_argument("--level", type=int, required=True)
    _add_rng_flags(p)

    p = cmd("chebyshev", _cmd_chebyshev, "tail probability vs exact and bound")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--eps", required=True, help='threshold, e.g. "1/10"')
    _add_rng_flags(p)

    p = cmd("meeting", _cmd_meeting, "pair coincidence statistics")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--min-meetings", type=int, default=5)
    p.add_argument("--min-fraction", type=float, default=None,
                   help="fail (exit 1) when the min-meetings fraction is lower")
    p.add_argument("--series", default=None,
                   help="also write per-level coincidence fractions to this CSV")
    _add_rng_flags(p)

    p = cmd("birkhoff", _cmd_birkhoff, "cylinder visit frequency")
    p.add_argument("--cylinder", type=_cylinder, required=True, metavar="TEXT")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--column", type=int, default=None)
    p.add_argument("--mode", choices=["exact_stack", "orbit_mc"],
                   default="exact_stack")
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--replicas", type=int, default=1)

    p = cmd("stack", _cmd_stack, "dump a stage layout as CSV")
    p.add_argument("--stage", type=int, required=True)
    p.add_argument("--cap", type=int, default=10**6)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EulerAdicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
