"""Command-line frontend.

    tropclust trop-map --k 3 --n 6 --map sigma:1 --g "1,0,0,0"
    tropclust gvec2tab --k 4 --n 8 --g "-1,0,0,-1,0,1,1,0,0"
    tropclust totient --k 4 --n 8 --degree-cap 10
    tropclust verify

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, List, Optional, Sequence

from . import acceptance
from .cluster_core import ExchangeMatrix, Seed, family_matrix, mutate_word
from .data import load_reference
from .dynamics import act_on_tableau, braid_orbit, find_fixed_points, totient_closed_form, totient_profile
from .errors import TropclustError
from .grassmannian import GrContext, QuasiAuto, trop_Q
from .tableaux import Tableau, gvector_to_tableau, tableau_to_gvector

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _matrix(text: str) -> List[List[int]]:
    return [_ints(row) for row in text.split(";")]


def _ctx(args) -> GrContext:
    if args.k is None or args.n is None:
        raise UsageError("--k and --n are required")
    return GrContext(args.k, args.n)


def _point(args, ctx: GrContext, text: Optional[str] = None) -> List[int]:
    text = text if text is not None else args.g
    if text is None:
        raise UsageError("--g is required")
    v = _ints(text)
    if len(v) != ctx.m:
        raise UsageError(f"--g needs {ctx.m} entries for Gr({ctx.k},{ctx.n}), got {len(v)}")
    return v


def _tableau(args, ctx: GrContext) -> Tableau:
    if args.tableau is None:
        raise UsageError("--tableau is required")
    try:
        data = json.loads(args.tableau)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--tableau is not valid JSON: {exc}") from None
    if isinstance(data, dict):
        return Tableau.from_json(data)
    return Tableau.from_columns(data, ctx.k, ctx.n)


def _map(args, required: bool = True) -> Optional[QuasiAuto]:
    if args.map is None:
        if required:
            raise UsageError("--map is required")
        return None
    try:
        return QuasiAuto.parse(args.map)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------- output


def _emit(args, payload: Any, text: str, rows: Optional[List[dict]] = None):
    fmt = args.format
    if fmt == "json":
        print(json.dumps(payload))
    elif fmt == "csv":
        buf = io.StringIO()
        rows = rows if rows is not None else [{"value": text}]
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()) if rows else ["value"])
        writer.writeheader()
        for r in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        sys.stdout.write(buf.getvalue())
    else:
        print(text)


def _csv_ints(v: Sequence[int]) -> str:
    return ",".join(str(x) for x in v)


# ---------------------------------------------------------------- commands


def cmd_mutate(args) -> int:
    if args.family:
        b0 = family_matrix(args.family)
    elif args.b:
        b0 = ExchangeMatrix(_matrix(args.b))
    else:
        raise UsageError("mutate needs --family or --b")
    word = _ints(args.word) if args.word else []
    s = mutate_word(Seed.initial(b0), word, b0)
    payload = {"B": s.b.tolist(), "C": s.c.tolist(), "G": s.g.tolist(), "word": word}
    text = "\n".join(f"{key}: {json.dumps(val)}" for key, val in payload.items())
    _emit(args, payload, text, [payload])
    return EXIT_OK


def cmd_trop_map(args) -> int:
    ctx = _ctx(args)
    v = trop_Q(ctx, _map(args), _point(args, ctx), args.conv)
    _emit(args, v, _csv_ints(v), [{"g": v}])
    return EXIT_OK


def cmd_gvec2tab(args) -> int:
    ctx = _ctx(args)
    t = gvector_to_tableau(_point(args, ctx), ctx)
    _emit(args, t.to_json(), str(t), [t.to_json()])
    return EXIT_OK


def cmd_tab2gvec(args) -> int:
    ctx = _ctx(args)
    g = tableau_to_gvector(_tableau(args, ctx), ctx)
    _emit(args, g, _csv_ints(g), [{"g": g}])
    return EXIT_OK


def cmd_act(args) -> int:
    ctx = _ctx(args)
    t = act_on_tableau(_map(args), _tableau(args, ctx), ctx, args.conv)
    _emit(args, t.to_json(), str(t), [t.to_json()])
    return EXIT_OK


def cmd_fixed_points(args) -> int:
    ctx = _ctx(args)
    gen = _map(args)
    if not gen.kind.startswith("sigma"):
        raise UsageError("fixed-points needs a braid generator sigma:<i> or sigma-inv:<i>")
    if args.rank is None or args.rank < 1:
        raise UsageError("--rank must be at least 1")
    reports = find_fixed_points(ctx, gen, args.rank, seed=args.rng_seed)
    payload = [r.to_json() for r in reports]
    text = "\n".join(f"{r.tableau}\t{_csv_ints(r.g)}\t{r.stability}" for r in reports)
    rows = [{"tableau": [list(c) for c in r.tableau.cols], "g": r.g, "stability": r.stability} for r in reports]
    _emit(args, payload, text, rows)
    return EXIT_OK


def _default_seeds(ctx: GrContext, root: Optional[str]) -> List[List[int]]:
    """Stable fixed points stored for this Grassmannian."""
    for entry in load_reference("stable_points", root):
        if (entry["k"], entry["n"]) == (ctx.k, ctx.n):
            return [tableau_to_gvector(Tableau.from_columns(c, ctx.k, ctx.n), ctx) for c in entry["stable"]]
    raise UsageError(f"no stored stable points for Gr({ctx.k},{ctx.n}); pass seeds with --g")


def _orbit(args, ctx):
    if args.degree_cap is None:
        raise UsageError("--degree-cap is required")
    seeds = [_point(args, ctx, s) for s in args.seed] if args.seed else None
    if seeds is None and args.g:
        seeds = [_point(args, ctx)]
    if seeds is None:
        seeds = _default_seeds(ctx, args.fixtures)
    return braid_orbit(ctx, seeds, args.degree_cap)


def cmd_orbit(args) -> int:
    ctx = _ctx(args)
    orbit = _orbit(args, ctx)
    payload = [e.to_json() for e in orbit]
    text = "\n".join(f"{e.degree}\t{_csv_ints(e.g)}\t{' '.join(e.word) or '-'}" for e in orbit)
    _emit(args, payload, text, payload)
    return EXIT_OK


def cmd_totient(args) -> int:
    ctx = _ctx(args)
    orbit = _orbit(args, ctx)
    profile = totient_profile(orbit, args.degree_cap, args.degree_cap)
    payload = {"N": profile}
    for entry in load_reference("totient", args.fixtures).values():
        if (entry["k"], entry["n"]) == (ctx.k, ctx.n):
            payload["closed_form"] = totient_closed_form(entry["step"], entry["mult"], args.degree_cap)
    rows = [{"r": r, "N": x} for r, x in enumerate(profile, start=1)]
    _emit(args, payload, _csv_ints(profile), rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    only = _ints(args.only) if args.only else None
    results = acceptance.run_all(root=args.fixtures, only=only, seed=args.rng_seed,
                                 echo=(lambda line: print(line, flush=True)) if args.format == "text" else None)
    if args.format == "json":
        print(json.dumps([
            {"criterion": r.number, "title": r.title, "passed": r.passed, "detail": r.detail,
             "seconds": round(r.seconds, 3), "budget": r.budget}
            for r in results
        ]))
    elif args.format == "csv":
        _emit(args, None, "", [
            {"criterion": r.number, "passed": r.passed, "seconds": round(r.seconds, 3), "detail": r.detail}
            for r in results
        ])
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


COMMANDS = {
    "mutate": cmd_mutate,
    "trop-map": cmd_trop_map,
    "gvec2tab": cmd_gvec2tab,
    "tab2gvec": cmd_tab2gvec,
    "act": cmd_act,
    "fixed-points": cmd_fixed_points,
    "orbit": cmd_orbit,
    "totient": cmd_totient,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--map", help="rho, rho-inv, theta, tau, tau-inv, sigma:<i>, sigma-inv:<i>")
    common.add_argument("--conv", choices=["max", "min"], default="max")
    common.add_argument("--g", help="comma-separated point in node order (a-1)(k-1)+b")
    common.add_argument("--seed", action="append", help="orbit seed point; repeatable")
    common.add_argument("--tableau", help='JSON: list of columns, or {"k":..,"n":..,"cols":[..]}')
    common.add_argument("--rank", type=int)
    common.add_argument("--degree-cap", type=int)
    common.add_argument("--rng-seed", type=int, default=0)
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--fixtures", help="alternative fixtures directory")
    common.add_argument("--family", help="mutate: C2, B2, A2, optionally with -op")
    common.add_argument("--b", help='mutate: exchange matrix as "0,2;-1,0"')
    common.add_argument("--word", help="mutate: comma-separated 1-based directions")
    common.add_argument("--only", help="verify: comma-separated criterion numbers")

    parser = argparse.ArgumentParser(prog="tropclust", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


_VALUE_FLAGS = ("--g", "--seed", "--b", "--word")


def _glue_negative_values(argv: Sequence[str]) -> List[str]:
    # argparse reads "--g -1,0" as two options; rewrite it as "--g=-1,0"
    out: List[str] = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1][:1] == "-" and argv[i + 1][1:2].isdigit():
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"tropclust {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TropclustError, ValueError) as exc:
        print(f"tropclust {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
