"""Command-line front end: ``parkgraph <subcommand> ...``.

Exit codes: 0 success, 1 parking failure (or a failed check), 2 bad input.
Output files are written to a temporary sibling and renamed into place, so a
failed run never leaves a partial table behind.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from . import asymptotics, enumgen, exactcount
from .bijection import phi_general, phi_general_inverse
from .core import (
    MappingFn,
    RootedTree,
    dumps_canonical,
    graph_from_dict,
    graph_to_dict,
    iter_prefs,
    load_graph,
    park,
    prefs_from_dict,
)
from .errors import ContractError, DomainError, ParkGraphError, SizeError
from .verify import run_all

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
COUNT_HEADER = ("n", "m", "F", "M", "match")
COUNT_MODES = ("exact", "brute", "series")


class _Failure(Exception):
    """Parking failure that should end the run with exit code 1."""


# --- formatting and output ---------------------------------------------------

def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(row[k]) for k in header])
    return buf.getvalue()


def to_json(rows) -> str:
    return json.dumps(rows, indent=2) + "\n"


def emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


# --- argument parsing --------------------------------------------------------

def parse_int_list(text: str) -> list[int]:
    """``"3"``, ``"1..4"``, ``"1,2,5"`` or mixtures such as ``"1..3,6"``."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise DomainError(f"bad integer list {text!r}") from None
    if not out:
        raise DomainError(f"empty list {text!r}")
    return out


def parse_float_list(text: str) -> list[float]:
    """``"0.3"``, ``"0.1,0.5"`` or ``"0.1..0.9:0.1"`` (inclusive, exact decimal steps)."""
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                span, _, step = part.partition(":")
                lo, hi = (Fraction(x) for x in span.split(".."))
                step = Fraction(step or "0.1")
                if step <= 0:
                    raise ValueError
                x = lo
                while x <= hi:
                    out.append(float(x))
                    x += step
            elif part:
                out.append(float(Fraction(part)))
    except ValueError:
        raise DomainError(f"bad number list {text!r}") from None
    if not out:
        raise DomainError(f"empty list {text!r}")
    return out


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def _read_json(path: str):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed JSON in {path}: {exc}") from None


# --- subcommands -------------------------------------------------------------

def cmd_simulate(args) -> int:
    g = load_graph(_read_text(args.graph))
    if args.prefs is not None:
        prefs = iter_prefs([args.prefs])
    elif args.prefs_file:
        prefs = prefs_from_dict(_read_json(args.prefs_file))
    else:
        raise DomainError("give --prefs or --prefs-file")
    out = park(g, prefs)
    if args.format == "json":
        payload = {"success": out.success}
        if out.success:
            payload["pi"] = list(out.pi)
        else:
            payload["failed_driver"] = out.failed_driver
        text = dumps_canonical(payload)
    elif out.success:
        text = "parked pi=" + ",".join(map(str, out.pi)) + "\n"
    else:
        text = f"driver {out.failed_driver} failed\n"
    emit(text, args.out)
    return EXIT_OK if out.success else EXIT_FAIL


def _count_rows(ns, ms, modes, order, workers):
    biv = None
    if "series" in modes:
        need = max(ns) + 1
        order = order or need
        if order < need:
            raise SizeError(f"--order {order} is too small for n={max(ns)}; need {need}")
        biv = exactcount.series_Q_bivariate(order)
    rows = []
    for n in ns:
        want = [m for m in (range(n + 1) if ms is None else ms) if 0 <= m <= n]
        if not want:
            continue
        top = max(want)
        per_mode = {}
        if "brute" in modes:
            per_mode["brute"] = (enumgen.brute_F_profile(n, top, workers),
                                 enumgen.brute_M_profile(n, top, workers))
        for m in want:
            values = []
            for mode in modes:
                if mode == "exact":
                    values.append((exactcount.exact_F_nm(n, m), exactcount.exact_M_nm(n, m)))
                elif mode == "brute":
                    fp, mp = per_mode["brute"]
                    values.append((fp[m], mp[m]))
                else:
                    values.append((biv.count("F", n, m), biv.count("M", n, m)))
            F, M = values[0]
            match = all(v == values[0] for v in values) and M == n * F
            rows.append({"n": n, "m": m, "F": F, "M": M, "match": match})
    return rows


def cmd_count(args) -> int:
    modes = [x.strip() for x in args.mode.split(",") if x.strip()]
    unknown = set(modes) - set(COUNT_MODES)
    if not modes or unknown:
        raise DomainError(f"--mode takes a comma list of {', '.join(COUNT_MODES)}")
    ns = parse_int_list(args.n)
    ms = parse_int_list(args.m) if args.m else None
    if min(ns) < 1:
        raise DomainError("n must be positive")
    rows = _count_rows(ns, ms, modes, args.order, args.workers)
    text = to_json(rows) if args.format == "json" else to_csv(COUNT_HEADER, rows)
    emit(text, args.out)
    return EXIT_OK


def cmd_bijection(args) -> int:
    data = _read_json(args.input)
    if not isinstance(data, dict):
        raise DomainError("bijection input must be a JSON object")
    prefs = prefs_from_dict(data)
    try:
        if args.direction == "fwd":
            t = graph_from_dict(data.get("tree"))
            if not isinstance(t, RootedTree):
                raise DomainError('"tree" must have kind "tree"')
            w = data.get("w")
            if isinstance(w, bool) or not isinstance(w, int):
                raise DomainError('"w" must be an integer node label')
            f = phi_general(t, prefs, w)
            payload = {"mapping": graph_to_dict(f), "prefs": list(prefs)}
        else:
            f = graph_from_dict(data.get("mapping"))
            if not isinstance(f, MappingFn):
                raise DomainError('"mapping" must have kind "mapping"')
            t, w = phi_general_inverse(f, prefs)
            payload = {"tree": graph_to_dict(t), "prefs": list(prefs), "w": w}
    except ContractError as exc:
        raise _Failure(str(exc)) from None
    emit(dumps_canonical(payload), args.out)
    return EXIT_OK


def cmd_phase(args) -> int:
    rhos = parse_float_list(args.rho)
    ns = parse_int_list(args.n)
    if min(ns) < 1:
        raise DomainError("n must be positive")
    if args.trials < 0:
        raise DomainError("--trials must be non-negative")
    rows = asymptotics.phase_rows(rhos, ns, trials=args.trials, seed=args.seed,
                                  workers=args.workers, delta=args.delta)
    if args.format == "json":
        text = to_json(rows)
    else:
        text = to_csv(asymptotics.PHASE_COLUMNS, rows)
    emit(text, args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    ns = parse_int_list(args.n)
    if args.count < 1:
        raise DomainError("--count must be positive")
    rng = asymptotics.make_rng(args.seed)
    draw = asymptotics.sample_tree if args.kind == "tree" else asymptotics.sample_mapping
    graphs = [draw(n, rng) for n in ns for _ in range(args.count)]
    if args.format == "json":
        text = "".join(dumps_canonical(graph_to_dict(g)) for g in graphs)
    else:
        key = "parent" if args.kind == "tree" else "succ"
        rows = [{"index": i, "kind": args.kind, "n": g.n, key: " ".join(map(str, graph_to_dict(g)[key]))}
                for i, g in enumerate(graphs)]
        text = to_csv(("index", "kind", "n", key), rows)
    emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_all(quick=args.quick, workers=args.workers)
    text = "".join(r.line() + "\n" for r in results)
    passed = sum(r.passed for r in results)
    text += f"{passed}/{len(results)} checks passed\n"
    emit(text, args.out)
    return EXIT_OK if passed == len(results) else EXIT_FAIL


# --- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="parkgraph", description="Parking on trees and mappings.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("csv", "json"), default=None):
        sp.add_argument("--out", help="write here instead of stdout (atomic)")
        sp.add_argument("--format", choices=formats, default=default or formats[0])

    s = sub.add_parser("simulate", help="park one preference sequence on a graph file")
    s.add_argument("graph", help='JSON graph file ("-" for stdin)')
    s.add_argument("--prefs", help="preferences, e.g. 10,5,14")
    s.add_argument("--prefs-file", help='JSON file of the form {"prefs": [...]}')
    common(s, ("text", "json"))
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("count", help="table of F(n,m) and M(n,m) from one or more oracles")
    s.add_argument("--mode", default="exact", help="comma list of exact, brute, series")
    s.add_argument("--n", required=True, help="e.g. 1..4")
    s.add_argument("--m", help="restrict m, e.g. 0,2 (default: all 0..n)")
    s.add_argument("--order", type=int, help="series truncation order (default: max n + 1)")
    s.add_argument("--workers", type=int, default=1)
    common(s)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("bijection", help="map (tree, prefs, w) to (mapping, prefs) or back")
    s.add_argument("input", help='JSON file ("-" for stdin)')
    s.add_argument("--direction", choices=("fwd", "inv"), default="fwd")
    s.add_argument("--out")
    s.set_defaults(func=cmd_bijection)

    s = sub.add_parser("phase", help="exact, Monte-Carlo and asymptotic p(n, rho n)")
    s.add_argument("--rho", default="0.1..0.9:0.1")
    s.add_argument("--n", default="200")
    s.add_argument("--trials", type=int, default=0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--delta", type=float, default=asymptotics.DEFAULT_DELTA,
                   help="half-width of the band around 1/2 tagged critical")
    common(s)
    s.set_defaults(func=cmd_phase)

    s = sub.add_parser("sample", help="uniform random trees or mappings")
    s.add_argument("--kind", choices=("tree", "mapping"), default="tree")
    s.add_argument("--n", required=True)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    common(s, ("json", "csv"))
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("verify", help="run the cross-check suite")
    s.add_argument("--quick", action="store_true", help="smaller sweeps")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Failure as exc:
        print(f"not a parking pair: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ParkGraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
