"""Batch command-line front end.

Subcommands: distance, profile, reduce, census, verify.  Points are written
h:bits with h an exact "p/q" rational and bits a 0/1 string (possibly
empty), e.g. 1/2:0 or 4/9:01.  Every numeric field in JSON/CSV output is an
exact "p/q" string except fields explicitly named "ratio"/"spread", which
are floating point for reporting only.  Identical invocations produce
byte-identical output; randomized suites are pinned by --seed.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage error.  The
environment variable LAAKSO_MAX_DEPTH caps resource-heavy parameters
(verify --depth, census --max-level).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import List, Optional

from . import verify as verify_mod
from .core import LaaksoPoint, canonicalize, format_rational, parse_rational, point, point_to_json
from .metric import distance, minimal_height_intervals, synthesize_geodesic
from .profiles import (
    census_records,
    expected_kinks,
    parallel_reduction,
    profile_distance_on_line,
    profile_to_svg,
    vertical_lines,
)

__all__ = ["main", "entrypoint"]


class UsageError(ValueError):
    pass


def _parse_point(text: str) -> LaaksoPoint:
    if ":" in text:
        h, bits = text.split(":", 1)
    else:
        h, bits = text, ""
    try:
        return point(parse_rational(h), bits)
    except ValueError as exc:
        raise UsageError(f"bad point {text!r}: {exc}") from exc


def _parse_line_spec(spec: str):
    """v0 | vN:<N> | vD:<N>,<M>[,...]; also accepts v<N> and v<N>:<N>."""
    s = spec.strip().lower()
    if not s.startswith("v"):
        raise UsageError(f"bad line spec {spec!r}")
    body = s[1:]
    if body == "0":
        return ()
    try:
        if body.startswith("d:"):
            levels = tuple(int(x) for x in body[2:].split(","))
        elif ":" in body:
            levels = (int(body.split(":", 1)[1]),)
        else:
            levels = (int(body),)
    except ValueError as exc:
        raise UsageError(f"bad line spec {spec!r}") from exc
    if any(n < 1 for n in levels) or list(levels) != sorted(set(levels)):
        raise UsageError(f"line levels must be increasing positive integers: {spec!r}")
    return levels


def _depth_cap() -> Optional[int]:
    raw = os.environ.get("LAAKSO_MAX_DEPTH")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"LAAKSO_MAX_DEPTH must be an integer, got {raw!r}")


def _enforce_cap(value: Optional[int], what: str) -> None:
    cap = _depth_cap()
    if cap is not None and value is not None and value > cap:
        raise UsageError(f"{what} {value} exceeds LAAKSO_MAX_DEPTH={cap}")


def _emit(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_distance(args) -> int:
    x = _parse_point(args.x)
    y = _parse_point(args.y)
    ivs = minimal_height_intervals(x, y)
    geodesics = [synthesize_geodesic(x, y, iv).to_json() for iv in ivs]
    payload = {
        "x": point_to_json(canonicalize(x)),
        "y": point_to_json(canonicalize(y)),
        "distance": format_rational(distance(x, y)),
        "intervals": [[format_rational(iv.a), format_rational(iv.b)] for iv in ivs],
        "geodesics": geodesics,
    }
    _emit(_json_dumps(payload), args.out)
    return 0


def cmd_profile(args) -> int:
    p = _parse_point(args.p)
    levels = _parse_line_spec(args.line)
    if len(levels) >= 3:
        raise UsageError(
            "profiles cover at most two jump levels; use the `reduce` subcommand "
            "to compare deeper lines against their two-level reduction"
        )
    lines = vertical_lines(p, levels)
    results = []
    ok = True
    for line in lines:
        profile = profile_distance_on_line(p, line)
        expected = expected_kinks(p, line)
        match = profile.kink_heights() == expected
        ok = ok and match
        results.append(
            {
                "profile": profile.to_json(),
                "expected_kinks": [format_rational(h) for h in expected],
                "pass": match,
            }
        )
        if args.svg:
            suffix = f".{line.branch}" if len(lines) > 1 else ""
            path = args.svg if not suffix else _suffixed(args.svg, suffix)
            _emit(profile_to_svg(profile), path)
    payload = {"p": point_to_json(canonicalize(p)), "lines": results}
    _emit(_json_dumps(payload), args.out)
    return 0 if ok else 1


def _suffixed(path: str, suffix: str) -> str:
    root, ext = os.path.splitext(path)
    return f"{root}{suffix}{ext}"


def cmd_reduce(args) -> int:
    p = _parse_point(args.p)
    try:
        levels = tuple(int(x) for x in args.levels.split(","))
    except ValueError as exc:
        raise UsageError(f"bad level list {args.levels!r}") from exc
    t = parse_rational(args.t)
    full, two = parallel_reduction(p, levels, t)
    payload = {
        "p": point_to_json(canonicalize(p)),
        "levels": list(levels),
        "t": format_rational(t),
        "value_full": format_rational(full),
        "value_two_level": format_rational(two),
        "equal": full == two,
    }
    _emit(_json_dumps(payload), args.out)
    return 0 if full == two else 1


def cmd_census(args) -> int:
    p = _parse_point(args.p)
    _enforce_cap(args.max_level, "--max-level")
    records = census_records(p, args.max_level)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["height", "source_line", "kink_type"])
    for h, label, kind in records:
        writer.writerow([format_rational(h), label, kind])
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_verify(args) -> int:
    if args.suite not in verify_mod.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(verify_mod.SUITES)}")
    _enforce_cap(args.depth, "--depth")
    checks = verify_mod.run_suite(args.suite, depth=args.depth, seed=args.seed)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["check", "status", "expected", "actual"])
    for c in checks:
        writer.writerow(c.csv_row())
    _emit(buf.getvalue(), args.out)
    return 0 if all(c.passed for c in checks) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laakso",
        description="Exact computation on Laakso space: distances, geodesics, "
        "kink profiles of distance functions, and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("distance", help="exact distance, minimal intervals, geodesics")
    d.add_argument("--x", required=True, help="point as h:bits, e.g. 1/2:0")
    d.add_argument("--y", required=True, help="point as h:bits")
    d.add_argument("--out", default=None, help="output path (default stdout)")
    d.set_defaults(func=cmd_distance)

    pr = sub.add_parser("profile", help="kink profile of d_p along a vertical line")
    pr.add_argument("--p", required=True, help="base point as h:bits")
    pr.add_argument("--line", required=True, help="v0 | vN:<N> | vD:<N>,<M>")
    pr.add_argument("--svg", default=None, help="write an SVG plot here")
    pr.add_argument("--out", default=None, help="JSON output path (default stdout)")
    pr.set_defaults(func=cmd_profile)

    rd = sub.add_parser("reduce", help="compare a deep line with its two-level reduction")
    rd.add_argument("--p", required=True, help="base point as h:bits")
    rd.add_argument("--levels", required=True, help="comma list of >=3 jump levels")
    rd.add_argument("--t", required=True, help="height as p/q")
    rd.add_argument("--out", default=None)
    rd.set_defaults(func=cmd_reduce)

    ce = sub.add_parser(
        "census",
        help="CSV census of non-differentiability heights",
        epilog="CSV columns: height, source_line, kink_type.",
    )
    ce.add_argument("--p", required=True, help="base point as h:bits")
    ce.add_argument("--max-level", type=int, default=4)
    ce.add_argument("--out", default=None)
    ce.set_defaults(func=cmd_census)

    ve = sub.add_parser(
        "verify",
        help="run a verification suite, CSV per check",
        epilog="CSV columns: check, status, expected, actual "
        "(exact p/q values except fields named ratio/spread).",
    )
    ve.add_argument("suite", help="|".join(verify_mod.SUITES))
    ve.add_argument("--depth", type=int, default=None, help="suite scale (resolution)")
    ve.add_argument("--seed", type=int, default=None, help="pin randomized pools")
    ve.add_argument("--out", default=None)
    ve.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses its own exit codes
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
