"""Command-line interface: solve / decide / oracle / hull / coverage / gen / bench.

Instance files are either plain text ("x y" per line, # comments) or JSON
{"points": [[x, y], ...]}.  Structured output is JSON with floats printed at
17 significant digits so records round-trip losslessly.  Exit codes: 0 ok,
1 infeasible decide, 2 parse/usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from typing import Optional, Sequence

from .config import SolverConfig
from .errors import TwoCenterError
from .geom import Point, meb
from .hull import build_coverage, build_hull
from .solution import TwoDiskSolution
from .solver import feasible, oracle_solve, solve, solve_bisect
from .svg import render_svg


class ParseError(Exception):
    pass


def read_instance(path: str) -> tuple[list[Point], dict]:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}")
    stripped = text.lstrip()
    meta: dict = {}
    pts: list[Point] = []
    try:
        if stripped.startswith("{"):
            obj = json.loads(text)
            for xy in obj["points"]:
                x, y = float(xy[0]), float(xy[1])
                if not (math.isfinite(x) and math.isfinite(y)):
                    raise ParseError(f"non-finite coordinate in {path}")
                pts.append(Point(x, y))
            meta = {k: obj[k] for k in ("name", "seed") if k in obj}
        else:
            for lineno, line in enumerate(text.splitlines(), 1):
                body = line.split("#", 1)[0].strip()
                if not body:
                    continue
                parts = body.split()
                if len(parts) != 2:
                    raise ParseError(f"{path}:{lineno}: expected 'x y'")
                x, y = float(parts[0]), float(parts[1])
                if not (math.isfinite(x) and math.isfinite(y)):
                    raise ParseError(f"{path}:{lineno}: non-finite coordinate")
                pts.append(Point(x, y))
    except (ValueError, KeyError, TypeError, json.JSONDecodeError) as e:
        raise ParseError(f"cannot parse {path}: {e}")
    if not pts:
        raise ParseError(f"{path}: no points")
    return pts, meta


# -- JSON with 17 significant digit floats ----------------------------------


def _fmt_float(v: float) -> str:
    if math.isinf(v):
        return '"inf"' if v > 0 else '"-inf"'
    if math.isnan(v):
        return '"nan"'
    return format(v, ".17g")


def dumps17(obj) -> str:
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        inner = ", ".join(f"{json.dumps(str(k))}: {dumps17(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps17(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)}")


def record_from_solution(sol: TwoDiskSolution, pts: Sequence[Point], timing: Optional[float]) -> dict:
    branch = _jsonable(sol.branch)
    rec = {
        "radius": float(sol.radius),
        "disks": [
            {"cx": d.center.x, "cy": d.center.y, "r": d.radius}
            for d in (sol.disk1, sol.disk2)
        ],
        "assignment": list(sol.assignment),
        "branch": branch,
        "n": len(pts),
    }
    flags = _degeneracy_flags(pts, sol)
    if flags:
        rec["flags"] = flags
    if timing is not None:
        rec["timing"] = {"seconds": timing}
    return rec


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _degeneracy_flags(pts: Sequence[Point], sol: TwoDiskSolution) -> list[str]:
    flags = []
    if len(set(pts)) < len(pts):
        flags.append("duplicate-points")
    for name, d in (("disk1", sol.disk1), ("disk2", sol.disk2)):
        if d.radius <= 0:
            continue
        on = sum(
            1
            for p in pts
            if abs(math.hypot(p.x - d.center.x, p.y - d.center.y) - d.radius)
            <= 1e-9 * d.radius
        )
        if on >= 4:
            flags.append(f"cocircular-support-{name}")
    return flags


def verify_record(pts: Sequence[Point], rec: dict, eps: float = 1e-9) -> bool:
    """Independent re-verification of an emitted record (separate code path:
    raw arithmetic on the parsed JSON, no solution objects)."""
    disks = rec["disks"]
    r = rec["radius"]
    if any(d["r"] > r * (1 + eps) + 1e-300 for d in disks):
        return False
    assignment = rec["assignment"]
    if len(assignment) != len(pts):
        return False
    for p, lab in zip(pts, assignment):
        d = disks[0] if lab == 1 else disks[1]
        dx = p.x - d["cx"]
        dy = p.y - d["cy"]
        if math.sqrt(dx * dx + dy * dy) > d["r"] * (1 + eps) + 1e-300:
            return False
    return True


def _emit(rec: dict, out: Optional[str]):
    text = dumps17(rec)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cfg(args) -> SolverConfig:
    return SolverConfig(rotations=args.rotations, jobs=args.jobs)


# -- commands ----------------------------------------------------------------


def _cmd_solve(args) -> int:
    pts, _ = read_instance(args.instance)
    cfg = _cfg(args)
    t0 = time.perf_counter()
    if args.tol is not None:
        sol = solve_bisect(pts, args.tol, cfg)
    else:
        sol = solve(pts, cfg)
    dt = time.perf_counter() - t0
    rec = record_from_solution(sol, pts, None if args.no_timing else dt)
    if not verify_record(pts, json.loads(dumps17(rec))):
        print("internal error: emitted record failed re-verification", file=sys.stderr)
        return 2
    _emit(rec, args.output)
    if args.svg:
        render_svg(args.svg, pts, disks=[sol.disk1, sol.disk2])
    return 0


def _cmd_decide(args) -> int:
    pts, _ = read_instance(args.instance)
    cfg = _cfg(args)
    t0 = time.perf_counter()
    sol = feasible(pts, args.r, cfg)
    dt = time.perf_counter() - t0
    if sol is None:
        print("infeasible")
        return 1
    rec = record_from_solution(sol, pts, None if args.no_timing else dt)
    if not verify_record(pts, json.loads(dumps17(rec))):
        print("internal error: emitted record failed re-verification", file=sys.stderr)
        return 2
    _emit(rec, args.output)
    if args.svg:
        render_svg(args.svg, pts, disks=[sol.disk1, sol.disk2])
    return 0


def _cmd_oracle(args) -> int:
    pts, _ = read_instance(args.instance)
    t0 = time.perf_counter()
    sol = oracle_solve(pts)
    dt = time.perf_counter() - t0
    rec = record_from_solution(sol, pts, None if args.no_timing else dt)
    _emit(rec, args.output)
    return 0


def _cmd_hull(args) -> int:
    pts, _ = read_instance(args.instance)
    h = build_hull(sorted(set(pts)), args.r)
    if h is None:
        _emit({"exists": False, "r": args.r}, args.output)
        return 0
    rec = {
        "exists": True,
        "r": args.r,
        "vertices": [[v.x, v.y] for v in h.vertices],
        "arcs": [
            {"cx": a.center.x, "cy": a.center.y, "r": a.radius, "start": a.start, "extent": a.extent}
            for a in h.arcs
        ],
    }
    _emit(rec, args.output)
    if args.svg:
        render_svg(args.svg, pts, hulls=[h])
    return 0


def _cmd_coverage(args) -> int:
    pts, _ = read_instance(args.instance)
    h = build_hull(sorted(set(pts)), args.r)
    if h is None:
        _emit({"exists": False, "r": args.r}, args.output)
        return 0
    cov = build_coverage(h)
    rec = {
        "exists": True,
        "r": args.r,
        "arcs": [
            {"cx": a.center.x, "cy": a.center.y, "r": a.radius, "start": a.start, "extent": a.extent}
            for a in cov.arcs
        ],
    }
    _emit(rec, args.output)
    if args.svg:
        render_svg(args.svg, pts, hulls=[h], coverages=[cov])
    return 0


def generate(kind: str, n: int, seed: int) -> list[Point]:
    rng = random.Random(seed)
    if kind == "uniform":
        return [Point(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)]
    if kind == "two-cluster":
        pts = []
        for k in range(n):
            cx = -5.0 if k % 2 == 0 else 5.0
            pts.append(Point(rng.gauss(cx, 0.5), rng.gauss(0.0, 0.5)))
        return pts
    if kind == "circle":
        pts = []
        for _ in range(n):
            a = rng.uniform(0, 2 * math.pi)
            pts.append(Point(math.cos(a), math.sin(a)))
        return pts
    raise ParseError(f"unknown kind {kind!r}")


def _cmd_gen(args) -> int:
    pts = generate(args.kind, args.n, args.seed)
    rec = {
        "name": f"{args.kind}-{args.n}-{args.seed}",
        "seed": args.seed,
        "points": [[p.x, p.y] for p in pts],
    }
    _emit(rec, args.output)
    return 0


def _cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    cfg = _cfg(args)
    print(f"{'n':>9} {'mode':>8} {'seconds':>10} {'radius':>14}")
    for n in sizes:
        pts = generate(args.kind, n, args.seed)
        t0 = time.perf_counter()
        if args.r is not None:
            sol = feasible(pts, args.r, cfg)
            dt = time.perf_counter() - t0
            val = sol.radius if sol else float("nan")
            print(f"{n:>9} {'decide':>8} {dt:>10.3f} {val:>14.6g}")
        else:
            sol = solve_bisect(pts, args.tol or 1e-3, cfg)
            dt = time.perf_counter() - t0
            print(f"{n:>9} {'bisect':>8} {dt:>10.3f} {sol.radius:>14.6g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twocenter", description="Planar two-center solver")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, instance=True):
        if instance:
            p.add_argument("instance", help="instance file (text 'x y' lines or JSON)")
        p.add_argument("-o", "--output", help="write JSON here instead of stdout")
        p.add_argument("--svg", help="render an SVG figure to this path")
        p.add_argument("--no-timing", action="store_true", help="omit timing from output")
        p.add_argument("--rotations", type=int, default=24, help="rotation frames (default 24)")
        p.add_argument("--jobs", type=int, default=1, help="branch-level parallelism")
        p.add_argument("--seed", type=int, default=0, help="seed where applicable")

    p = sub.add_parser("solve", help="compute the optimal two-disk")
    common(p)
    p.add_argument("--tol", type=float, help="bisection tolerance (default: exact mode)")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("decide", help="fixed-radius feasibility")
    common(p)
    p.add_argument("--r", type=float, required=True)
    p.set_defaults(fn=_cmd_decide)

    p = sub.add_parser("oracle", help="exhaustive-partition reference (n <= 16)")
    common(p)
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("hull", help="r-circular hull of the points")
    common(p)
    p.add_argument("--r", type=float, required=True)
    p.set_defaults(fn=_cmd_hull)

    p = sub.add_parser("coverage", help="r-coverage of the points")
    common(p)
    p.add_argument("--r", type=float, required=True)
    p.set_defaults(fn=_cmd_coverage)

    p = sub.add_parser("gen", help="generate an instance")
    common(p, instance=False)
    p.add_argument("--kind", choices=["uniform", "two-cluster", "circle"], default="uniform")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("bench", help="timing table over instance sizes")
    common(p, instance=False)
    p.add_argument("--sizes", required=True, help="comma-separated sizes")
    p.add_argument("--kind", choices=["uniform", "two-cluster", "circle"], default="two-cluster")
    p.add_argument("--r", type=float, help="fixed radius: bench the decision")
    p.add_argument("--tol", type=float, help="bisection tolerance (default 1e-3)")
    p.set_defaults(fn=_cmd_bench)

    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except TwoCenterError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
