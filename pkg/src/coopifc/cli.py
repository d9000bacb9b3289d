"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 weak-interference condition
violated, 4 simulation checks failed (report still written).
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

from coopifc import __version__
from coopifc.bounds import corner_points, intersection_outer, kramer_outer, kramer_sum_bounds
from coopifc.core_model import ChannelParams, validate_channel
from coopifc.dpc_verify import SimConfig, verify_point
from coopifc.errors import CoopIFCError, NotWeakInterference
from coopifc.geometry import (
    ConvexRegion,
    Point2,
    boundary_distance,
    frontier_distance,
    halfspaces_to_region,
    is_subset,
    support,
)
from coopifc.regions import (
    DEFAULT_N_ALPHA,
    InformedTx,
    RegionSpec,
    region_boundary,
    sweep_t1,
    sweep_t2,
)

EXIT_INVALID = 2
EXIT_NOT_WEAK = 3
EXIT_CHECK_FAILED = 4
DEFAULT_TOL = 1e-3


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return format(x, ".9g")


def metadata(params: ChannelParams, **extra) -> dict:
    meta = {
        "tool": "coopifc",
        "version": __version__,
        "log_base": 2,
        "units": "bits per channel use",
        "params": params.as_dict(),
        "a2": params.a**2,
        "b2": params.b**2,
    }
    meta.update(extra)
    return meta


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) if isinstance(v, float) else v for v in row])


def write_json(path: Path, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=2, sort_keys=False)
        fh.write("\n")


def region_to_json(region: ConvexRegion, meta: dict) -> dict:
    return {"metadata": meta, "vertices": region.as_list()}


def region_from_json(obj: dict) -> ConvexRegion:
    return ConvexRegion(tuple(Point2(float(x), float(y)) for x, y in obj["vertices"]))


def write_curve(path_stem: Path, fmt_: str, header, rows, meta: dict) -> Path:
    if fmt_ == "json":
        path = path_stem.with_suffix(".json")
        write_json(path, {"metadata": meta, "columns": list(header), "rows": [list(r) for r in rows]})
    else:
        path = path_stem.with_suffix(".csv")
        write_csv(path, header, rows)
    return path


def _gain(args, name: str) -> float:
    amp, sq = getattr(args, name), getattr(args, name + "2")
    if sq is not None:
        if sq < 0:
            raise UsageError(f"--{name}2 must be nonnegative")
        return math.sqrt(sq)
    return 0.0 if amp is None else amp


def _channel(args) -> ChannelParams:
    return ChannelParams(a=_gain(args, "a"), b=_gain(args, "b"), p1=args.p1, p2=args.p2)


def _say(args, msg: str) -> None:
    if not args.quiet:
        print(msg)


def cmd_region(args) -> int:
    params = _channel(args)
    tx = InformedTx(args.tx)
    n = args.points
    if tx is InformedTx.T1:
        alphas, r1, r2 = sweep_t1(params, n)
    else:
        alphas, r1, r2 = sweep_t2(params, n)
    region = region_boundary(RegionSpec(params, tx, n))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    meta = metadata(
        params,
        informed_tx=tx.name,
        n_alpha=n,
        label="Gaussian-input capacity region",
        split_parameter="alpha" if tx is InformedTx.T1 else "beta",
    )
    rows = [(float(a), float(x), float(y)) for a, x, y in zip(alphas, r1, r2)]
    stem = out / f"region_t{args.tx}"
    curve = write_curve(stem, args.format, ("alpha", "R1", "R2"), rows, meta)
    hull_path = out / f"region_t{args.tx}_hull.json"
    write_json(hull_path, region_to_json(region, meta))
    _say(args, f"wrote {curve} and {hull_path} ({len(region)} hull vertices)")
    return 0


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    if not isinstance(cfg, dict):
        raise UsageError(f"{path}: top-level JSON value must be an object")
    for key in ("p1", "p2", "a2", "b2"):
        if key not in cfg:
            raise UsageError(f"{path}: missing required key {key!r}")
        if not isinstance(cfg[key], (int, float)) or isinstance(cfg[key], bool):
            raise UsageError(f"{path}: {key!r} must be a number")
    for key in ("n_alpha", "seed"):
        if key in cfg and (not isinstance(cfg[key], int) or isinstance(cfg[key], bool)):
            raise UsageError(f"{path}: {key!r} must be an integer")
    if cfg["a2"] < 0 or cfg["b2"] < 0:
        raise UsageError(f"{path}: a2 and b2 must be nonnegative")
    return cfg


def compare_regions(params: ChannelParams, n_alpha: int = DEFAULT_N_ALPHA, tol: float = DEFAULT_TOL):
    """Region comparison data for one channel, as plain Python objects."""
    validate_channel(params, require_weak_a=True, require_weak_b=True)
    regions = {
        "t1": region_boundary(RegionSpec(params, InformedTx.T1, n_alpha)),
        "t2": region_boundary(RegionSpec(params, InformedTx.T2, n_alpha)),
        "intersection": intersection_outer(params, n_alpha),
        "kramer": halfspaces_to_region(kramer_outer(params)),
    }
    A, B = corner_points(params)
    subset = {
        f"{i}_subset_of_{j}": is_subset(regions[i], regions[j], tol)
        for i, j in itertools.permutations(regions, 2)
    }
    corners = {
        "A": {
            "R1": A.r1,
            "R2": A.r2,
            "dist_t1_frontier": frontier_distance(regions["t1"], A),
            "dist_kramer_boundary": boundary_distance(regions["kramer"], A),
        },
        "B": {
            "R1": B.r1,
            "R2": B.r2,
            "dist_t2_frontier": frontier_distance(regions["t2"], B),
            "dist_kramer_boundary": boundary_distance(regions["kramer"], B),
        },
    }
    s_a, s_b = kramer_sum_bounds(params)
    summary = {
        "tolerance": tol,
        "subset": subset,
        "max_sum_rate": {k: support(r, 1.0, 1.0) for k, r in regions.items()},
        "kramer_sum_bounds": {"genie_at_rx1": s_a, "genie_at_rx2": s_b},
        "corners_on_boundaries": all(
            d <= tol for c in corners.values() for k, d in c.items() if k.startswith("dist")
        ),
    }
    return regions, corners, summary


def cmd_compare(args) -> int:
    cfg = load_config(args.config)
    params = ChannelParams.from_squared(cfg["a2"], cfg["b2"], cfg["p1"], cfg["p2"])
    n_alpha = cfg.get("n_alpha", DEFAULT_N_ALPHA)
    if n_alpha < 2:
        raise UsageError("n_alpha must be at least 2")
    regions, corners, summary = compare_regions(params, n_alpha, args.tol)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    meta = metadata(params, n_alpha=n_alpha, seed=cfg.get("seed"))
    for name, region in regions.items():
        write_curve(out / name, args.format, ("R1", "R2"), [tuple(v) for v in region.vertices],
                    dict(meta, curve=name))
    write_json(out / "corners.json", {"metadata": meta, **corners})
    write_json(out / "summary.json", {"metadata": meta, **summary})
    _say(
        args,
        f"kramer within intersection: {summary['subset']['kramer_subset_of_intersection']}; "
        f"corners on boundaries: {summary['corners_on_boundaries']}",
    )
    return 0


def cmd_simulate(args) -> int:
    params = _channel(args)
    cfg = SimConfig(n_samples=args.samples, seed=args.seed)
    report = verify_point(params, args.alpha, cfg, args.tol).to_dict()
    report["metadata"].update(tool="coopifc", version=__version__)
    report["timestamp"] = datetime.now(timezone.utc).isoformat()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "simulate_report.json"
    write_json(path, report)
    _say(args, f"wrote {path}: {'PASS' if report['passed'] else 'FAIL'} {report['checks']}")
    return 0 if report["passed"] else EXIT_CHECK_FAILED


def parse_range(text: str) -> list[float]:
    """``v`` or inclusive ``start:stop:step``."""
    parts = text.split(":")
    try:
        nums = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"bad range {text!r}")
    if len(nums) == 1:
        return nums
    if len(nums) != 3 or nums[2] <= 0:
        raise UsageError(f"range must be start:stop:step with step > 0, got {text!r}")
    start, stop, step = nums
    if stop < start:
        return []
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


SWEEP_HEADER = (
    "p1", "p2", "a", "b", "status",
    "A_R1", "A_R2", "B_R1", "B_R2",
    "kramer_sum_genie_rx1", "kramer_sum_genie_rx2", "max_sum_rate_intersection",
)


def sweep_cell(cell) -> tuple:
    p1, p2, a, b, n_alpha = cell
    params = ChannelParams(a=a, b=b, p1=p1, p2=p2)
    s_a, s_b = kramer_sum_bounds(params)
    try:
        validate_channel(params, require_weak_a=True, require_weak_b=True)
    except NotWeakInterference:
        return (p1, p2, a, b, "not_weak", "", "", "", "", s_a, s_b, "")
    A, B = corner_points(params)
    best = support(intersection_outer(params, n_alpha), 1.0, 1.0)
    return (p1, p2, a, b, "ok", A.r1, A.r2, B.r1, B.r2, s_a, s_b, best)


def _grid(args, name):
    amp, sq = getattr(args, name), getattr(args, name + "2")
    if sq is not None:
        vals = parse_range(sq)
        if any(v < 0 for v in vals):
            raise UsageError(f"--{name}2 values must be nonnegative")
        return [math.sqrt(v) for v in vals]
    return parse_range(amp if amp is not None else "0")


def cmd_sweep(args) -> int:
    axes = [parse_range(args.p1), parse_range(args.p2), _grid(args, "a"), _grid(args, "b")]
    cells = [(*c, args.points) for c in itertools.product(*axes)]
    if not cells:
        raise UsageError("sweep grid is empty")
    for c in cells:
        validate_channel(ChannelParams(a=c[2], b=c[3], p1=c[0], p2=c[1]))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(sweep_cell, cells))
    else:
        rows = [sweep_cell(c) for c in cells]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "sweep.csv"
    write_csv(path, SWEEP_HEADER, rows)
    _say(args, f"wrote {path} ({len(rows)} rows)")
    return 0


def _global_flags(parser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--out", default=d("."), help="output directory")
    parser.add_argument("--format", choices=("csv", "json"), default=d("csv"))
    parser.add_argument("--quiet", action="store_true", default=d(False))


def _gain_flags(parser, kind=float, default_help="0") -> None:
    for g in ("a", "b"):
        grp = parser.add_mutually_exclusive_group()
        grp.add_argument(f"--{g}", type=kind, help=f"cross gain {g} (amplitude, default {default_help})")
        grp.add_argument(f"--{g}2", type=kind, help=f"squared cross gain {g}^2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coopifc",
        description="Capacity regions and outer bounds of Gaussian weak interference "
        "channels with one informed transmitter.",
    )
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("region", help="sweep one informed-transmitter capacity region")
    _global_flags(p, suppress=True)
    p.add_argument("--tx", type=int, choices=(1, 2), required=True)
    p.add_argument("--p1", type=float, required=True)
    p.add_argument("--p2", type=float, required=True)
    _gain_flags(p)
    p.add_argument("--points", type=int, default=DEFAULT_N_ALPHA, help="alpha grid size")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("compare", help="C^T1, C^T2, their intersection and Kramer's bound")
    _global_flags(p, suppress=True)
    p.add_argument("config", help="JSON file with p1, p2, a2, b2 [, n_alpha, seed]")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="containment tolerance")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("simulate", help="verify dirty-paper-coding rates at one split")
    _global_flags(p, suppress=True)
    p.add_argument("--p1", type=float, required=True)
    p.add_argument("--p2", type=float, required=True)
    _gain_flags(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=0.02, help="Monte-Carlo tolerance in bits")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="batch comparison over a channel grid")
    _global_flags(p, suppress=True)
    for name in ("p1", "p2"):
        p.add_argument(f"--{name}", required=True, help="value or start:stop:step")
    _gain_flags(p, kind=str, default_help="0; value or start:stop:step")
    p.add_argument("--points", type=int, default=DEFAULT_N_ALPHA)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "points", DEFAULT_N_ALPHA) < 2:
        parser.error("--points must be at least 2")
    if getattr(args, "alpha", 0.0) is not None and not 0.0 <= getattr(args, "alpha", 0.0) <= 1.0:
        parser.error("--alpha must lie in [0, 1]")
    try:
        return args.func(args)
    except NotWeakInterference as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_WEAK
    except (UsageError, CoopIFCError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
