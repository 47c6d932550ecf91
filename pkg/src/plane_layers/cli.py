"""Command-line front end: gen, build, verify, render, stats.

Exit codes: 0 ok, 2 usage, 3 precondition, 4 property violation, 5 internal
assertion (a reproducer dump is written and its path printed).
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction

from .centralized import build_two_disjoint_trees
from .distributed import build_k_layers
from .errors import (
    InternalAssertionError,
    PlaneLayersError,
    PreconditionError,
    UsageError,
    write_dump,
)
from .geometry import PointSet, Segment
from .mst import bottleneck, build_emst
from .render import render_svg
from .verify import gen_line_instance, verify_layers


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_points(path: str) -> PointSet:
    return PointSet.from_text(_read(path))


def _dump_json(path: str, payload: dict) -> None:
    _write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _load_layers_file(path: str) -> tuple[dict, list[list[Segment]]]:
    data = json.loads(_read(path))
    if "red" in data and "blue" in data:
        layers = [data["red"], data["blue"]]
    else:
        layers = data.get("layers", [])
    segs = [[Segment(int(u), int(v)) for u, v in layer] for layer in layers]
    return data, segs


def cmd_gen(args) -> int:
    if args.n < 1:
        raise UsageError("n must be >= 1")
    rng = random.Random(args.seed)
    if args.kind == "uniform":
        pts = _distinct_points(rng, args.n, lambda: (rng.uniform(0, 1000), rng.uniform(0, 1000)))
    elif args.kind == "clusters":
        centers = [(rng.uniform(0, 1000), rng.uniform(0, 1000)) for _ in range(args.clusters)]
        def sample():
            cx, cy = centers[rng.randrange(len(centers))]
            return (rng.gauss(cx, args.sigma), rng.gauss(cy, args.sigma))
        pts = _distinct_points(rng, args.n, sample)
    else:  # line
        ps = gen_line_instance(args.n, Fraction(args.eps)) if args.n >= 2 else None
        if ps is None:
            raise UsageError("line instances need n >= 2")
        _write(args.out, ps.to_text())
        return 0
    ps = PointSet(pts)
    _write(args.out, ps.to_text())
    return 0


def _distinct_points(rng, n, sample):
    pts: list[tuple[str, str]] = []
    seen = set()
    while len(pts) < n:
        x, y = sample()
        key = (f"{x:.6f}", f"{y:.6f}")
        if key in seen:
            continue
        seen.add(key)
        pts.append(key)
    return pts


def cmd_build(args) -> int:
    ps = _load_points(args.input)
    if args.perturb is not None:
        eps = Fraction(args.perturb) if args.perturb else None
        ps = ps.perturbed(eps)
    if args.mode == "two-tree":
        trees = build_two_disjoint_trees(ps)
        payload = trees.to_json_dict()
        payload["n"] = len(ps)
        _dump_json(args.out, payload)
        max_ratio = max(trees.max_ratio_red, trees.max_ratio_blue)
        print(f"layers=2 maxRatio={max_ratio:.6f} bound={trees.bound}")
        return 0
    beta = Fraction(args.beta) if args.beta else None
    if beta is not None and len(ps) >= 2:
        be = bottleneck(build_emst(ps), ps)
        if beta * beta < be.length_sq:
            raise PreconditionError(
                f"--beta {args.beta} is below the MST bottleneck {be.length:.6f}"
            )
    ls = build_k_layers(ps, args.k, beta)
    payload = ls.to_json_dict()
    payload["n"] = len(ps)
    _dump_json(args.out, payload)
    be_sq = bottleneck(build_emst(ps), ps).length_sq
    max_ratio = max(
        (math.sqrt(ps.seg_len_sq(e) / be_sq) for layer in ls.layers for e in layer),
        default=0.0,
    )
    bound = 12 * math.sqrt(2) * args.k
    print(f"layers={ls.k} maxRatio={max_ratio:.6f} bound={bound:.6f}")
    return 0


def cmd_verify(args) -> int:
    ps = _load_points(args.points)
    meta, layers = _load_layers_file(args.layers)
    report = verify_layers(layers, ps, flag_overlaps=args.flag_overlaps)
    payload = report.to_json_dict()
    if args.out:
        _dump_json(args.out, payload)
    allow_shared = 0
    max_ratio = None
    if meta.get("kind") == "two-tree":
        max_ratio = float(meta.get("bound", 3))
        if meta.get("shared"):
            allow_shared = 1
    elif meta.get("kind") == "distributed":
        num, den = map(int, meta["betaSq"].split("/"))
        be_sq = bottleneck(build_emst(ps), ps).length_sq if len(ps) >= 2 else None
        if be_sq:
            max_ratio = 12 * math.sqrt(2) * meta["k"] * math.sqrt(
                Fraction(num, den) / be_sq
            )
    ok = report.ok(max_ratio=max_ratio, allow_shared=allow_shared)
    print(f"plane={report.all_plane} spanning={report.all_spanning} "
          f"disjoint={len(report.duplicate_edges) <= allow_shared} "
          f"maxRatio={report.overall_max_ratio:.6f}")
    return 0 if ok else 4


def cmd_render(args) -> int:
    ps = _load_points(args.points)
    meta, layers = _load_layers_file(args.layers)
    cell = None
    if args.grid and meta.get("kind") == "distributed":
        num, den = map(int, meta["betaSq"].split("/"))
        cell = 6 * meta["k"] * math.sqrt(num / den)
    svg = render_svg(ps, layers, cell_side=cell, grid=args.grid)
    _write(args.out, svg)
    return 0


def cmd_stats(args) -> int:
    ps = _load_points(args.points)
    meta, layers = _load_layers_file(args.layers)
    be = bottleneck(build_emst(ps), ps) if len(ps) >= 2 else None
    stats = {
        "n": len(ps),
        "k": len(layers),
        "mstBottleneck": be.length if be else 0.0,
        "layers": [
            {
                "edges": len(layer),
                "bottleneck": (bottleneck(layer, ps).length if layer else 0.0),
            }
            for layer in layers
        ],
    }
    print(json.dumps(stats, indent=2, sort_keys=True))
    return 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="plane-layers",
        description="Edge-disjoint plane spanning layers with bounded bottleneck edge.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a point set file")
    g.add_argument("--kind", choices=["uniform", "clusters", "line"], default="uniform")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--clusters", type=int, default=3)
    g.add_argument("--sigma", type=float, default=30.0)
    g.add_argument("--eps", default="0.001", help="line-kind perturbation amplitude")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("build", help="construct layers from a point file")
    b.add_argument("input")
    b.add_argument("--mode", choices=["two-tree", "distributed"], default="two-tree")
    b.add_argument("--k", type=int, default=2)
    b.add_argument("--beta", default=None, help="override beta (default: MST bottleneck)")
    b.add_argument(
        "--perturb",
        nargs="?",
        const="",
        default=None,
        help="apply the deterministic perturbation first (optional epsilon)",
    )
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="verify a layers file against its points")
    v.add_argument("points")
    v.add_argument("layers")
    v.add_argument("--out", default=None, help="write the JSON report here")
    v.add_argument("--flag-overlaps", action="store_true",
                   help="also report collinear overlapping same-layer pairs")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="render points and layers to SVG")
    r.add_argument("points")
    r.add_argument("layers")
    r.add_argument("--grid", action="store_true", help="overlay the bucketing grid")
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_render)

    s = sub.add_parser("stats", help="summarize a layers file")
    s.add_argument("points")
    s.add_argument("layers")
    s.set_defaults(func=cmd_stats)
    return p


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return 3
    except InternalAssertionError as exc:
        path = write_dump(exc)
        print(f"internal assertion: {exc}\nreproducer dump: {path}", file=sys.stderr)
        return 5
    except PlaneLayersError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
