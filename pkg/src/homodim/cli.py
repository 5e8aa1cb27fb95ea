"""Command-line front end: sample, persist, estimate, plot, pipeline.

Exit codes: 0 success, 2 usage or parse errors, 3 capacity exceeded,
4 internal errors. Each stage logs one line.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dimension import save_estimate
from .errors import CapacityExceeded, HomodimError, InvalidSpec, MalformedInput
from .landscape import (SmoothingParams, build_landscape, count_maxima,
                        load_landscape, merge_counts, smooth)
from .persistence import load_diagrams, save_diagrams
from .pipeline import (PipelineConfig, config_from_dict, config_from_toml,
                       report_text, run_pipeline, stage_estimate,
                       stage_persist)
from .plotting import render_diagram_svg, render_landscape_svg
from .pointcloud import (MANIFOLD_KINDS, ManifoldSpec, load_points,
                         sample_manifold, save_points)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_INTERNAL = 4


def _add_sample_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=list(MANIFOLD_KINDS),
                   help="manifold kind to sample")
    p.add_argument("--q", type=int, default=0, help="number of circle factors")
    p.add_argument("--p", type=int, default=0, help="number of line factors")
    p.add_argument("--n", type=int, default=0, help="number of sample points")
    p.add_argument("--noise", type=float, default=0.0, help="Gaussian noise sigma")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")


def _add_persist_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-dim", type=int, default=10, help="max expansion dimension")
    p.add_argument("--max-edge", type=float, default=None,
                   help="scale cutoff (default: point-cloud diameter)")


def _add_landscape_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--resolution", type=int, default=1000, help="landscape grid size")
    p.add_argument("--sigma", type=float, default=2.0, help="smoothing sigma in grid steps")
    p.add_argument("--min-height", type=float, default=0.0,
                   help="ignore local maxima below this height")
    p.add_argument("--q-max", type=int, default=64, help="largest q scanned by the estimator")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="homodim",
                                 description="Estimate manifold decompositions from point clouds.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sample", help="sample a manifold to a point-cloud CSV")
    _add_sample_flags(sp)
    sp.add_argument("-o", "--out", default="points.csv", help="output CSV path")

    pp = sub.add_parser("persist", help="compute persistence diagrams for a point cloud")
    pp.add_argument("--input", required=True, help="point-cloud CSV or JSON")
    _add_persist_flags(pp)
    pp.add_argument("-o", "--out", default="diagram.json", help="output diagram path")

    ep = sub.add_parser("estimate", help="landscape counts and dimension estimate from a diagram")
    ep.add_argument("--input", required=True, help="diagram JSON")
    _add_landscape_flags(ep)
    ep.add_argument("--max-edge", type=float, default=None,
                    help="landscape cap (default: manifest max_value, else max finite diagram value)")
    ep.add_argument("-o", "--out", default="estimate.json", help="output estimate path")

    lp = sub.add_parser("plot", help="render a diagram or landscape JSON to SVG")
    lp.add_argument("--input", required=True, help="diagram or landscape JSON")
    lp.add_argument("-o", "--out", default=None, help="output SVG path (default: input stem + .svg)")

    cp = sub.add_parser("pipeline", help="run every stage from a config file")
    cp.add_argument("--config", default=None, help="TOML config file")
    cp.add_argument("--input", default=None, help="point-cloud CSV or JSON (overrides config)")
    cp.add_argument("--kind", choices=list(MANIFOLD_KINDS), default=None)
    cp.add_argument("--q", type=int, default=None)
    cp.add_argument("--p", type=int, default=None)
    cp.add_argument("--n", type=int, default=None)
    cp.add_argument("--noise", type=float, default=None)
    cp.add_argument("--seed", type=int, default=None)
    cp.add_argument("--max-dim", type=int, default=None)
    cp.add_argument("--max-edge", type=float, default=None)
    cp.add_argument("--resolution", type=int, default=None)
    cp.add_argument("--sigma", type=float, default=None)
    cp.add_argument("--min-height", type=float, default=None)
    cp.add_argument("--q-max", type=int, default=None)
    cp.add_argument("-o", "--out", default=None, help="output directory")
    return ap


# ============================================================
# Commands
# ============================================================

def cmd_sample(args) -> int:
    if args.kind is None:
        raise InvalidSpec("sample requires --kind")
    spec = ManifoldSpec(kind=args.kind, n_samples=args.n, q=args.q, p=args.p,
                        noise_sigma=args.noise, seed=args.seed)
    pc = sample_manifold(spec)
    save_points(pc, args.out, format="csv")
    print(f"sample: n={pc.n} d={pc.d} -> {args.out}")
    return EXIT_OK


def cmd_persist(args) -> int:
    cfg = PipelineConfig(input=args.input, max_dim=args.max_dim, max_edge=args.max_edge)
    pc = load_points(args.input)
    diagrams, manifest = stage_persist(pc, cfg)
    save_diagrams(diagrams, args.out)
    manifest_path = Path(args.out).with_name("manifest.json")
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=1)
        fh.write("\n")
    total = sum(int(v) for v in manifest["simplex_counts"].values())
    print(f"persist: {total} simplices, cap={manifest['max_value']:.6g} -> {args.out}")
    return EXIT_OK


def _cap_for_estimate(args, diagrams) -> float:
    """Cap priority: --max-edge flag, manifest sidecar, max finite diagram value."""
    if args.max_edge is not None:
        return args.max_edge
    manifest_path = Path(args.input).with_name("manifest.json")
    if manifest_path.exists():
        try:
            with open(manifest_path, "r", encoding="utf-8") as fh:
                manifest = json.load(fh)
            cap = float(manifest["max_value"])
            if cap > 0:
                return cap
        except (json.JSONDecodeError, KeyError, TypeError, ValueError):
            pass
    finite = [v for dg in diagrams for pair in dg.pairs
              for v in pair if v != float("inf")]
    if not finite or max(finite) <= 0:
        raise MalformedInput("cannot infer a positive cap; pass --max-edge")
    return max(finite)


def cmd_estimate(args) -> int:
    diagrams = load_diagrams(args.input)
    if not diagrams:
        raise MalformedInput(f"no diagram records in {args.input}")
    cap = _cap_for_estimate(args, diagrams)
    sp = SmoothingParams(sigma=args.sigma)
    counts = [count_maxima(smooth(build_landscape(dg, args.resolution, cap), sp),
                           args.min_height)
              for dg in diagrams]
    mc = merge_counts(counts)
    cfg = PipelineConfig(input=args.input, resolution=args.resolution, sigma=args.sigma,
                         min_height=args.min_height, q_max=args.q_max)
    de = stage_estimate(mc, cfg)
    save_estimate(de, args.out)
    sys.stdout.write(report_text(mc, de, args.q_max))
    print(f"estimate: -> {args.out}")
    return EXIT_OK


def cmd_plot(args) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON in {args.input}: {exc}") from None
    out = args.out or str(Path(args.input).with_suffix(".svg"))
    if isinstance(payload, list):
        diagrams = load_diagrams(args.input)
        finite = [v for dg in diagrams for pair in dg.pairs
                  for v in pair if v != float("inf")]
        cap = max(finite) if finite else 1.0
        svg = render_diagram_svg(diagrams, cap)
    elif isinstance(payload, dict) and "layers" in payload:
        svg = render_landscape_svg([load_landscape(args.input)])
    else:
        raise MalformedInput(f"{args.input} is neither a diagram list nor a landscape object")
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"plot: -> {out}")
    return EXIT_OK


def cmd_pipeline(args) -> int:
    flag_fields = ["input", "kind", "q", "p", "n", "noise", "seed", "max_dim",
                   "max_edge", "resolution", "sigma", "min_height", "q_max", "out"]
    overrides = {name: getattr(args, name) for name in flag_fields
                 if getattr(args, name) is not None}
    if args.config is not None:
        base_cfg = config_from_toml(args.config)
        base = {f: getattr(base_cfg, f) for f in base_cfg.__dataclass_fields__}
        base.update(overrides)
        cfg = config_from_dict(base)
    else:
        cfg = config_from_dict(overrides)
    run_pipeline(cfg, log=print)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    handlers = {
        "sample": cmd_sample,
        "persist": cmd_persist,
        "estimate": cmd_estimate,
        "plot": cmd_plot,
        "pipeline": cmd_pipeline,
    }
    try:
        return handlers[args.command](args)
    except CapacityExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (MalformedInput, InvalidSpec) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HomodimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
