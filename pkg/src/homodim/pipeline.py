"""End-to-end pipeline: points -> filtration -> persistence -> landscape
-> estimate -> plots, with every intermediate written to disk.

Artifacts per run directory:
    points.csv        the point cloud (CSV, no header)
    diagram.json      all persistence diagrams, ordered by (k, birth, death)
    manifest.json     parameters, simplex counts, cap, timings
    landscape_k*.json smoothed landscape per homology dimension
    estimate.json     the decomposition estimate
    summary.txt       human-readable report
    diagram.svg, landscape.svg
    failure.json      written only when a stage fails

All JSON artifacts except the manifest are byte-identical across runs
with the same configuration and seed; the manifest carries wall-clock
timings and is the single intentionally nondeterministic artifact.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, fields
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .dimension import (DecompositionEstimate, HomologyCounts, estimate,
                        reconcile_single_q, save_estimate)
from .errors import HomodimError, InvalidSpec, MalformedInput
from .filtration import FiltrationParams, build_filtration
from .landscape import (MaximaCount, SmoothingParams, build_landscape,
                        count_maxima, merge_counts, save_landscape, smooth)
from .persistence import boundary_matrix, diagram, reduce, save_diagrams
from .plotting import render_diagram_svg, render_landscape_svg
from .pointcloud import (ManifoldSpec, PointCloud, load_points,
                         pairwise_distances, sample_manifold, save_points)


# ============================================================
# Configuration
# ============================================================

@dataclass(frozen=True)
class PipelineConfig:
    """Run configuration; unknown keys in config files are rejected.

    input points come either from `input` (a CSV/JSON path) or from the
    manifold sampler fields (kind/q/p/n/noise/seed). max_edge defaults to
    the point-cloud diameter when unset.
    """

    input: str | None = None
    kind: str | None = None
    q: int = 0
    p: int = 0
    n: int = 0
    noise: float = 0.0
    seed: int = 0
    max_dim: int = 10
    max_edge: float | None = None
    resolution: int = 1000
    sigma: float = 2.0
    min_height: float = 0.0
    q_max: int = 64
    out: str = "homodim_out"

    def __post_init__(self):
        if self.input is None and self.kind is None:
            raise InvalidSpec("config needs either an input path or a manifold kind")
        if self.max_dim < 0:
            raise InvalidSpec("max_dim must be >= 0")
        if self.max_edge is not None and not (self.max_edge > 0):
            raise InvalidSpec("max_edge must be > 0")
        if self.resolution < 2:
            raise InvalidSpec("resolution must be >= 2")
        if not (self.sigma > 0):
            raise InvalidSpec("sigma must be > 0")
        if self.min_height < 0:
            raise InvalidSpec("min_height must be >= 0")
        if self.q_max < 1:
            raise InvalidSpec("q_max must be >= 1")


def config_from_toml(path) -> PipelineConfig:
    """Load a PipelineConfig from a TOML file, rejecting unknown keys."""
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise MalformedInput(f"invalid TOML in {path}: {exc}") from None
    return config_from_dict(data)


def config_from_dict(data: dict) -> PipelineConfig:
    known = {f.name for f in fields(PipelineConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise MalformedInput(f"unknown config key {unknown[0]!r}")
    return PipelineConfig(**data)


def manifold_spec_from_config(cfg: PipelineConfig) -> ManifoldSpec:
    if cfg.kind is None:
        raise InvalidSpec("no manifold kind configured")
    return ManifoldSpec(
        kind=cfg.kind,
        n_samples=cfg.n,
        q=cfg.q,
        p=cfg.p,
        noise_sigma=cfg.noise,
        seed=cfg.seed,
    )


# ============================================================
# Stages
# ============================================================

def stage_points(cfg: PipelineConfig) -> PointCloud:
    """Load `input` or sample the configured manifold."""
    if cfg.input is not None:
        return load_points(cfg.input)
    return sample_manifold(manifold_spec_from_config(cfg))


def stage_persist(pc: PointCloud, cfg: PipelineConfig) -> tuple[list, dict]:
    """Filtration plus reduction; returns (diagrams, manifest dict).

    Homology is reported for k < max_dim: classes of dimension max_dim
    can never die without (max_dim+1)-simplices and are not meaningful.
    """
    dm = pairwise_distances(pc)
    max_edge = cfg.max_edge if cfg.max_edge is not None else max(pc.diameter(), 1e-300)
    effective_dim = min(cfg.max_dim, pc.n - 1)
    t0 = time.perf_counter()
    filt = build_filtration(dm, FiltrationParams(max_dim=effective_dim, max_edge=max_edge))
    t1 = time.perf_counter()
    bm = boundary_matrix(filt)
    _, pairs = reduce(bm)
    t2 = time.perf_counter()
    top_k = max(effective_dim - 1, 0)
    diagrams = [diagram(pairs, k) for k in range(top_k + 1)]
    manifest = {
        "n_points": pc.n,
        "ambient_dim": pc.d,
        "params": {
            "max_dim": cfg.max_dim,
            "max_edge": max_edge,
            "resolution": cfg.resolution,
            "sigma": cfg.sigma,
            "min_height": cfg.min_height,
            "q_max": cfg.q_max,
            "seed": cfg.seed,
        },
        "simplex_counts": {str(k): v for k, v in sorted(filt.dimension_counts().items())},
        "max_value": filt.max_value,
        "timings_s": {"filtration": t1 - t0, "reduction": t2 - t1},
    }
    return diagrams, manifest


def stage_landscapes(diagrams: list, cap: float, cfg: PipelineConfig) -> tuple[list, MaximaCount]:
    """Build, smooth, and count maxima of the landscape for every k."""
    sp = SmoothingParams(sigma=cfg.sigma)
    landscapes = []
    counts = []
    for dg in diagrams:
        pl = smooth(build_landscape(dg, cfg.resolution, cap), sp)
        landscapes.append(pl)
        counts.append(count_maxima(pl, cfg.min_height))
    return landscapes, merge_counts(counts)


def stage_estimate(mc: MaximaCount, cfg: PipelineConfig) -> DecompositionEstimate:
    top_k = max(mc.per_dimension) if mc.per_dimension else 0
    counts = tuple(mc.per_dimension.get(k, 0) for k in range(max(top_k, 1) + 1))
    return estimate(HomologyCounts(counts), q_max=cfg.q_max)


def report_text(mc: MaximaCount, de: DecompositionEstimate, q_max: int = 64) -> str:
    """Counts table plus the estimate, one line per reported quantity."""
    ks = sorted(mc.per_dimension)
    lines = []
    lines.append("representative counts")
    lines.append("  " + "  ".join(f"H_{k}" for k in ks))
    lines.append("  " + "  ".join(f"{mc.per_dimension[k]:>3d}" for k in ks))
    lines.append("")
    lines.append(f"p (connected components) = {de.p}")
    for qe in de.q_estimates:
        note = "" if mc.per_dimension.get(qe.k, 0) > 0 else "  (no homology observed; factor omitted)"
        lines.append(f"q | H_{qe.k} = {qe.q} +/-{qe.residual}{note}")
    lines.append(f"dim U = {de.dim_u} +/-{de.uncertainty}")
    lines.append(f"recommended width interval = [{de.width_interval[0]}, {de.width_interval[1]}]")
    counts_tuple = tuple(mc.per_dimension.get(k, 0) for k in range(max(ks) + 1)) if ks else (0,)
    try:
        single_q, single_res = reconcile_single_q(HomologyCounts(counts_tuple), q_max)
        lines.append(f"single-q reconciliation: q = {single_q}, residual sum = {single_res}")
    except (InvalidSpec, HomodimError):
        pass
    return "\n".join(lines) + "\n"


# ============================================================
# Orchestration
# ============================================================

def run_pipeline(cfg: PipelineConfig, log=lambda msg: None) -> dict:
    """Run every stage, writing artifacts into cfg.out.

    On failure, artifacts produced so far stay in place and
    failure.json records the stage and error before the exception
    re-raises.

    Returns a dict with the counts, estimate, and artifact paths.
    """
    outdir = Path(cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)
    stage = "points"
    try:
        pc = stage_points(cfg)
        save_points(pc, outdir / "points.csv", format="csv")
        log(f"points: n={pc.n} d={pc.d}")

        stage = "persist"
        diagrams, manifest = stage_persist(pc, cfg)
        save_diagrams(diagrams, outdir / "diagram.json")
        with open(outdir / "manifest.json", "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, sort_keys=True, indent=1)
            fh.write("\n")
        log(f"persist: {sum(int(v) for v in manifest['simplex_counts'].values())} simplices, "
            f"cap={manifest['max_value']:.6g}")

        stage = "landscape"
        cap = manifest["max_value"]
        if not (cap > 0):
            raise InvalidSpec("filtration has no positive scale; cannot build landscapes")
        landscapes, mc = stage_landscapes(diagrams, cap, cfg)
        for pl in landscapes:
            save_landscape(pl, outdir / f"landscape_k{pl.k_homology}.json")
        log("landscape: counts " + json.dumps(mc.per_dimension, sort_keys=True))

        stage = "estimate"
        de = stage_estimate(mc, cfg)
        save_estimate(de, outdir / "estimate.json")
        with open(outdir / "summary.txt", "w", encoding="utf-8") as fh:
            fh.write(report_text(mc, de, cfg.q_max))
        log(f"estimate: p={de.p} dim_u={de.dim_u} width={list(de.width_interval)}")

        stage = "plot"
        with open(outdir / "diagram.svg", "w", encoding="utf-8") as fh:
            fh.write(render_diagram_svg(diagrams, cap))
        with open(outdir / "landscape.svg", "w", encoding="utf-8") as fh:
            fh.write(render_landscape_svg(landscapes))
        log("plot: diagram.svg landscape.svg")
    except Exception as exc:
        with open(outdir / "failure.json", "w", encoding="utf-8") as fh:
            json.dump({"stage": stage, "error": f"{type(exc).__name__}: {exc}"}, fh, sort_keys=True)
            fh.write("\n")
        raise
    return {
        "out": str(outdir),
        "counts": mc.per_dimension,
        "estimate": de,
        "cap": cap,
    }
