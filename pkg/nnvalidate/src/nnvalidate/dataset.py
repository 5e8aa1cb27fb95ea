"""Datasets for denoising sweeps and loaders for the upstream artifacts.

The upstream dimension-estimation pipeline emits point clouds as
header-less CSV and estimates as JSON with a "width_interval" field;
this package consumes exactly those two file formats and nothing else
from upstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import MalformedInput


@dataclass(frozen=True)
class NoisyDataset:
    """Paired clean targets and noise-mixed inputs.

    noisy = 0.5 * clean + 0.5 * eps with eps ~ N(0, sigma^2 I), so
    (noisy - 0.5 * clean) has mean 0 and variance 0.25 * sigma^2 per
    coordinate.
    """

    clean: np.ndarray
    noisy: np.ndarray
    sigma: float
    seed: int

    def __post_init__(self):
        if self.clean.shape != self.noisy.shape:
            raise MalformedInput("clean and noisy matrices must share a shape")
        if self.clean.ndim != 2 or self.clean.shape[0] < 1:
            raise MalformedInput("dataset must be a non-empty n x d matrix")

    @property
    def n(self) -> int:
        return self.clean.shape[0]

    @property
    def d(self) -> int:
        return self.clean.shape[1]


def make_dataset(points: np.ndarray, sigma: float, seed: int) -> NoisyDataset:
    """Mix Gaussian noise into a point cloud; targets stay clean.

    Deterministic for a fixed seed.
    """
    if sigma < 0:
        raise MalformedInput("sigma must be >= 0")
    clean = np.asarray(points, dtype=np.float64)
    if clean.ndim != 2:
        raise MalformedInput("points must be an n x d matrix")
    rng = np.random.default_rng(seed)
    eps = rng.normal(0.0, sigma, size=clean.shape) if sigma > 0 else np.zeros_like(clean)
    noisy = 0.5 * clean + 0.5 * eps
    return NoisyDataset(clean=clean, noisy=noisy, sigma=float(sigma), seed=int(seed))


def load_points_csv(path) -> np.ndarray:
    """Read an upstream point-cloud CSV: one row per point, no header."""
    rows = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            cells = line.split(",")
            if width is None:
                width = len(cells)
            elif len(cells) != width:
                raise MalformedInput(f"ragged row at row {lineno}")
            try:
                rows.append([float(c) for c in cells])
            except ValueError:
                raise MalformedInput(f"non-numeric cell at row {lineno}") from None
    if not rows:
        raise MalformedInput("empty point-cloud CSV")
    return np.array(rows, dtype=np.float64)


def load_width_interval(path) -> tuple[int, int]:
    """Read the recommended width interval from an upstream estimate JSON."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}") from None
    interval = obj.get("width_interval") if isinstance(obj, dict) else None
    if (not isinstance(interval, list) or len(interval) != 2
            or not all(isinstance(v, int) and v > 0 for v in interval)
            or interval[0] > interval[1]):
        raise MalformedInput('estimate JSON needs "width_interval": [lo, hi]')
    return interval[0], interval[1]


def sample_torus(q: int, n: int, ambient_dim: int, noise: float, seed: int) -> np.ndarray:
    """Sample a product of q unit circles, embedded into R^ambient_dim.

    Circle pairs occupy the first 2q coordinates (which keeps the map
    injective); any remaining coordinates are random low-frequency
    harmonics of the angles, and a seeded rotation mixes everything.
    Distinct harmonics are linearly independent functions on the torus,
    so the cloud spans all of R^ambient_dim and a narrow linear
    bottleneck is genuinely lossy.
    """
    if q < 1 or n < 1:
        raise MalformedInput("need q >= 1 and n >= 1")
    if ambient_dim < 2 * q:
        raise MalformedInput("ambient_dim must be at least 2q")
    rng = np.random.default_rng(seed)
    angles = rng.uniform(0.0, 2.0 * np.pi, size=(n, q))
    pts = np.zeros((n, ambient_dim))
    pts[:, 0:2 * q:2] = np.cos(angles)
    pts[:, 1:2 * q:2] = np.sin(angles)
    for j, freq in enumerate(_harmonic_frequencies(q, ambient_dim - 2 * q, rng)):
        phase = rng.uniform(0.0, 2.0 * np.pi)
        pts[:, 2 * q + j] = np.cos(angles @ freq + phase)
    rotation, _ = np.linalg.qr(rng.normal(size=(ambient_dim, ambient_dim)))
    pts = pts @ rotation.T
    if noise > 0:
        pts = pts + rng.normal(0.0, noise, size=pts.shape)
    return pts


def _harmonic_frequencies(q: int, count: int, rng) -> np.ndarray:
    """Distinct integer frequency vectors, none a plain unit vector.

    Distinctness keeps the harmonics linearly independent of each other
    and of the base circle coordinates, so the sampled cloud has full
    linear rank.
    """
    if count <= 0:
        return np.zeros((0, q), dtype=np.int64)
    kmax = 2
    while (2 * kmax + 1) ** q - 1 - 2 * q < count:
        kmax += 1
    grid = np.stack(np.meshgrid(*([np.arange(-kmax, kmax + 1)] * q),
                                indexing="ij"), axis=-1).reshape(-1, q)
    keep = (np.abs(grid).sum(axis=1) > 0) & ~(
        (np.abs(grid).sum(axis=1) == 1) & (np.abs(grid).max(axis=1) == 1))
    grid = grid[keep]
    return grid[rng.choice(len(grid), size=count, replace=False)]
