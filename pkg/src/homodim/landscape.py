"""Persistence landscapes: tent functions, layers, smoothing, maxima counts.

A diagram point (b, d) contributes the tent rising from b to the midpoint
and falling back to d. The landscape layer m is the pointwise m-th largest
tent value, sampled on a uniform grid over [0, cap]. Essential classes
(death = infinity) are capped at the maximum finite filtration value
before the tents are built.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePair, InvalidSpec
from .persistence import PersistenceDiagram


# ============================================================
# Types
# ============================================================

@dataclass(frozen=True)
class TentFunction:
    """Piecewise-linear bump of a single finite pair.

    Evaluates to x - birth on (birth, mid], death - x on (mid, death),
    and 0 elsewhere; the peak sits at the pair's midpoint.
    """

    birth: float
    death: float

    def __post_init__(self):
        if not (self.birth < self.death) or not math.isfinite(self.death):
            raise DegeneratePair(f"tent needs finite birth < death, got ({self.birth}, {self.death})")

    @property
    def peak(self) -> tuple[float, float]:
        return ((self.birth + self.death) / 2.0, (self.death - self.birth) / 2.0)

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        up = x - self.birth
        down = self.death - x
        return np.maximum(np.minimum(up, down), 0.0)


@dataclass(frozen=True, eq=False)
class PersistenceLandscape:
    """Sampled landscape layers of one homology dimension.

    layers[m] holds the (m+1)-th largest tent value at each grid point;
    layers stop at the last one that is not identically zero.
    """

    k_homology: int
    grid: np.ndarray
    layers: np.ndarray  # (n_layers, resolution); possibly 0 layers
    cap: float

    @property
    def resolution(self) -> int:
        return len(self.grid)

    @property
    def n_layers(self) -> int:
        return self.layers.shape[0]

    def to_json_dict(self) -> dict:
        return {
            "k": self.k_homology,
            "grid": [float(x) for x in self.grid],
            "layers": [[float(v) for v in row] for row in self.layers],
            "cap": float(self.cap),
        }


@dataclass(frozen=True)
class SmoothingParams:
    """Gaussian kernel G(x) = exp(-x^2 / 2 sigma^2) / sqrt(2 pi sigma^2).

    sigma is measured in grid-index units. The kernel is truncated at
    +/- 4 sigma and renormalized to sum 1.
    """

    sigma: float = 2.0

    def __post_init__(self):
        if not (self.sigma > 0):
            raise InvalidSpec("sigma must be > 0")

    def kernel(self) -> np.ndarray:
        radius = int(math.ceil(4.0 * self.sigma))
        x = np.arange(-radius, radius + 1, dtype=np.float64)
        weights = np.exp(-(x * x) / (2.0 * self.sigma * self.sigma))
        return weights / weights.sum()


@dataclass(frozen=True)
class MaximaCount:
    """Local-maxima counts keyed by homology dimension."""

    per_dimension: dict

    def total(self) -> int:
        return sum(self.per_dimension.values())


# ============================================================
# Operations
# ============================================================

def tent(pair: tuple[float, float]) -> TentFunction:
    """Tent function of a finite (birth, death) pair.

    Raises:
        DegeneratePair: birth >= death.
    """
    birth, death = pair
    return TentFunction(float(birth), float(death))


def build_landscape(dg: PersistenceDiagram, resolution: int, cap: float) -> PersistenceLandscape:
    """Sample the landscape of a diagram on [0, cap].

    Essential pairs are replaced by (birth, cap) before tents are built;
    pairs degenerate after capping (birth >= cap) contribute nothing.
    """
    if resolution < 2:
        raise InvalidSpec("resolution must be >= 2")
    if not (cap > 0) or not math.isfinite(cap):
        raise InvalidSpec("cap must be finite and positive")
    grid = np.linspace(0.0, float(cap), resolution)
    finite = []
    for b, d in dg.pairs:
        if math.isfinite(d) and d > cap:
            raise InvalidSpec(f"finite death {d} exceeds cap {cap}")
        d = min(d, cap)  # caps the essential (infinite-death) pairs
        if b < d:
            finite.append((b, d))
    if not finite:
        return PersistenceLandscape(k_homology=dg.k, grid=grid, layers=np.zeros((0, resolution)), cap=float(cap))
    births = np.array([b for b, _ in finite])[:, None]
    deaths = np.array([d for _, d in finite])[:, None]
    tents = np.maximum(np.minimum(grid[None, :] - births, deaths - grid[None, :]), 0.0)
    layers = -np.sort(-tents, axis=0)
    nonzero = np.nonzero(layers.max(axis=1) > 0.0)[0]
    last = nonzero[-1] + 1 if len(nonzero) else 0
    return PersistenceLandscape(k_homology=dg.k, grid=grid, layers=layers[:last], cap=float(cap))


def smooth(pl: PersistenceLandscape, sp: SmoothingParams = SmoothingParams()) -> PersistenceLandscape:
    """Convolve each layer with the truncated Gaussian kernel.

    Boundaries are handled by edge replication; the grid is unchanged.
    """
    kernel = sp.kernel()
    radius = (len(kernel) - 1) // 2
    if pl.n_layers == 0:
        return pl
    out = np.empty_like(pl.layers)
    for m in range(pl.n_layers):
        padded = np.pad(pl.layers[m], radius, mode="edge")
        out[m] = np.convolve(padded, kernel, mode="valid")
    return PersistenceLandscape(k_homology=pl.k_homology, grid=pl.grid, layers=out, cap=pl.cap)


def count_maxima(pl: PersistenceLandscape, min_height: float = 0.0) -> MaximaCount:
    """Count strict interior local maxima across all layers.

    A sample counts when its value exceeds both plateau-adjacent
    neighbors and is at least min_height; a plateau of equal values
    counts once, at its midpoint sample. Grid endpoints never count.
    """
    if min_height < 0:
        raise InvalidSpec("min_height must be >= 0")
    total = 0
    for m in range(pl.n_layers):
        total += _count_layer_maxima(pl.layers[m], min_height)
    return MaximaCount(per_dimension={pl.k_homology: total})


def _count_layer_maxima(y: np.ndarray, min_height: float) -> int:
    # collapse equal-value runs, then compare each interior run with its
    # plateau-adjacent neighbors
    values = []
    lengths = []
    for v in y:
        if values and v == values[-1]:
            lengths[-1] += 1
        else:
            values.append(float(v))
            lengths.append(1)
    count = 0
    for r in range(1, len(values) - 1):
        if values[r] > values[r - 1] and values[r] > values[r + 1] and values[r] >= min_height:
            count += 1
    return count


def merge_counts(counts: list[MaximaCount]) -> MaximaCount:
    """Combine per-dimension counts from several landscapes."""
    merged: dict[int, int] = {}
    for mc in counts:
        for k, c in mc.per_dimension.items():
            merged[k] = merged.get(k, 0) + c
    return MaximaCount(per_dimension=merged)


# ============================================================
# JSON round trip
# ============================================================

def save_landscape(pl: PersistenceLandscape, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(pl.to_json_dict(), fh, sort_keys=True)
        fh.write("\n")


def load_landscape(path) -> PersistenceLandscape:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return PersistenceLandscape(
        k_homology=int(obj["k"]),
        grid=np.array(obj["grid"], dtype=np.float64),
        layers=np.array(obj["layers"], dtype=np.float64).reshape(len(obj["layers"]), -1)
        if obj["layers"] else np.zeros((0, len(obj["grid"]))),
        cap=float(obj["cap"]),
    )
