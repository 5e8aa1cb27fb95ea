"""Point-cloud loading, synthetic manifold sampling, and pairwise distances.

The sampler realizes products of circles and line segments: each circle
factor is embedded in its own coordinate plane of the ambient space, so a
product with q circle factors and p line factors lives in R^(2q + p).
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import InvalidSpec, MalformedInput

MANIFOLD_KINDS = ("circle", "torus_product", "euclidean_factor", "product", "sphere")


# ============================================================
# Types
# ============================================================

@dataclass(frozen=True, eq=False)
class PointCloud:
    """A finite set of points in R^d.

    Attributes:
        points: (n, d) float array; rows are points.
    """

    points: np.ndarray

    def __post_init__(self):
        try:
            pts = np.asarray(self.points, dtype=np.float64)
        except (ValueError, TypeError):
            raise MalformedInput("point rows must be numeric and of equal length") from None
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise MalformedInput("point cloud must be a non-empty 2d array")
        if not np.all(np.isfinite(pts)):
            raise MalformedInput("point cloud contains non-finite coordinates")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def has_duplicates(self) -> bool:
        """True when at least two rows coincide exactly."""
        return len(np.unique(self.points, axis=0)) < self.n

    def diameter(self) -> float:
        """Largest pairwise distance; 0 for a single point."""
        if self.n == 1:
            return 0.0
        return float(pdist(self.points).max())


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric matrix of pairwise distances with zero diagonal."""

    entries: np.ndarray
    metric: str = "euclidean"

    def __post_init__(self):
        ent = np.asarray(self.entries, dtype=np.float64)
        if ent.ndim != 2 or ent.shape[0] != ent.shape[1]:
            raise MalformedInput("distance matrix must be square")
        if np.any(np.diag(ent) != 0.0):
            raise MalformedInput("distance matrix diagonal must be zero")
        if not np.array_equal(ent, ent.T):
            raise MalformedInput("distance matrix must be symmetric")
        if np.any(ent < 0.0):
            raise MalformedInput("distances must be non-negative")
        object.__setattr__(self, "entries", ent)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def min_positive(self) -> float:
        """Smallest off-diagonal entry, the natural filtration step."""
        if self.n == 1:
            return 0.0
        iu = np.triu_indices(self.n, 1)
        return float(self.entries[iu].min())


@dataclass(frozen=True)
class ManifoldSpec:
    """Description of a synthetic sample from a product manifold.

    kind selects the family: a unit circle, a product of q circles
    (torus_product), p unit intervals (euclidean_factor), a mixed
    product(q, p), or a round sphere S^dim.
    """

    kind: str
    n_samples: int
    q: int = 0
    p: int = 0
    dim: int = 0
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in MANIFOLD_KINDS:
            raise InvalidSpec(f"unknown manifold kind {self.kind!r}")
        if self.n_samples < 1:
            raise InvalidSpec("n_samples must be at least 1")
        if self.noise_sigma < 0:
            raise InvalidSpec("noise_sigma must be non-negative")
        if self.kind == "torus_product" and self.q < 1:
            raise InvalidSpec("torus_product needs q >= 1")
        if self.kind == "euclidean_factor" and self.p < 1:
            raise InvalidSpec("euclidean_factor needs p >= 1")
        if self.kind == "product" and self.q + self.p == 0:
            raise InvalidSpec("product needs q + p >= 1")
        if self.kind == "sphere" and self.dim < 1:
            raise InvalidSpec("sphere needs dim >= 1")

    def factors(self) -> tuple[int, int]:
        """Circle and line factor counts (q, p) for the product kinds."""
        if self.kind == "circle":
            return 1, 0
        if self.kind == "torus_product":
            return self.q, 0
        if self.kind == "euclidean_factor":
            return 0, self.p
        if self.kind == "product":
            return self.q, self.p
        raise InvalidSpec("sphere is not a circle/line product")

    def ambient_dim(self) -> int:
        if self.kind == "sphere":
            return self.dim + 1
        q, p = self.factors()
        return 2 * q + p


# ============================================================
# Operations
# ============================================================

def load_points(path, format: str | None = None) -> PointCloud:
    """Read a point cloud from CSV (no header) or JSON {"points": [...]}.

    Raises:
        MalformedInput: empty file, ragged rows, or non-numeric cells,
            with the offending row/column in the message.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    fmt = format
    if fmt is None:
        # infer: suffix first, then leading character of the content
        if str(path).endswith(".json") or text.lstrip()[:1] == "{":
            fmt = "json"
        else:
            fmt = "csv"
    if fmt not in ("csv", "json"):
        raise MalformedInput(f"unknown format {fmt!r}")
    if fmt == "csv":
        return _parse_csv(text)
    return _parse_json(text)


def _parse_csv(text: str) -> PointCloud:
    rows = []
    width = None
    lineno = 0
    for raw in text.splitlines():
        lineno += 1
        line = raw.strip()
        if not line:
            continue
        cells = line.split(",")
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise MalformedInput(f"ragged row at row {lineno}: expected {width} columns, got {len(cells)}")
        values = []
        for col, cell in enumerate(cells, start=1):
            try:
                values.append(float(cell))
            except ValueError:
                raise MalformedInput(f"non-numeric cell at row {lineno}, column {col}: {cell.strip()!r}") from None
        rows.append(values)
    if not rows:
        raise MalformedInput("empty input: no data rows")
    return PointCloud(np.array(rows, dtype=np.float64))


def _parse_json(text: str) -> PointCloud:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "points" not in obj:
        raise MalformedInput('JSON input must be an object with a "points" key')
    pts = obj["points"]
    if not isinstance(pts, list) or not pts:
        raise MalformedInput('"points" must be a non-empty list of rows')
    width = None
    for i, row in enumerate(pts, start=1):
        if not isinstance(row, list):
            raise MalformedInput(f'"points" row {i} is not a list')
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MalformedInput(f"ragged row at row {i}: expected {width} columns, got {len(row)}")
        for col, cell in enumerate(row, start=1):
            if not isinstance(cell, (int, float)) or isinstance(cell, bool):
                raise MalformedInput(f"non-numeric cell at row {i}, column {col}")
    return PointCloud(np.array(pts, dtype=np.float64))


def save_points(pc: PointCloud, path, format: str = "csv") -> None:
    """Write a point cloud as header-less CSV or as JSON {"points": [...]}."""
    if format == "csv":
        lines = [",".join(repr(float(x)) for x in row) for row in pc.points]
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    elif format == "json":
        with open(path, "w", encoding="utf-8") as fh:
            json.dump({"points": [[float(x) for x in row] for row in pc.points]}, fh)
            fh.write("\n")
    else:
        raise MalformedInput(f"unknown format {format!r}")


def sample_manifold(spec: ManifoldSpec) -> PointCloud:
    """Draw a deterministic sample from the manifold described by spec.

    Circle factors are sampled uniformly in angle on unit circles, each
    occupying its own coordinate plane; line factors uniformly on [0, 1];
    spheres uniformly on S^dim. Isotropic Gaussian noise of scale
    noise_sigma is added afterwards.
    """
    rng = np.random.default_rng(spec.seed)
    n = spec.n_samples
    if spec.kind == "sphere":
        raw = rng.standard_normal((n, spec.dim + 1))
        norms = np.linalg.norm(raw, axis=1, keepdims=True)
        # resample the (measure-zero) degenerate rows rather than dividing by 0
        while np.any(norms == 0.0):
            bad = norms[:, 0] == 0.0
            raw[bad] = rng.standard_normal((int(bad.sum()), spec.dim + 1))
            norms = np.linalg.norm(raw, axis=1, keepdims=True)
        pts = raw / norms
    else:
        q, p = spec.factors()
        cols = []
        if q:
            angles = rng.uniform(0.0, 2.0 * np.pi, size=(n, q))
            for j in range(q):
                cols.append(np.cos(angles[:, j]))
                cols.append(np.sin(angles[:, j]))
        if p:
            lines = rng.uniform(0.0, 1.0, size=(n, p))
            for j in range(p):
                cols.append(lines[:, j])
        pts = np.column_stack(cols)
    if spec.noise_sigma > 0:
        pts = pts + rng.normal(0.0, spec.noise_sigma, size=pts.shape)
    return PointCloud(pts)


def pairwise_distances(pc: PointCloud) -> DistanceMatrix:
    """Euclidean distance matrix; each pair is computed once, so the
    result is exactly symmetric."""
    if pc.has_duplicates():
        warnings.warn("point cloud contains duplicate points; zero-length edges enter the filtration at value 0")
    if pc.n == 1:
        return DistanceMatrix(np.zeros((1, 1)))
    return DistanceMatrix(squareform(pdist(pc.points)))
