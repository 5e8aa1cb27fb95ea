"""Vietoris-Rips filtration construction.

The complex is built by incremental expansion: every simplex is extended
only by vertices smaller than its minimum vertex, drawn from precomputed
lower-neighbor sets, so each clique is produced exactly once. Simplex
values follow the Rips diameter rule (maximum pairwise edge length).

Simplices are stored column-compressed in numpy arrays; the `simplices`
property materializes the (vertices, value) list lazily for callers that
want the plain Python view.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .errors import CapacityExceeded, InvalidSpec
from .pointcloud import DistanceMatrix

DEFAULT_BUDGET = 10_000_000


# ============================================================
# Types
# ============================================================

@dataclass(frozen=True)
class FiltrationParams:
    """Expansion limits: maximal simplex dimension and edge length."""

    max_dim: int
    max_edge: float
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.max_dim < 0:
            raise InvalidSpec("max_dim must be >= 0")
        if not (self.max_edge > 0):
            raise InvalidSpec("max_edge must be > 0")
        if self.budget < 1:
            raise InvalidSpec("budget must be >= 1")


@dataclass(frozen=True, eq=False)
class Filtration:
    """Weighted simplicial complex sorted by (value, dim, lexicographic).

    Attributes:
        verts: (m, max_dim+1) int32 array of vertex indices, ascending per
            row, padded with -1 beyond each simplex's dimension.
        values: (m,) float64 filtration values.
        dims: (m,) int8 simplex dimensions.
        n_vertices: number of points the complex was built on.
        max_dim, max_edge: the parameters the complex was built with.
    """

    verts: np.ndarray
    values: np.ndarray
    dims: np.ndarray
    n_vertices: int
    max_dim: int
    max_edge: float
    _simplices: list = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.simplices)

    def simplex(self, j: int) -> tuple[int, ...]:
        row = self.verts[j]
        return tuple(int(v) for v in row[row >= 0])

    @property
    def simplices(self) -> list[tuple[tuple[int, ...], float]]:
        """The (vertices, value) list in stored order, built on first use."""
        if self._simplices is None:
            out = [(self.simplex(j), float(self.values[j])) for j in range(len(self))]
            object.__setattr__(self, "_simplices", out)
        return self._simplices

    @property
    def max_value(self) -> float:
        """Largest filtration value present (0.0 for a vertex-only complex)."""
        return float(self.values.max()) if len(self.values) else 0.0

    def dimension_counts(self) -> dict[int, int]:
        """Simplex count per dimension."""
        ks, cs = np.unique(self.dims, return_counts=True)
        return {int(k): int(c) for k, c in zip(ks, cs)}


# ============================================================
# Expansion kernel
# ============================================================

@njit(cache=True)
def _expand(dm, max_edge, max_dim, budget):
    """Lower-neighbor clique expansion; returns (verts, values, dims, flag).

    flag is the offending dimension when the budget is exceeded, else -1.
    """
    n = dm.shape[0]
    width = max_dim + 1

    ln_off = np.zeros(n + 1, np.int64)
    for v in range(n):
        c = 0
        for u in range(v):
            if dm[u, v] <= max_edge:
                c += 1
        ln_off[v + 1] = ln_off[v] + c
    ln_dat = np.empty(ln_off[n], np.int32)
    for v in range(n):
        k = ln_off[v]
        for u in range(v):
            if dm[u, v] <= max_edge:
                ln_dat[k] = u
                k += 1

    cap = 1024
    verts = np.full((cap, width), -1, np.int32)
    vals = np.empty(cap, np.float64)
    dims = np.empty(cap, np.int8)
    m = 0
    for v in range(n):
        verts[m, 0] = v
        vals[m] = 0.0
        dims[m] = 0
        m += 1
        if m == verts.shape[0]:
            verts, vals, dims = _grow(verts, vals, dims, m)
    if m > budget:
        return verts[:0], vals[:0], dims[:0], 0

    lo = 0
    hi = m
    for d in range(1, max_dim + 1):
        for s in range(lo, hi):
            v0 = verts[s, 0]
            for t in range(ln_off[v0], ln_off[v0 + 1]):
                u = ln_dat[t]
                ok = True
                val = vals[s]
                for i in range(d):
                    w = verts[s, i]
                    duw = dm[u, w]
                    if duw > max_edge:
                        ok = False
                        break
                    if duw > val:
                        val = duw
                if not ok:
                    continue
                verts[m, 0] = u
                for i in range(d):
                    verts[m, i + 1] = verts[s, i]
                vals[m] = val
                dims[m] = d
                m += 1
                if m > budget:
                    return verts[:0], vals[:0], dims[:0], d
                if m == verts.shape[0]:
                    verts, vals, dims = _grow(verts, vals, dims, m)
        lo = hi
        hi = m
        if lo == hi:
            break
    return verts[:m], vals[:m], dims[:m], -1


@njit(cache=True)
def _grow(verts, vals, dims, m):
    cap = verts.shape[0] * 2
    verts2 = np.full((cap, verts.shape[1]), -1, np.int32)
    verts2[:m] = verts[:m]
    vals2 = np.empty(cap, np.float64)
    vals2[:m] = vals[:m]
    dims2 = np.empty(cap, np.int8)
    dims2[:m] = dims[:m]
    return verts2, vals2, dims2


# ============================================================
# Operations
# ============================================================

def build_filtration(dm: DistanceMatrix, params: FiltrationParams) -> Filtration:
    """Build the Vietoris-Rips filtration of a distance matrix.

    Contains every vertex at value 0, every edge within max_edge at its
    length, and every clique of at most max_dim+1 vertices at its
    diameter. Output is sorted by (value, dim, lexicographic vertices).

    Raises:
        CapacityExceeded: the simplex count passed params.budget; the
            exception carries the dimension being expanded.
    """
    n = dm.n
    max_dim = min(params.max_dim, n - 1)  # higher dimensions cannot exist
    verts, vals, dims, flag = _expand(dm.entries, float(params.max_edge), max_dim, params.budget)
    if flag >= 0:
        raise CapacityExceeded(
            f"simplex budget {params.budget} exceeded while expanding dimension {flag}",
            dimension=int(flag),
        )
    # (value, dim, lexicographic) order; np.lexsort keys run least to most
    # significant, and padding (-1) only compares within equal dimensions
    keys = [verts[:, i] for i in range(verts.shape[1] - 1, -1, -1)]
    keys.append(dims)
    keys.append(vals)
    order = np.lexsort(tuple(keys))
    return Filtration(
        verts=verts[order],
        values=vals[order],
        dims=dims[order],
        n_vertices=n,
        max_dim=params.max_dim,
        max_edge=float(params.max_edge),
    )


def filtration_grid(f: Filtration, mode: str = "critical", resolution: int | None = None) -> np.ndarray:
    """Scale values to inspect the filtration at.

    critical mode returns the sorted distinct filtration values; uniform
    mode returns `resolution` equally spaced values over [0, max value].
    """
    if len(f) == 0:
        raise InvalidSpec("empty filtration has no grid")
    if mode == "critical":
        return np.unique(f.values)
    if mode == "uniform":
        if resolution is None or resolution < 2:
            raise InvalidSpec("uniform mode needs resolution >= 2")
        return np.linspace(0.0, f.max_value, resolution)
    raise InvalidSpec(f"unknown grid mode {mode!r}")


def export_jsonl(f: Filtration, path) -> None:
    """Write the filtration as JSON lines {"v": [...], "t": value}."""
    with open(path, "w", encoding="utf-8") as fh:
        for simplex, value in f.simplices:
            fh.write(json.dumps({"v": list(simplex), "t": value}) + "\n")
