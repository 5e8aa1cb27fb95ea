"""Persistent homology over Z2 by boundary-matrix column reduction.

Columns are sparse sorted index arrays; a column addition is the
symmetric difference of two such arrays, realized as a linear merge.
The compiled kernel and the pure-Python reference implement the same
left-to-right reduction and are required to produce identical pairings.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numba import njit

from .errors import CapacityExceeded, IndexOutOfRange, MalformedInput, MissingFace
from .filtration import Filtration

INF = math.inf


# ============================================================
# Types
# ============================================================

@dataclass(frozen=True, eq=False)
class BoundaryMatrix:
    """Z2 boundary matrix in column-compressed form.

    Column j (offsets[j]:offsets[j+1] into entries) lists the filtration
    positions of the codimension-1 faces of simplex j, sorted ascending.
    Vertex columns are empty. dims and values are carried along so pairs
    can be labeled without going back to the filtration.
    """

    offsets: np.ndarray
    entries: np.ndarray
    dims: np.ndarray
    values: np.ndarray

    @property
    def m(self) -> int:
        return len(self.offsets) - 1

    def column(self, j: int) -> np.ndarray:
        return self.entries[self.offsets[j]:self.offsets[j + 1]]

    @property
    def columns(self) -> list[np.ndarray]:
        return [self.column(j) for j in range(self.m)]


@dataclass(frozen=True, eq=False)
class ReducedMatrix:
    """Result of the column reduction.

    lows[j] is the lowest (largest) index of reduced column j, or -1 when
    the column reduced to zero. Nonzero reduced columns are stored
    back-to-back in pool, addressed by starts/ends.
    """

    pool: np.ndarray
    starts: np.ndarray
    ends: np.ndarray
    lows: np.ndarray

    @property
    def m(self) -> int:
        return len(self.lows)

    def column(self, j: int) -> np.ndarray:
        if self.lows[j] < 0:
            return np.empty(0, np.int32)
        return self.pool[self.starts[j]:self.ends[j]]

    def is_zero(self, j: int) -> bool:
        return self.lows[j] < 0


class PersistencePair(NamedTuple):
    """A (birth, death) event in homology dimension k.

    death is math.inf and death_index is None for essential classes.
    Pairs with equal birth and death values (zero persistence) are kept
    here and filtered out at the diagram stage. A NamedTuple rather than
    a dataclass: reductions emit millions of pairs and construction cost
    dominates otherwise.
    """

    k: int
    birth: float
    death: float
    birth_index: int
    death_index: int | None

    @property
    def essential(self) -> bool:
        return self.death_index is None

    @property
    def zero_persistence(self) -> bool:
        return self.death == self.birth

    @property
    def persistence(self) -> float:
        return self.death - self.birth


@dataclass(frozen=True, eq=False)
class PersistenceDiagram:
    """Multiset of finite-persistence and essential pairs in dimension k."""

    k: int
    pairs: tuple

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


@dataclass(frozen=True, eq=False)
class BettiCurve:
    """Betti numbers of dimension k sampled along a scale grid."""

    k: int
    grid: np.ndarray
    betti: np.ndarray


# ============================================================
# Boundary matrix
# ============================================================

def boundary_matrix(f: Filtration) -> BoundaryMatrix:
    """Positions of every simplex's codimension-1 faces.

    Raises:
        MissingFace: a face of a stored simplex is not in the filtration.
    """
    m = len(f)
    dims = f.dims.astype(np.int64)
    n_faces = np.where(dims > 0, dims + 1, 0)
    offsets = np.zeros(m + 1, np.int64)
    np.cumsum(n_faces, out=offsets[1:])
    entries = np.empty(offsets[-1], np.int32)

    if m and f.n_vertices < 2**16 - 1 and f.verts.shape[1] <= 4:
        _fill_faces_packed(f, offsets, entries)
    else:
        _fill_faces_dict(f, offsets, entries)
    return BoundaryMatrix(offsets=offsets, entries=entries, dims=f.dims.copy(), values=f.values.copy())


def _pack_keys(verts: np.ndarray) -> np.ndarray:
    """Encode up to 4 ascending vertex ids (pad -1) into one int64."""
    keys = np.zeros(len(verts), np.int64)
    for c in range(verts.shape[1]):
        keys = (keys << 16) | (verts[:, c].astype(np.int64) + 1)
    return keys


def _fill_faces_packed(f: Filtration, offsets: np.ndarray, entries: np.ndarray) -> None:
    keys = _pack_keys(f.verts)
    order = np.argsort(keys, kind="stable")
    sorted_keys = keys[order]
    width = f.verts.shape[1]
    for d in range(1, int(f.dims.max()) + 1):
        rows = np.nonzero(f.dims == d)[0]
        if not len(rows):
            continue
        vsub = f.verts[rows]
        face_cols = np.empty((len(rows), d + 1), np.int32)
        for drop in range(d + 1):
            fverts = np.full((len(rows), width), -1, np.int32)
            keep = [c for c in range(d + 1) if c != drop]
            fverts[:, :d] = vsub[:, keep]
            fkeys = _pack_keys(fverts)
            idx = np.searchsorted(sorted_keys, fkeys)
            bad = (idx >= len(sorted_keys)) | (sorted_keys[np.minimum(idx, len(sorted_keys) - 1)] != fkeys)
            if np.any(bad):
                j = rows[np.nonzero(bad)[0][0]]
                raise MissingFace(f"simplex {f.simplex(j)} is missing a face from the filtration")
            face_cols[:, drop] = order[idx].astype(np.int32)
        face_cols.sort(axis=1)
        dest = offsets[rows][:, None] + np.arange(d + 1)[None, :]
        entries[dest.ravel()] = face_cols.ravel()


def _fill_faces_dict(f: Filtration, offsets: np.ndarray, entries: np.ndarray) -> None:
    index = {}
    for j in range(len(f)):
        index[f.simplex(j)] = j
    for j in range(len(f)):
        d = int(f.dims[j])
        if d == 0:
            continue
        simplex = f.simplex(j)
        faces = []
        for drop in range(d + 1):
            face = simplex[:drop] + simplex[drop + 1:]
            pos = index.get(face)
            if pos is None:
                raise MissingFace(f"simplex {simplex} is missing face {face}")
            faces.append(pos)
        faces.sort()
        entries[offsets[j]:offsets[j + 1]] = faces


# ============================================================
# Reduction
# ============================================================

@njit(cache=True)
def _xor_merge(a, alen, pool, s, e, out):
    """Symmetric difference of sorted a[:alen] and pool[s:e] into out."""
    i = 0
    j = s
    k = 0
    while i < alen and j < e:
        x = a[i]
        y = pool[j]
        if x < y:
            out[k] = x
            i += 1
            k += 1
        elif y < x:
            out[k] = y
            j += 1
            k += 1
        else:
            i += 1
            j += 1
    while i < alen:
        out[k] = a[i]
        i += 1
        k += 1
    while j < e:
        out[k] = pool[j]
        j += 1
        k += 1
    return k


@njit(cache=True)
def _reduce_kernel(offsets, entries, m):
    pool = np.empty(max(16, entries.size * 2), np.int32)
    pool_len = 0
    starts = np.full(m, -1, np.int64)
    ends = np.full(m, -1, np.int64)
    pivot = np.full(m, -1, np.int64)
    lows = np.full(m, -1, np.int64)
    buf = np.empty(m + 1, np.int32)
    tmp = np.empty(m + 1, np.int32)
    for j in range(m):
        s = offsets[j]
        e = offsets[j + 1]
        blen = e - s
        for t in range(blen):
            buf[t] = entries[s + t]
        while blen > 0:
            low = buf[blen - 1]
            k = pivot[low]
            if k == -1:
                break
            blen = _xor_merge(buf, blen, pool, starts[k], ends[k], tmp)
            buf, tmp = tmp, buf
        if blen > 0:
            low = buf[blen - 1]
            pivot[low] = j
            lows[j] = low
            if pool_len + blen > pool.size:
                bigger = np.empty(max(pool.size * 2, pool_len + blen), np.int32)
                bigger[:pool_len] = pool[:pool_len]
                pool = bigger
            starts[j] = pool_len
            for t in range(blen):
                pool[pool_len + t] = buf[t]
            pool_len += blen
            ends[j] = pool_len
    return pool[:pool_len], starts, ends, lows


def _reduce_python(offsets, entries, m):
    """Reference reduction with plain Python lists; same pairing."""
    cols = {}
    pivot = {}
    lows = np.full(m, -1, np.int64)
    for j in range(m):
        col = list(entries[offsets[j]:offsets[j + 1]])
        while col:
            low = col[-1]
            k = pivot.get(low)
            if k is None:
                break
            other = cols[k]
            merged = []
            a = b = 0
            while a < len(col) and b < len(other):
                x, y = col[a], other[b]
                if x < y:
                    merged.append(x)
                    a += 1
                elif y < x:
                    merged.append(y)
                    b += 1
                else:
                    a += 1
                    b += 1
            merged.extend(col[a:])
            merged.extend(other[b:])
            col = merged
        if col:
            pivot[col[-1]] = j
            lows[j] = col[-1]
            cols[j] = col
    pool = []
    starts = np.full(m, -1, np.int64)
    ends = np.full(m, -1, np.int64)
    for j in range(m):
        if lows[j] >= 0:
            starts[j] = len(pool)
            pool.extend(cols[j])
            ends[j] = len(pool)
    return np.array(pool, np.int32), starts, ends, lows


def reduce(bm: BoundaryMatrix, method: str = "compiled") -> tuple[ReducedMatrix, list[PersistencePair]]:
    """Standard left-to-right column reduction over Z2.

    While column j shares its lowest entry with an earlier reduced
    column, that column is added (symmetric difference). A surviving
    lowest entry low(j) pairs the class born at low(j) with death at j;
    columns that reduce to zero and are never a pivot are births of
    essential classes.
    """
    m = bm.m
    if method == "compiled":
        pool, starts, ends, lows = _reduce_kernel(bm.offsets, bm.entries, m)
    elif method == "python":
        pool, starts, ends, lows = _reduce_python(bm.offsets, bm.entries, m)
    else:
        raise ValueError(f"unknown reduction method {method!r}")
    rm = ReducedMatrix(pool=pool, starts=starts, ends=ends, lows=lows)

    death_cols = np.nonzero(lows >= 0)[0]
    birth_cols = lows[death_cols]
    is_birth = np.zeros(m, dtype=bool)
    is_birth[birth_cols] = True
    zero_cols = np.nonzero(lows < 0)[0]
    essential_cols = zero_cols[~is_birth[zero_cols]]

    # assemble all pairs sorted by birth index without a Python-level sort
    births = np.concatenate([birth_cols, essential_cols])
    deaths_v = np.concatenate([bm.values[death_cols],
                               np.full(len(essential_cols), INF)])
    deaths_i = np.concatenate([death_cols,
                               np.full(len(essential_cols), -1, death_cols.dtype)])
    order = np.argsort(births, kind="stable")
    births = births[order]
    pairs = [PersistencePair(k, b, d, bi, di if di >= 0 else None)
             for k, b, d, bi, di in zip(
                 bm.dims[births].tolist(),
                 bm.values[births].tolist(),
                 deaths_v[order].tolist(),
                 births.tolist(),
                 deaths_i[order].tolist())]
    return rm, pairs


# ============================================================
# Diagrams, Betti curves, multiplicity
# ============================================================

def diagram(pairs: list[PersistencePair], k: int) -> PersistenceDiagram:
    """Dimension-k diagram: zero-persistence pairs dropped, essentials kept."""
    kept = [(p.birth, p.death) for p in pairs if p.k == k and not p.zero_persistence]
    kept.sort()
    return PersistenceDiagram(k=k, pairs=tuple(kept))


def betti_curve(dg: PersistenceDiagram, grid) -> BettiCurve:
    """beta_k(eps) = #{pairs with birth <= eps < death} along the grid."""
    grid = np.asarray(grid, dtype=np.float64)
    if len(dg.pairs) == 0:
        return BettiCurve(k=dg.k, grid=grid, betti=np.zeros(len(grid), np.int64))
    births = np.array([b for b, _ in dg.pairs])
    deaths = np.array([d for _, d in dg.pairs])
    counts = ((births[None, :] <= grid[:, None]) & (grid[:, None] < deaths[None, :])).sum(axis=1)
    return BettiCurve(k=dg.k, grid=grid, betti=counts.astype(np.int64))


@dataclass(frozen=True, eq=False)
class BettiTable:
    """Two-parameter Betti numbers of one diagram over a scale grid."""

    k: int
    grid: np.ndarray
    births: np.ndarray
    deaths: np.ndarray

    def rank(self, a: int, b: int) -> int:
        """B[a, b] = #{pairs with birth <= grid[a] and death > grid[b]}.

        For a <= b this is the rank of H_k(K^{grid[a]}) -> H_k(K^{grid[b]}).
        Index -1 means "before the grid": rank(-1, b) = 0 and rank(a, -1)
        counts every pair born by grid[a].
        """
        if a < 0:
            return 0
        born = self.births <= self.grid[a]
        if b < 0:
            return int(born.sum())
        return int((born & (self.deaths > self.grid[b])).sum())


def two_parameter_betti(dg: PersistenceDiagram, grid) -> BettiTable:
    """Betti table of a diagram over a sorted grid of scale values."""
    grid = np.asarray(grid, dtype=np.float64)
    births = np.array([b for b, _ in dg.pairs], dtype=np.float64)
    deaths = np.array([d for _, d in dg.pairs], dtype=np.float64)
    return BettiTable(k=dg.k, grid=grid, births=births, deaths=deaths)


def multiplicity(table: BettiTable, i: int, j: int) -> int:
    """Multiplicity of the diagram point (grid[i], grid[j]).

    mu = (B[i, j-1] - B[i, j]) - (B[i-1, j-1] - B[i-1, j]), the count of
    classes born exactly entering grid[i] that die exactly entering grid[j].

    Raises:
        IndexOutOfRange: i > j or indices outside the grid.
    """
    g = len(table.grid)
    if not (0 <= i <= j < g):
        raise IndexOutOfRange(f"need 0 <= i <= j < {g}, got i={i}, j={j}")
    return (table.rank(i, j - 1) - table.rank(i, j)) - (table.rank(i - 1, j - 1) - table.rank(i - 1, j))


# ============================================================
# Diagram serialization
# ============================================================

def save_diagrams(diagrams: list[PersistenceDiagram], path) -> None:
    """Write diagrams as [{"k", "birth", "death"}] with null encoding infinity.

    Records are ordered by (k, birth, death); the output is
    byte-deterministic for a given input.
    """
    records = []
    for dg in diagrams:
        for birth, death in dg.pairs:
            records.append({"k": dg.k, "birth": birth,
                            "death": None if death == INF else death})
    records.sort(key=lambda r: (r["k"], r["birth"],
                                INF if r["death"] is None else r["death"]))
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(records, fh, sort_keys=True)
        fh.write("\n")


def load_diagrams(path) -> list[PersistenceDiagram]:
    """Read diagrams written by save_diagrams; one diagram per k, k dense from 0."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            records = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid diagram JSON in {path}: {exc}") from None
    if not isinstance(records, list):
        raise MalformedInput(f"diagram JSON in {path} must be a list")
    by_k: dict[int, list[tuple[float, float]]] = {}
    for i, rec in enumerate(records):
        try:
            k = int(rec["k"])
            birth = float(rec["birth"])
            death = INF if rec["death"] is None else float(rec["death"])
        except (TypeError, KeyError, ValueError):
            raise MalformedInput(f"bad diagram record at index {i} in {path}") from None
        by_k.setdefault(k, []).append((birth, death))
    top = max(by_k, default=-1)
    return [PersistenceDiagram(k=k, pairs=tuple(sorted(by_k.get(k, []))))
            for k in range(top + 1)]


# ============================================================
# Brute-force oracle
# ============================================================

def brute_force_betti(f: Filtration, eps: float, limit: int = 2000) -> list[int]:
    """Betti numbers of the sublevel complex K^eps by Z2 Gaussian elimination.

    Independent of the reduction path: builds dense Z2 boundary matrices
    for the complex at scale eps and computes
    beta_k = dim ker d_k - rank d_{k+1} = (#k-simplices - rank d_k) - rank d_{k+1}
    for k = 0 .. the filtration's expansion dimension. Trailing zeros past
    the first are truncated, so a 2-dim filtration of a filled triangle
    reports [1, 0] and a graph-only hollow triangle reports [1, 1].

    Raises:
        CapacityExceeded: more than `limit` simplices at scale eps.
    """
    mask = f.values <= eps
    count = int(mask.sum())
    if count > limit:
        raise CapacityExceeded(f"sublevel complex has {count} simplices, limit {limit}")
    by_dim: dict[int, list[tuple[int, ...]]] = {}
    for j in np.nonzero(mask)[0]:
        by_dim.setdefault(int(f.dims[j]), []).append(f.simplex(j))
    if not by_dim:
        return []
    top_dim = min(f.max_dim, f.n_vertices - 1)
    betti = []
    ranks = {}
    for d in range(1, top_dim + 1):
        ranks[d] = _gf2_rank(_dense_boundary(by_dim.get(d, []), by_dim.get(d - 1, [])))
    for d in range(0, top_dim + 1):
        n_d = len(by_dim.get(d, []))
        kernel = n_d - ranks.get(d, 0)  # rank d_0 = 0
        betti.append(kernel - ranks.get(d + 1, 0))
    last_nonzero = max((i for i, b in enumerate(betti) if b != 0), default=0)
    return betti[:last_nonzero + 2]


def _dense_boundary(simplices: list[tuple[int, ...]], faces: list[tuple[int, ...]]) -> np.ndarray:
    if not simplices or not faces:
        return np.zeros((len(faces), len(simplices)), dtype=np.uint8)
    face_index = {face: i for i, face in enumerate(faces)}
    mat = np.zeros((len(faces), len(simplices)), dtype=np.uint8)
    for col, simplex in enumerate(simplices):
        for drop in range(len(simplex)):
            face = simplex[:drop] + simplex[drop + 1:]
            mat[face_index[face], col] = 1
    return mat


def _gf2_rank(mat: np.ndarray) -> int:
    """Row-echelon rank over GF(2) via repeated row elimination."""
    a = mat.copy()
    rows, cols = a.shape
    rank = 0
    row = 0
    for col in range(cols):
        pivots = np.nonzero(a[row:, col])[0]
        if len(pivots) == 0:
            continue
        p = row + pivots[0]
        a[[row, p]] = a[[p, row]]
        others = np.nonzero(a[:, col])[0]
        others = others[others != row]
        a[others] ^= a[row]
        rank += 1
        row += 1
        if row == rows:
            break
    return rank
