"""Embedding-dimension estimation from homology representative counts.

For a product of q circles, homology dimension k carries C(q, k)
independent classes. Observed counts c_k are inverted per dimension by
exhaustive scan for the q minimizing |C(q, k) - c_k|. The estimate
aggregates p = c_0 connected components plus two ambient dimensions per
circle factor: dim U = p + 2 * sum_k q_k, with uncertainty twice the sum
of the scan residuals. A single-q reconciliation across all dimensions
is reported alongside as an alternative reading of the same counts.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import DegenerateInput, InvalidSpec, Overflow

Q_SUPPORTED = 64
DEFAULT_Q_MAX = 64


# ============================================================
# Types
# ============================================================

@dataclass(frozen=True)
class HomologyCounts:
    """Representative counts c_0 ... c_K per homology dimension."""

    counts: tuple

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if len(counts) < 1:
            raise InvalidSpec("counts must not be empty")
        if any(c < 0 for c in counts):
            raise InvalidSpec("counts must be non-negative")
        object.__setattr__(self, "counts", counts)

    def __len__(self) -> int:
        return len(self.counts)


@dataclass(frozen=True)
class QEstimate:
    """Best circle count for one homology dimension."""

    k: int
    q: int
    residual: int


@dataclass(frozen=True)
class DecompositionEstimate:
    """The inverted decomposition and its width recommendation."""

    p: int
    q_estimates: tuple
    dim_u: int
    uncertainty: int
    width_interval: tuple

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "q": [{"k": qe.k, "q": qe.q, "residual": qe.residual} for qe in self.q_estimates],
            "dim_u": self.dim_u,
            "uncertainty": self.uncertainty,
            "width_interval": list(self.width_interval),
        }


# ============================================================
# Operations
# ============================================================

def binomial(q: int, k: int) -> int:
    """Exact C(q, k); zero for k > q. Supported for 0 <= q <= 64.

    Raises:
        Overflow: q outside the supported range.
    """
    if q < 0 or k < 0:
        raise InvalidSpec("binomial needs q >= 0 and k >= 0")
    if q > Q_SUPPORTED:
        raise Overflow(f"q = {q} beyond supported range {Q_SUPPORTED}")
    return math.comb(q, k)


def solve_q(c_k: int, k: int, q_max: int = DEFAULT_Q_MAX) -> QEstimate:
    """Exhaustive scan for q in [0, q_max] minimizing |C(q, k) - c_k|.

    Ties break toward the smaller q.
    """
    if k < 1:
        raise InvalidSpec("solve_q needs k >= 1")
    if c_k < 0:
        raise InvalidSpec("c_k is a count and must be non-negative")
    if q_max < 1:
        raise InvalidSpec("q_max must be >= 1")
    best_q = 0
    best_res = abs(binomial(0, k) - c_k)
    for q in range(1, q_max + 1):
        res = abs(binomial(q, k) - c_k)
        if res < best_res:
            best_q = q
            best_res = res
    return QEstimate(k=k, q=best_q, residual=best_res)


def estimate(hc: HomologyCounts, q_max: int = DEFAULT_Q_MAX) -> DecompositionEstimate:
    """Invert counts into (p, q_k) and the embedding dimension.

    p = c_0; each k >= 1 with c_k > 0 contributes its scanned q_k (absent
    homology contributes q_k = 0 with residual 0); dim U = p + 2 sum q_k;
    uncertainty = 2 sum residuals; width interval
    [2 dim U, 2 (dim U + uncertainty)].

    Raises:
        DegenerateInput: every count is zero.
        InvalidSpec: fewer than two counts.
    """
    if len(hc) < 2:
        raise InvalidSpec("estimate needs counts for dimensions 0 and 1 at least")
    if all(c == 0 for c in hc.counts):
        raise DegenerateInput("all homology counts are zero")
    p = hc.counts[0]
    q_estimates = []
    for k in range(1, len(hc)):
        c_k = hc.counts[k]
        if c_k > 0:
            q_estimates.append(solve_q(c_k, k, q_max))
        else:
            q_estimates.append(QEstimate(k=k, q=0, residual=0))
    dim_u = p + 2 * sum(qe.q for qe in q_estimates)
    uncertainty = 2 * sum(qe.residual for qe in q_estimates)
    return DecompositionEstimate(
        p=p,
        q_estimates=tuple(q_estimates),
        dim_u=dim_u,
        uncertainty=uncertainty,
        width_interval=(2 * dim_u, 2 * (dim_u + uncertainty)),
    )


def recommended_width(de: DecompositionEstimate) -> tuple[int, int]:
    """[2 dim U, 2 (dim U + uncertainty)], the bottleneck-width interval."""
    return (2 * de.dim_u, 2 * (de.dim_u + de.uncertainty))


def reconcile_single_q(hc: HomologyCounts, q_max: int = DEFAULT_Q_MAX) -> tuple[int, int]:
    """Alternative reading: one q explaining all counts c_1 ... c_K at once.

    Returns the q in [0, q_max] minimizing sum_k |C(q, k) - c_k| and that
    residual sum; ties break toward the smaller q.
    """
    if len(hc) < 2:
        raise InvalidSpec("need counts for dimensions 0 and 1 at least")
    best_q = 0
    best_res = None
    for q in range(0, q_max + 1):
        res = sum(abs(binomial(q, k) - hc.counts[k]) for k in range(1, len(hc)))
        if best_res is None or res < best_res:
            best_q = q
            best_res = res
    return best_q, int(best_res)


# ============================================================
# JSON round trip
# ============================================================

def save_estimate(de: DecompositionEstimate, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(de.to_json_dict(), fh, sort_keys=True)
        fh.write("\n")


def load_estimate(path) -> DecompositionEstimate:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return DecompositionEstimate(
        p=int(obj["p"]),
        q_estimates=tuple(QEstimate(k=int(e["k"]), q=int(e["q"]), residual=int(e["residual"])) for e in obj["q"]),
        dim_u=int(obj["dim_u"]),
        uncertainty=int(obj["uncertainty"]),
        width_interval=tuple(obj["width_interval"]),
    )
