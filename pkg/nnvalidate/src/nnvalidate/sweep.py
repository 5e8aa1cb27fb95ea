"""Width sweeps: train the same denoiser at several bottleneck widths
and measure loss-spike incidence per width.

A sweep is deterministic for a fixed seed up to backend floating-point
nondeterminism; the backend identity, version, and thread count are
recorded in the result manifest. Training failures are recorded per
width and the sweep continues.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import torch
from scipy.stats import binomtest

from .autoencoder import build_autoencoder
from .coupling import DEFAULT_SLOPE
from .dataset import NoisyDataset
from .errors import InvalidWidth, MalformedInput, ShapeMismatch


DEFAULT_WINDOW = 10
DEFAULT_SPIKE_FACTOR = 5.0


@dataclass(frozen=True)
class SweepResult:
    """Per-width validation-loss trajectories and their spike counts."""

    widths: tuple
    trajectories: dict  # width -> list of per-epoch validation MSE
    explosion_counts: dict  # width -> int
    final_losses: dict  # width -> float
    failures: dict  # width -> error string
    manifest: dict = field(default_factory=dict)


def explosion_score(trajectory, window: int = DEFAULT_WINDOW,
                    spike_factor: float = DEFAULT_SPIKE_FACTOR) -> int:
    """Number of epochs whose loss spikes above the trailing median.

    An epoch t counts when loss[t] > spike_factor * median(loss over the
    up-to-window preceding epochs).
    """
    traj = np.asarray(trajectory, dtype=np.float64)
    if traj.ndim != 1 or len(traj) < 3:
        raise MalformedInput("trajectory must be 1d with at least 3 epochs")
    if window < 1 or spike_factor <= 0:
        raise MalformedInput("window must be >= 1 and spike_factor > 0")
    count = 0
    for t in range(1, len(traj)):
        trailing = traj[max(0, t - window):t]
        if traj[t] > spike_factor * float(np.median(trailing)):
            count += 1
    return count


def _split(ds: NoisyDataset, seed: int) -> tuple:
    # 7:3 train/validation split after a seeded shuffle
    order = np.random.default_rng(seed).permutation(ds.n)
    cut = max(1, int(round(0.7 * ds.n)))
    cut = min(cut, ds.n - 1) if ds.n > 1 else cut
    train, val = order[:cut], order[cut:]
    as_t = lambda a: torch.as_tensor(a, dtype=torch.float64)
    return (as_t(ds.noisy[train]), as_t(ds.clean[train]),
            as_t(ds.noisy[val]), as_t(ds.clean[val]))


def _train_one(ds: NoisyDataset, width: int, epochs: int, batch_size: int,
               lr: float, seed: int, negative_slope: float,
               scale_gamma: float) -> list:
    torch.manual_seed(seed * 100003 + width)
    x_train, y_train, x_val, y_val = _split(ds, seed)
    model = build_autoencoder(ds.d, width, negative_slope=negative_slope,
                              scale_gamma=scale_gamma)
    opt = torch.optim.Adam(model.parameters(), lr=lr)
    loss_fn = torch.nn.MSELoss()
    n = len(x_train)
    trajectory = []
    for _ in range(epochs):
        order = torch.randperm(n)
        for start in range(0, n, batch_size):
            idx = order[start:start + batch_size]
            if len(idx) < 2:
                continue  # batch statistics need two rows
            opt.zero_grad()
            loss = loss_fn(model(x_train[idx]), y_train[idx])
            loss.backward()
            opt.step()
        with torch.no_grad():
            trajectory.append(float(loss_fn(model(x_val), y_val)))
    return trajectory


def train_sweep(dataset: NoisyDataset, widths: list, epochs: int,
                batch_size: int = 128, lr: float = 1e-4, seed: int = 0,
                negative_slope: float = DEFAULT_SLOPE, scale_gamma: float = 0.1,
                window: int = DEFAULT_WINDOW,
                spike_factor: float = DEFAULT_SPIKE_FACTOR) -> SweepResult:
    """Train one model per width and collect validation trajectories.

    Raises:
        InvalidWidth: odd, duplicate, or unsorted widths.
    """
    if not widths:
        raise InvalidWidth("widths must not be empty")
    if len(set(widths)) != len(widths):
        raise InvalidWidth("duplicate widths")
    if sorted(widths) != list(widths):
        raise InvalidWidth("widths must be sorted ascending")
    if any(w % 2 != 0 or w < 2 for w in widths):
        raise InvalidWidth("widths must be even and >= 2")
    if epochs < 1:
        raise MalformedInput("epochs must be >= 1")

    trajectories, explosions, finals, failures = {}, {}, {}, {}
    for width in widths:
        try:
            traj = _train_one(dataset, width, epochs, batch_size, lr, seed,
                              negative_slope, scale_gamma)
            trajectories[width] = traj
            finals[width] = traj[-1]
            explosions[width] = (explosion_score(traj, window, spike_factor)
                                 if len(traj) >= 3 else 0)
        except (InvalidWidth, ShapeMismatch, RuntimeError) as exc:
            failures[width] = f"{type(exc).__name__}: {exc}"
    manifest = {
        "backend": "torch",
        "backend_version": torch.__version__,
        "threads": torch.get_num_threads(),
        "seed": seed,
        "epochs": epochs,
        "batch_size": batch_size,
        "lr": lr,
        "negative_slope": negative_slope,
        "scale_gamma": scale_gamma,
        "window": window,
        "spike_factor": spike_factor,
    }
    return SweepResult(widths=tuple(widths), trajectories=trajectories,
                       explosion_counts=explosions, final_losses=finals,
                       failures=failures, manifest=manifest)


def save_sweep_csv(result: SweepResult, path) -> None:
    """Emit (width, epoch, loss) rows for every successful trajectory."""
    lines = ["width,epoch,loss"]
    for width in result.widths:
        for epoch, loss in enumerate(result.trajectories.get(width, [])):
            lines.append(f"{width},{epoch},{loss!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def save_summary_json(result: SweepResult, path) -> None:
    summary = {
        "widths": list(result.widths),
        "explosion_counts": {str(w): c for w, c in sorted(result.explosion_counts.items())},
        "final_losses": {str(w): v for w, v in sorted(result.final_losses.items())},
        "failures": {str(w): msg for w, msg in sorted(result.failures.items())},
        "manifest": result.manifest,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, sort_keys=True, indent=1)
        fh.write("\n")


def stability_report(per_seed_below: list, per_seed_above: list,
                     width_interval: tuple, manifest: dict) -> dict:
    """Compare spike incidence below vs at/above the recommended widths.

    Takes one mean explosion score per seed for each group and reports
    the group means plus a one-sided sign test p-value for "below
    exceeds at/above". The comparison is statistical evidence, not a
    hard property of individual runs.
    """
    below = [float(v) for v in per_seed_below]
    above = [float(v) for v in per_seed_above]
    if len(below) != len(above) or not below:
        raise MalformedInput("need paired per-seed scores for both groups")
    wins = sum(1 for b, a in zip(below, above) if b > a)
    ties = sum(1 for b, a in zip(below, above) if b == a)
    decisive = len(below) - ties
    if decisive > 0:
        p_value = float(binomtest(wins, decisive, 0.5, alternative="greater").pvalue)
    else:
        p_value = 1.0
    return {
        "seeds": len(below),
        "width_interval": list(width_interval),
        "mean_explosions_below": float(np.mean(below)),
        "mean_explosions_at_or_above": float(np.mean(above)),
        "seed_wins_below": wins,
        "seed_ties": ties,
        "sign_test_p_value": p_value,
        "negative_slope": manifest.get("negative_slope"),
        "trend_holds": float(np.mean(below)) >= float(np.mean(above)),
    }
