"""Shared fixtures. The session warmup compiles the numba kernels once
so runtime-budget assertions measure steady-state performance."""

from __future__ import annotations

import numpy as np
import pytest

from homodim import (FiltrationParams, PointCloud, boundary_matrix,
                     build_filtration, pairwise_distances, reduce)


def filtration_of(points, max_edge, max_dim):
    pc = PointCloud(np.asarray(points, dtype=float))
    return build_filtration(pairwise_distances(pc),
                            FiltrationParams(max_dim=max_dim, max_edge=max_edge))


def pairs_of(filt):
    _, pairs = reduce(boundary_matrix(filt))
    return pairs


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    filt = filtration_of([[0.0, 0.0], [1.0, 0.0], [0.5, 0.9], [0.5, 0.3]], 2.0, 3)
    reduce(boundary_matrix(filt))


@pytest.fixture()
def equilateral():
    # side-1 equilateral triangle
    return [[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3) / 2]]


@pytest.fixture()
def unit_square():
    return [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]


def random_cloud(rng, n_max=12, d_max=3):
    n = int(rng.integers(3, n_max + 1))
    d = int(rng.integers(2, d_max + 1))
    return rng.uniform(-1.0, 1.0, size=(n, d))
