"""Vietoris-Rips filtration construction."""

import itertools
import json
import math

import numpy as np
import pytest

from homodim import (CapacityExceeded, FiltrationParams, InvalidSpec,
                     PointCloud, build_filtration, export_jsonl,
                     filtration_grid, pairwise_distances)

from conftest import filtration_of, random_cloud
from oracles import rips_simplices


class TestFiltrationParams:
    def test_validation(self):
        with pytest.raises(InvalidSpec):
            FiltrationParams(max_dim=-1, max_edge=1.0)
        with pytest.raises(InvalidSpec):
            FiltrationParams(max_dim=2, max_edge=0.0)
        with pytest.raises(InvalidSpec):
            FiltrationParams(max_dim=2, max_edge=1.0, budget=0)


class TestBuildFiltration:
    def test_equilateral_triangle(self, equilateral):
        filt = filtration_of(equilateral, max_edge=2.0, max_dim=2)
        assert len(filt) == 7
        assert filt.dimension_counts() == {0: 3, 1: 3, 2: 1}
        assert np.allclose(filt.values[:3], 0.0)
        assert np.allclose(filt.values[3:], 1.0)

    def test_edge_beyond_cutoff_dropped(self):
        filt = filtration_of([[0.0, 0.0], [3.0, 0.0]], max_edge=1.0, max_dim=2)
        assert len(filt) == 2
        assert filt.dimension_counts() == {0: 2}

    def test_unit_square_hand_enumeration(self, unit_square):
        filt = filtration_of(unit_square, max_edge=2.0, max_dim=3)
        assert filt.dimension_counts() == {0: 4, 1: 6, 2: 4, 3: 1}
        values = filt.values
        dims = filt.dims
        s2 = math.sqrt(2)
        assert sorted(values[dims == 1]) == pytest.approx([1, 1, 1, 1, s2, s2])
        assert np.allclose(values[dims == 2], s2)
        assert values[dims == 3] == pytest.approx(s2)

    def test_vertices_first_at_zero(self):
        rng = np.random.default_rng(0)
        filt = filtration_of(rng.normal(size=(8, 2)), max_edge=5.0, max_dim=2)
        assert np.all(filt.dims[:8] == 0)
        assert np.all(filt.values[:8] == 0.0)

    def test_sorted_by_value_dim_lex(self):
        rng = np.random.default_rng(3)
        filt = filtration_of(rng.normal(size=(10, 3)), max_edge=3.0, max_dim=3)
        keys = [(filt.values[j], int(filt.dims[j]), filt.simplex(j))
                for j in range(len(filt))]
        assert keys == sorted(keys)

    def test_diameter_rule(self):
        rng = np.random.default_rng(4)
        pts = rng.normal(size=(9, 2))
        dm = pairwise_distances(PointCloud(pts))
        filt = build_filtration(dm, FiltrationParams(max_dim=3, max_edge=2.5))
        for j in range(len(filt)):
            vs = filt.simplex(j)
            if len(vs) == 1:
                assert filt.values[j] == 0.0
            else:
                diam = max(dm.entries[a, b] for a, b in itertools.combinations(vs, 2))
                assert filt.values[j] == diam

    def test_closure_faces_present_and_monotone(self):
        rng = np.random.default_rng(6)
        filt = filtration_of(rng.normal(size=(9, 3)), max_edge=2.0, max_dim=3)
        table = {filt.simplex(j): filt.values[j] for j in range(len(filt))}
        for simplex, value in table.items():
            for i in range(len(simplex)):
                face = simplex[:i] + simplex[i + 1:]
                if face:
                    assert face in table
                    assert table[face] <= value

    def test_matches_brute_force_enumeration(self):
        rng = np.random.default_rng(7)
        for trial in range(8):
            pts = random_cloud(rng, n_max=9)
            max_edge = float(rng.uniform(0.3, 2.0))
            dm = pairwise_distances(PointCloud(pts))
            filt = build_filtration(dm, FiltrationParams(max_dim=3, max_edge=max_edge))
            got = {filt.simplex(j): filt.values[j] for j in range(len(filt))}
            expected = {v: t for v, t in
                        rips_simplices(dm.entries.tolist(), max_edge, min(3, len(pts) - 1))}
            assert got == pytest.approx(expected)

    def test_size_law_complete_complex(self):
        # n points all within max_edge: count = sum_k C(n, k+1)
        rng = np.random.default_rng(8)
        n, max_dim = 9, 4
        pts = rng.uniform(size=(n, 2)) * 0.1
        filt = filtration_of(pts, max_edge=10.0, max_dim=max_dim)
        assert len(filt) == sum(math.comb(n, k + 1) for k in range(max_dim + 1))

    def test_budget_exceeded_names_dimension(self):
        rng = np.random.default_rng(9)
        pts = rng.uniform(size=(25, 2)) * 0.1
        dm = pairwise_distances(PointCloud(pts))
        with pytest.raises(CapacityExceeded) as err:
            build_filtration(dm, FiltrationParams(max_dim=10, max_edge=10.0, budget=3000))
        assert err.value.dimension is not None
        assert str(err.value.dimension) in str(err.value)

    def test_max_dim_clamped_to_n_minus_1(self):
        filt = filtration_of([[0.0, 0.0], [1.0, 0.0]], max_edge=2.0, max_dim=10)
        assert len(filt) == 3  # 2 vertices + 1 edge; nothing higher exists

    def test_determinism(self):
        rng = np.random.default_rng(10)
        pts = rng.normal(size=(12, 2))
        a = filtration_of(pts, max_edge=2.0, max_dim=3)
        b = filtration_of(pts, max_edge=2.0, max_dim=3)
        assert np.array_equal(a.verts, b.verts)
        assert np.array_equal(a.values, b.values)


class TestFiltrationGrid:
    def test_critical_right_triangle(self):
        # integer coordinates keep both unit edges bitwise equal
        filt = filtration_of([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
                             max_edge=2.0, max_dim=2)
        assert filtration_grid(filt, mode="critical").tolist() == [0.0, 1.0, math.sqrt(2.0)]

    def test_critical_square(self, unit_square):
        filt = filtration_of(unit_square, max_edge=2.0, max_dim=3)
        grid = filtration_grid(filt, mode="critical")
        assert grid.tolist() == pytest.approx([0.0, 1.0, math.sqrt(2)])

    def test_uniform(self, equilateral):
        filt = filtration_of(equilateral, max_edge=2.0, max_dim=2)
        grid = filtration_grid(filt, mode="uniform", resolution=5)
        assert grid.tolist() == [0.0, 0.25, 0.5, 0.75, 1.0]

    def test_unknown_mode(self, equilateral):
        filt = filtration_of(equilateral, max_edge=2.0, max_dim=2)
        with pytest.raises(InvalidSpec):
            filtration_grid(filt, mode="log")


class TestExport:
    def test_jsonl_format(self, tmp_path, equilateral):
        filt = filtration_of(equilateral, max_edge=2.0, max_dim=2)
        path = tmp_path / "filt.jsonl"
        export_jsonl(filt, path)
        lines = path.read_text().splitlines()
        assert len(lines) == len(filt)
        first = json.loads(lines[0])
        assert set(first) == {"v", "t"}
        last = json.loads(lines[-1])
        assert last["v"] == [0, 1, 2] and last["t"] == pytest.approx(1.0)
