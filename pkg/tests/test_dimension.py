"""Decomposition estimation from homology representative counts."""

import json
import math

import pytest

from homodim import (DegenerateInput, HomologyCounts, InvalidSpec, Overflow,
                     binomial, estimate, load_estimate, reconcile_single_q,
                     recommended_width, save_estimate, solve_q)


class TestBinomial:
    def test_matches_math_comb(self):
        for q in range(0, 65):
            for k in range(0, 9):
                assert binomial(q, k) == math.comb(q, k)

    def test_matches_multiplicative_formula(self):
        for q in range(0, 40):
            for k in range(0, 7):
                prod = 1
                for i in range(1, k + 1):
                    prod = prod * (q + 1 - i) // i
                assert binomial(q, k) == prod

    def test_negative_rejected(self):
        with pytest.raises(InvalidSpec):
            binomial(-1, 2)
        with pytest.raises(InvalidSpec):
            binomial(3, -1)

    def test_overflow_guard(self):
        with pytest.raises(Overflow):
            binomial(65, 2)
        assert binomial(64, 2) == 2016


class TestSolveQ:
    def test_round_trip(self):
        for k in range(1, 7):
            for q in range(k, 31):
                qe = solve_q(binomial(q, k), k)
                assert (qe.q, qe.residual) == (q, 0)

    def test_ties_resolve_to_smaller_q(self):
        # C(4,1)=4, C(5,1)=5: c=4.5 impossible for ints; use k=2:
        # C(3,2)=3, C(4,2)=6, midpoint c=4 has residuals 1 and 2 -> q=3;
        # c=5 has residuals 2 and 1 -> q=4; equidistant case:
        # C(2,2)=1, C(3,2)=3, c=2 -> residual 1 both -> smaller q wins
        qe = solve_q(2, 2)
        assert qe.q == 2 and qe.residual == 1

    def test_zero_count(self):
        qe = solve_q(0, 1)
        assert qe.q == 0 and qe.residual == 0

    def test_invalid_arguments(self):
        with pytest.raises(InvalidSpec):
            solve_q(3, 0)
        with pytest.raises(InvalidSpec):
            solve_q(-1, 1)
        with pytest.raises(InvalidSpec):
            solve_q(3, 1, q_max=0)

    def test_respects_q_max(self):
        qe = solve_q(1000, 1, q_max=10)
        assert qe.q == 10 and qe.residual == 990


class TestEstimate:
    def test_table_row_one(self):
        de = estimate(HomologyCounts((12, 16, 40, 59, 50)))
        assert de.p == 12
        assert [(qe.k, qe.q, qe.residual) for qe in de.q_estimates] == [
            (1, 16, 0), (2, 9, 4), (3, 8, 3), (4, 7, 15)]
        assert de.dim_u == 92
        assert de.uncertainty == 44
        assert de.width_interval == (184, 272)

    def test_table_row_two(self):
        de = estimate(HomologyCounts((13, 18, 34, 46, 48)))
        assert de.p == 13
        assert [(qe.k, qe.q, qe.residual) for qe in de.q_estimates] == [
            (1, 18, 0), (2, 9, 2), (3, 8, 10), (4, 7, 13)]
        assert de.dim_u == 97
        assert de.uncertainty == 50
        assert de.width_interval == (194, 294)

    def test_single_circle(self):
        de = estimate(HomologyCounts((1, 1)))
        assert de.p == 1 and de.dim_u == 3
        assert de.width_interval == (6, 6)

    def test_zero_count_contributes_nothing(self):
        de = estimate(HomologyCounts((2, 0, 1)))
        q_by_k = {qe.k: (qe.q, qe.residual) for qe in de.q_estimates}
        assert q_by_k[1] == (0, 0)
        assert q_by_k[2] == (2, 0)  # C(2,2) = 1
        assert de.dim_u == 2 + 2 * (0 + 2)

    def test_monotone_in_counts(self):
        base = (3, 5, 7, 2)
        d0 = estimate(HomologyCounts(base)).dim_u
        for i in range(4):
            bumped = list(base)
            bumped[i] += 1
            assert estimate(HomologyCounts(tuple(bumped))).dim_u >= d0

    def test_degenerate_and_invalid(self):
        with pytest.raises(DegenerateInput):
            estimate(HomologyCounts((0, 0, 0)))
        with pytest.raises(InvalidSpec):
            estimate(HomologyCounts((5,)))
        with pytest.raises(InvalidSpec):
            HomologyCounts((1, -2))
        with pytest.raises(InvalidSpec):
            HomologyCounts(())

    def test_width_arithmetic(self):
        de = estimate(HomologyCounts((12, 16, 40, 59, 50)))
        assert recommended_width(de) == (2 * 92, 2 * (92 + 44))


class TestSingleQReconciliation:
    def test_exact_torus_counts(self):
        # T^3 has counts C(3,k): (1, 3, 3, 1)
        q, residual = reconcile_single_q(HomologyCounts((1, 3, 3, 1)))
        assert q == 3 and residual == 0

    def test_reports_residual(self):
        q, residual = reconcile_single_q(HomologyCounts((12, 16, 40, 59, 50)))
        assert residual == sum(abs(binomial(q, k) - c)
                               for k, c in enumerate((12, 16, 40, 59, 50)) if k >= 1)


class TestEstimateIO:
    def test_schema_and_roundtrip(self, tmp_path):
        de = estimate(HomologyCounts((12, 16, 40, 59, 50)))
        path = tmp_path / "estimate.json"
        save_estimate(de, path)
        payload = json.loads(path.read_text())
        assert set(payload) == {"p", "q", "dim_u", "uncertainty", "width_interval"}
        assert payload["q"][0] == {"k": 1, "q": 16, "residual": 0}
        assert payload["width_interval"] == [184, 272]
        back = load_estimate(path)
        assert back.dim_u == de.dim_u
        assert back.q_estimates == de.q_estimates

    def test_save_deterministic(self, tmp_path):
        de = estimate(HomologyCounts((1, 1)))
        save_estimate(de, tmp_path / "a.json")
        save_estimate(de, tmp_path / "b.json")
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
