"""Finite-size oracle: keyed sampling, per-support extremes, aggregation."""

import math

import numpy as np
import pytest

from ric_bounds import (
    GaussianMatrix,
    SupportSet,
    empirical_ric,
    extremal_singular,
    sample_matrix,
)
from ric_bounds.empirical import MODE_EXHAUSTIVE, MODE_SAMPLED, _sampled_supports

from oracles import gram_extremes_power_iteration


class TestSampleMatrix:
    def test_deterministic_in_seed(self):
        a = sample_matrix(12, 30, seed=7)
        b = sample_matrix(12, 30, seed=7)
        assert np.array_equal(a.entries, b.entries)

    def test_seed_sensitivity(self):
        a = sample_matrix(12, 30, seed=7)
        b = sample_matrix(12, 30, seed=8)
        assert not np.array_equal(a.entries, b.entries)

    def test_trial_sensitivity(self):
        a = sample_matrix(12, 30, seed=7, trial=0)
        b = sample_matrix(12, 30, seed=7, trial=1)
        assert not np.array_equal(a.entries, b.entries)

    def test_normality_band(self):
        """Law-of-large-numbers check on the pinned acceptance-scale draw."""
        m = sample_matrix(20, 40, seed=7)
        count = 20 * 40
        assert abs(float(m.entries.mean())) <= 4.0 / math.sqrt(count)
        assert abs(float(m.entries.var()) - 1.0) <= 4.0 * math.sqrt(2.0 / count)

    def test_rejects_wide_before_tall(self):
        with pytest.raises(ValueError):
            sample_matrix(30, 12, seed=1)
        with pytest.raises(ValueError):
            sample_matrix(12, 12, seed=1)

    def test_schedule_independent_entries(self):
        """Per-entry keying: any submatrix of a bigger draw equals the
        corresponding entries drawn standalone with the same key."""
        big = sample_matrix(10, 25, seed=3).entries
        small = sample_matrix(6, 25, seed=3).entries
        assert np.array_equal(big[:6], small)


class TestSupportSet:
    @pytest.mark.parametrize("indices", [(), (2, 2), (3, 1), (-1, 0)])
    def test_rejects_invalid(self, indices):
        with pytest.raises(ValueError):
            SupportSet(indices)


class TestExtremalSingular:
    def test_single_column_is_its_norm(self):
        matrix = sample_matrix(8, 16, seed=5)
        for j in (0, 7, 15):
            lo, hi = extremal_singular(matrix, SupportSet((j,)))
            norm = float(np.linalg.norm(matrix.entries[:, j]))
            assert lo == pytest.approx(norm, rel=1e-12)
            assert hi == pytest.approx(norm, rel=1e-12)

    def test_embedded_orthonormal_columns(self):
        entries = np.zeros((6, 9))
        entries[:4, :4] = np.eye(4)
        entries[:, 4:] = 3.0  # irrelevant padding columns
        matrix = GaussianMatrix(m=6, n=9, seed=0, trial=0, entries=entries)
        lo, hi = extremal_singular(matrix, SupportSet((0, 1, 2, 3)))
        assert (lo, hi) == (1.0, 1.0)

    def test_against_power_iteration_oracle(self):
        matrix = sample_matrix(20, 30, seed=42)
        support = SupportSet((2, 9, 17, 25))
        sub = matrix.entries[:, list(support.indices)]
        oracle = gram_extremes_power_iteration(sub.T @ sub)
        got = extremal_singular(matrix, support)
        assert got[0] == pytest.approx(oracle[0], abs=1e-6)
        assert got[1] == pytest.approx(oracle[1], abs=1e-6)

    def test_scale_equivariance(self):
        matrix = sample_matrix(10, 20, seed=9)
        scaled = GaussianMatrix(m=10, n=20, seed=9, trial=0, entries=2.0 * matrix.entries)
        support = SupportSet((1, 5, 11))
        base = extremal_singular(matrix, support)
        doubled = extremal_singular(scaled, support)
        assert doubled[0] == pytest.approx(2.0 * base[0], rel=1e-12)
        assert doubled[1] == pytest.approx(2.0 * base[1], rel=1e-12)

    def test_rejects_out_of_range_support(self):
        matrix = sample_matrix(5, 8, seed=1)
        with pytest.raises(ValueError):
            extremal_singular(matrix, SupportSet((3, 8)))


class TestEmpiricalRic:
    def test_near_square_case_straddles_one(self):
        """k = m-1, n = m+1 at m=10: ||A x||/sqrt(m) concentrates near 1 for
        a fixed direction, so the exhaustive extremes straddle 1 within
        sampling noise."""
        uric, lric = empirical_ric(10, 11, 9, trials=10, support_budget=100, seed=2)
        assert uric.mode == MODE_EXHAUSTIVE and uric.supports_per_trial == 55
        assert lric.mean <= 1.0 <= uric.mean

    def test_ordering_every_trial(self):
        uric, lric = empirical_ric(6, 10, 3, trials=8, support_budget=300, seed=5)
        for lo, hi in zip(lric.per_trial, uric.per_trial):
            assert lo <= hi

    def test_exhaustive_matches_dense_direction_grid(self):
        """For k = 2 the unit sparse vectors on one support are a circle;
        a dense angle sweep of ||A x|| must reproduce the exhaustive
        extremes to grid resolution."""
        m, n, k = 4, 6, 2
        uric, lric = empirical_ric(m, n, k, trials=1, support_budget=100, seed=3)
        matrix = sample_matrix(m, n, seed=3, trial=0)
        thetas = np.linspace(0.0, 2.0 * np.pi, 40001)
        directions = np.stack([np.cos(thetas), np.sin(thetas)])
        best_hi = 0.0
        best_lo = math.inf
        import itertools

        for support in itertools.combinations(range(n), k):
            sub = matrix.entries[:, list(support)]
            norms = np.linalg.norm(sub @ directions, axis=0)
            best_hi = max(best_hi, float(norms.max()))
            best_lo = min(best_lo, float(norms.min()))
        assert uric.per_trial[0] == pytest.approx(best_hi / math.sqrt(m), abs=1e-5)
        assert lric.per_trial[0] == pytest.approx(best_lo / math.sqrt(m), abs=1e-5)

    def test_sampled_mode_budget_monotonicity(self):
        """Deterministic nested sampling: a larger budget sees a superset of
        supports, so uric cannot drop and lric cannot rise."""
        small_u, small_l = empirical_ric(8, 24, 3, trials=4, support_budget=50, seed=13)
        large_u, large_l = empirical_ric(8, 24, 3, trials=4, support_budget=400, seed=13)
        assert small_u.mode == MODE_SAMPLED
        for s, l in zip(small_u.per_trial, large_u.per_trial):
            assert l >= s
        for s, l in zip(small_l.per_trial, large_l.per_trial):
            assert l <= s

    def test_sampled_supports_are_nested_and_distinct(self):
        first = _sampled_supports(24, 3, 50, seed=13, trial=0)
        second = _sampled_supports(24, 3, 400, seed=13, trial=0)
        assert np.array_equal(first, second[:50])
        as_tuples = {tuple(row) for row in second.tolist()}
        assert len(as_tuples) == 400

    def test_statistics_fields(self):
        uric, lric = empirical_ric(5, 8, 2, trials=5, support_budget=1000, seed=1)
        assert uric.quantity == "uric" and lric.quantity == "lric"
        assert uric.trials == 5 and len(uric.per_trial) == 5
        assert uric.mean == pytest.approx(float(np.mean(uric.per_trial)))
        assert uric.stddev == pytest.approx(float(np.std(uric.per_trial, ddof=1)))

    def test_single_trial_stddev_is_zero(self):
        uric, _ = empirical_ric(5, 8, 2, trials=1, support_budget=1000, seed=1)
        assert uric.stddev == 0.0

    @pytest.mark.parametrize(
        "m,n,k,trials,budget",
        [(5, 8, 8, 1, 10), (8, 8, 2, 1, 10), (5, 8, 0, 1, 10), (5, 8, 2, 0, 10), (5, 8, 2, 1, 0)],
    )
    def test_rejects_infeasible(self, m, n, k, trials, budget):
        with pytest.raises(ValueError):
            empirical_ric(m, n, k, trials, budget, seed=1)


class TestSampledUnderstatesExhaustive:
    def test_sampled_extremes_are_inside_exact_ones(self):
        """Sampling supports can only shrink the max and grow the min."""
        exact_u, exact_l = empirical_ric(6, 12, 3, trials=4, support_budget=10_000, seed=21)
        samp_u, samp_l = empirical_ric(6, 12, 3, trials=4, support_budget=40, seed=21)
        assert exact_u.mode == MODE_EXHAUSTIVE and samp_u.mode == MODE_SAMPLED
        for s, e in zip(samp_u.per_trial, exact_u.per_trial):
            assert s <= e + 1e-12
        for s, e in zip(samp_l.per_trial, exact_l.per_trial):
            assert s >= e - 1e-12
