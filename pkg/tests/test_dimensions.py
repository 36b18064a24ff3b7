import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robustreg import (
    cover_size_bound,
    dual_class,
    dual_fat_shattering,
    dual_fat_upper_bound,
    fat_shattering,
    greedy_cover,
)
from robustreg.errors import CapExceeded, InvalidParameter

from conftest import make_class
from reference import brute_fat, brute_min_cover_size


class TestFatShattering:
    def test_two_constants_margin_boundary(self):
        cls = make_class([[0.2], [0.8]])
        assert fat_shattering(cls, 0.3) == 1
        assert fat_shattering(cls, 0.31) == 0

    def test_empty_class(self):
        assert fat_shattering(np.zeros((0, 3)), 0.1) == 0

    def test_single_hypothesis_shatters_nothing(self):
        assert fat_shattering(make_class([[0.0, 1.0, 0.5]]), 0.1) == 0

    def test_full_sign_pattern_class(self):
        cls = make_class([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
        assert fat_shattering(cls, 0.5) == 2
        assert fat_shattering(cls, 0.51) == 0

    def test_constants_cannot_shatter_two_points(self):
        cls = make_class([[0.0, 0.0], [0.5, 0.5], [1.0, 1.0]])
        assert fat_shattering(cls, 0.25) == 1

    def test_mixed_margins(self):
        cls = make_class([[0.4, 0.1], [0.4, 0.9], [0.6, 0.1], [0.6, 0.9]])
        assert fat_shattering(cls, 0.1) == 2
        assert fat_shattering(cls, 0.11) == 1  # first point's spread is only 0.2
        assert fat_shattering(cls, 0.41) == 0

    def test_cap_exceeded(self):
        with pytest.raises(CapExceeded):
            fat_shattering(np.full((4, 20), 0.5), 0.1)
        with pytest.raises(CapExceeded):
            fat_shattering(np.full((300, 4), 0.5), 0.1)

    def test_gamma_must_be_positive(self):
        with pytest.raises(InvalidParameter):
            fat_shattering(make_class([[0.5]]), 0.0)

    @given(st.data())
    @settings(max_examples=40, deadline=None)
    def test_matches_brute_force(self, data):
        n_h = data.draw(st.integers(1, 12))
        n = data.draw(st.integers(1, 5))
        levels = np.linspace(0, 1, 6)
        matrix = levels[data.draw(st.lists(
            st.lists(st.integers(0, 5), min_size=n, max_size=n),
            min_size=n_h, max_size=n_h).map(np.array))]
        gamma = data.draw(st.sampled_from([0.1, 0.2, 0.3]))
        assert fat_shattering(matrix, gamma) == brute_fat(matrix, gamma)

    @given(st.data())
    @settings(max_examples=25, deadline=None)
    def test_monotone_in_gamma_and_capped_by_log2(self, data):
        rng = np.random.default_rng(data.draw(st.integers(0, 10 ** 6)))
        matrix = rng.uniform(size=(data.draw(st.integers(1, 10)),
                                   data.draw(st.integers(1, 4))))
        fats = [fat_shattering(matrix, g) for g in (0.05, 0.15, 0.3)]
        assert fats == sorted(fats, reverse=True)
        assert fats[0] <= math.log2(max(matrix.shape[0], 1)) + 1e-9


class TestDualClass:
    def test_one_by_one(self):
        cls = make_class([[0.5]])
        assert dual_class(cls).matrix.tolist() == [[0.5]]

    def test_transpose(self):
        cls = make_class([[0.1, 0.2, 0.3], [0.7, 0.8, 0.9]])
        assert dual_class(cls).matrix.tolist() == [[0.1, 0.7], [0.2, 0.8], [0.3, 0.9]]

    @given(st.data())
    @settings(max_examples=20, deadline=None)
    def test_double_dual_has_the_same_fat(self, data):
        rng = np.random.default_rng(data.draw(st.integers(0, 10 ** 6)))
        matrix = rng.uniform(size=(data.draw(st.integers(1, 8)),
                                   data.draw(st.integers(1, 4))))
        double = dual_class(dual_class(matrix)).matrix
        for g in (0.1, 0.25):
            assert fat_shattering(matrix, g) == fat_shattering(double, g)

    @given(st.integers(0, 10 ** 6))
    @settings(max_examples=20, deadline=None)
    def test_dual_fat_within_the_stated_bound(self, seed):
        rng = np.random.default_rng(seed)
        matrix = rng.uniform(size=(rng.integers(2, 10), rng.integers(2, 5)))
        for g in (0.2, 0.4):
            dual = dual_fat_shattering(matrix, g)
            bound = dual_fat_upper_bound(fat_shattering(matrix, g / 2), g, c=4.0)
            assert dual <= bound


class TestDualFatUpperBound:
    def test_formula(self):
        assert dual_fat_upper_bound(2, 0.1) == pytest.approx(80.0)
        assert dual_fat_upper_bound(0, 1.0) == pytest.approx(2.0)

    def test_linear_in_c(self):
        assert dual_fat_upper_bound(3, 0.2, c=2.0) == pytest.approx(
            2 * dual_fat_upper_bound(3, 0.2, c=1.0))

    def test_ranges(self):
        with pytest.raises(InvalidParameter):
            dual_fat_upper_bound(2, 0.0)
        with pytest.raises(InvalidParameter):
            dual_fat_upper_bound(2, 0.5, c=-1.0)


class TestGreedyCover:
    def test_empty(self):
        assert greedy_cover([], 0.1) == ([], [])

    def test_two_close_points_one_center(self):
        centers, assignment = greedy_cover([[0.0, 0.0], [0.1, 0.0]], 0.15)
        assert len(centers) == 1
        assert assignment == [centers[0], centers[0]]

    def test_two_far_points_two_centers(self):
        centers, _ = greedy_cover([[0.0, 0.0], [0.1, 0.0]], 0.05)
        assert len(centers) == 2

    @given(st.data())
    @settings(max_examples=40, deadline=None)
    def test_certificate_and_internal_centers(self, data):
        rng = np.random.default_rng(data.draw(st.integers(0, 10 ** 6)))
        pts = rng.uniform(size=(data.draw(st.integers(1, 40)),
                                data.draw(st.integers(1, 8))))
        t = data.draw(st.sampled_from([0.05, 0.2, 0.5]))
        centers, assignment = greedy_cover(pts, t)
        assert set(assignment) == set(centers)
        for i, c in enumerate(assignment):
            assert np.abs(pts[i] - pts[c]).max() <= t

    @given(st.integers(0, 10 ** 6))
    @settings(max_examples=30, deadline=None)
    def test_within_log_factor_of_the_exact_minimum(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 13))
        pts = rng.uniform(size=(n, int(rng.integers(1, 5))))
        t = float(rng.choice([0.1, 0.25, 0.4]))
        centers, _ = greedy_cover(pts, t)
        assert len(centers) <= (1 + math.log(n)) * brute_min_cover_size(pts, t)


class TestCoverSizeBound:
    def test_formula_value(self):
        expected = math.exp(math.log(8.0) * math.log(4.0) ** 0.5)
        assert cover_size_bound(2, 0.25, 1, C=1.0, a=0.5) == pytest.approx(expected)
        assert cover_size_bound(2, 0.25, 1, C=1.0, a=0.5) == pytest.approx(11.569303, abs=1e-6)

    def test_monotone_in_n(self):
        values = [cover_size_bound(n, 0.2, 2) for n in (4, 8, 16, 32)]
        assert values == sorted(values)

    def test_decreasing_in_t(self):
        values = [cover_size_bound(16, t, 2) for t in (0.1, 0.2, 0.4)]
        assert values == sorted(values, reverse=True)

    def test_ranges(self):
        for bad in ((10, 0.6, 1), (10, 0.2, 0), (1, 0.2, 2)):
            with pytest.raises(InvalidParameter):
                cover_size_bound(*bad)
        with pytest.raises(InvalidParameter):
            cover_size_bound(10, 0.2, 1, a=1.0)
