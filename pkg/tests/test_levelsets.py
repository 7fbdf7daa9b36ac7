import numpy as np
import pytest

from a1lab.errors import DomainError, ParameterRangeError, PreconditionError
from a1lab.levelsets import (
    check_level_bound,
    component_averages,
    layer_cake_check,
    level_set,
)
from a1lab.maximal import a1_constant_exact, maximal_at_all_breakpoints_fast, maximal_values
from a1lab.weights import Interval, PiecewiseConstantWeight, PowerWeight, random_weight


def sup_maximal(w):
    return max(b.left for b in maximal_at_all_breakpoints_fast(w))


class TestLevelSet:
    def test_below_mean_is_everything(self, two_piece):
        ls = level_set(two_piece, 1.4)
        assert ls.components == (Interval(0, 1),)
        assert ls.measure == 1.0

    @pytest.mark.parametrize("lam", [3.0, 3.5, 10.0])
    def test_constant_above_value_is_empty(self, lam):
        ls = level_set(PiecewiseConstantWeight.constant(3.0), lam)
        assert ls.components == ()
        assert ls.measure == 0.0

    def test_two_piece_hand_solve(self, two_piece):
        # (x + 0.5)/x = 1.8 on the right piece  ->  x = 0.625
        ls = level_set(two_piece, 1.8)
        assert ls.components == (Interval(0.0, 0.625),)
        assert ls.mass == 1.125
        # grid cross-check against the pointwise evaluator
        xs = np.linspace(0.001, 0.999, 999)
        inside = maximal_values(two_piece, xs) > 1.8
        assert np.array_equal(inside, xs < 0.625)

    def test_rejects_nonpositive(self, two_piece):
        with pytest.raises(DomainError):
            level_set(two_piece, 0.0)

    def test_power(self):
        w = PowerWeight(2.0)
        ls = level_set(w, 4.0)
        # 2 t^(-1/2) > 4  <=>  t < 1/4
        assert ls.measure == pytest.approx(0.25, rel=1e-15)
        assert ls.mass == pytest.approx(1.0, rel=1e-15)

    @pytest.mark.parametrize("seed", range(60))
    def test_matches_pointwise(self, seed):
        w = random_weight(seed, 12)
        xs = np.random.default_rng(seed).uniform(1e-4, 1 - 1e-4, 800)
        M = maximal_values(w, xs)
        for lam in np.linspace(w.total_mass, M.max() * 1.01, 9):
            ls = level_set(w, lam)
            inside = np.zeros(len(xs), bool)
            for I in ls.components:
                inside |= (xs > I.lo) & (xs < I.hi)
            mismatch = (inside != (M > lam)) & (np.abs(M - lam) > 1e-12 * lam)
            assert not mismatch.any()

    @pytest.mark.parametrize("seed", range(40))
    def test_structure_and_monotonicity(self, seed):
        w = random_weight(seed, 12)
        top = sup_maximal(w)
        lams = np.linspace(w.total_mass, top, 12)
        prev = None
        for lam in lams:
            ls = level_set(w, lam)
            comps = ls.components
            assert all(a.hi <= b.lo for a, b in zip(comps, comps[1:]))
            assert 0.0 <= ls.measure <= 1.0
            if prev is not None:
                # E for the larger lambda sits inside some component of the smaller one
                for I in comps:
                    assert any(J.lo <= I.lo and I.hi <= J.hi for J in prev.components)
            prev = ls
        assert level_set(w, top).measure == 0.0
        assert level_set(w, np.nextafter(w.total_mass, 0)).measure == 1.0

    @pytest.mark.parametrize("seed", range(40))
    def test_component_averages_at_most_lambda(self, seed):
        w = random_weight(seed, 12)
        for lam in np.linspace(w.total_mass, sup_maximal(w), 10):
            ls = level_set(w, lam)
            if ls.components == (Interval(0, 1),):
                continue
            for avg in component_averages(ls, w):
                assert avg <= lam * (1 + 1e-12)


class TestLevelBound:
    def test_hand_case_exact_equality(self, two_piece):
        b = check_level_bound(two_piece, 1.8)
        assert b.measure == 0.625
        assert b.mass_over_lambda == 0.625
        assert b.passed

    def test_constant_at_mean(self):
        b = check_level_bound(PiecewiseConstantWeight.constant(2.0), 2.0)
        assert (b.measure, b.mass_over_lambda, b.passed) == (0.0, 0.0, True)

    def test_precondition(self, two_piece):
        with pytest.raises(PreconditionError):
            check_level_bound(two_piece, 1.0)

    @pytest.mark.parametrize("seed", range(100))
    def test_random(self, seed):
        w = random_weight(seed, 16)
        for lam in np.linspace(w.total_mass, sup_maximal(w), 8):
            assert check_level_bound(w, lam).passed


class TestLayerCake:
    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    def test_constant(self, p):
        r = layer_cake_check(PiecewiseConstantWeight.constant(1.7), p)
        assert r.lhs == pytest.approx(1.7**p, rel=1e-12)
        assert r.rhs == pytest.approx(1.7**p, rel=1e-9)

    def test_two_piece(self, two_piece):
        r = layer_cake_check(two_piece, 1.3)
        assert r.diff < 1e-6

    def test_power_closed_form(self):
        # int_0^1 (c t^e)^p = c^p / (1 + e p) = 2^1.5 * 4
        r = layer_cake_check(PowerWeight(2.0), 1.5)
        assert r.lhs == pytest.approx(2**1.5 * 4, rel=1e-8)
        assert r.rhs == pytest.approx(2**1.5 * 4, rel=1e-8)

    def test_p_range(self, two_piece):
        for p in (1.0, 2.0, 2.5):
            with pytest.raises(ParameterRangeError):
                layer_cake_check(two_piece, p)


def test_layer_cake_thin_neighbour_regression():
    # a 7e-4 wide piece next to a wide one; whole-piece panels missed the rise of M by 8e-7
    w = random_weight(44, max_pieces=16, value_range=(1.0, 3.0))
    r = layer_cake_check(w, 1.3, tol=1e-10)
    assert r.diff <= 1e-8 * r.lhs
