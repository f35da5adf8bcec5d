import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fuchsian_carleson.denjoy import (
    IntervalUnion, cantor_set, default_t_grid, homogeneity_constant, homogeneity_profile,
    homogeneity_trend, limit_set_homogeneity, puncture_set,
)

interval_lists = st.lists(
    st.tuples(st.floats(-10, 10), st.floats(0.001, 3)).map(lambda p: (p[0], p[0] + p[1])),
    min_size=1, max_size=8)


def brute_window(intervals, x, t):
    return sum(max(0.0, min(b, x + t) - max(a, x - t)) for a, b in intervals)


def test_unit_interval_is_exactly_one():
    assert homogeneity_constant(IntervalUnion.from_intervals([(0.0, 1.0)])) == 1.0


def test_two_points_give_zero():
    assert homogeneity_constant(IntervalUnion.from_intervals([(0.0, 0.0), (1.0, 1.0)])) == 0.0
    with pytest.raises(ValueError):
        homogeneity_constant(IntervalUnion.from_intervals([]))


def test_cantor_examples():
    assert cantor_set(0).intervals == [(0.0, 1.0)]
    c1 = cantor_set(1)
    assert np.allclose(np.array(c1.intervals), [[0, 1 / 3], [2 / 3, 1]], atol=1e-15)
    c3 = cantor_set(3)
    assert len(c3) == 8 and np.allclose(c3.ends - c3.starts, 1 / 27, atol=1e-15)
    for L in (0, 4, 9, 12):
        E = cantor_set(L)
        assert len(E) == 2 ** L
        assert abs(E.total_length - (2 / 3) ** L) < 1e-12
    E = cantor_set(5, 0.5)
    assert abs(E.total_length - 0.5 ** 5) < 1e-12
    with pytest.raises(ValueError):
        cantor_set(2, 1.0)


def test_merging_and_validation():
    E = IntervalUnion.from_intervals([(2, 3), (0, 1), (1 + 1e-13, 1.5), (2.5, 4)])
    assert E.intervals == [(0.0, 1.5), (2.0, 4.0)]
    assert E.total_length == 3.5 and E.diameter == 4.0
    with pytest.raises(ValueError):
        IntervalUnion.from_intervals([(1, 0)])


def test_uniform_points_covered_at_spacing():
    pts = np.linspace(0, 1, 101)
    assert limit_set_homogeneity(pts, 0.01) > 0.99


def test_two_accumulation_points_tend_to_zero():
    k = np.arange(1, 40)
    pts = np.concatenate([2.0 ** -k, 1 + 2.0 ** -k, [0.0, 1.0]])
    trend = [c for _, c in homogeneity_trend(pts, [1e-2, 1e-3, 1e-4, 1e-5])]
    assert all(b < a for a, b in zip(trend, trend[1:]))
    assert trend[-1] < 0.05


def test_puncture_set_trend_strictly_decreasing():
    pts = puncture_set(5)
    assert list(pts) == [-32, -16, -8, -4, -2, 0, 2, 4, 8, 16, 32]
    trend = [c for _, c in homogeneity_trend(pts, [0.1, 0.01, 0.001])]
    assert trend[0] > trend[1] > trend[2]
    # isolated points of width eps inside gaps of size >= 2: the constant is about eps/t_max
    assert trend[2] < 1e-3


def test_profile_grid():
    t = default_t_grid(2.0)
    assert len(t) == 385 and abs(t[-1] - 2.0) < 1e-15 and abs(t[0] - 2e-6) < 1e-18
    tt, prof = homogeneity_profile(cantor_set(2))
    assert tt.shape == prof.shape and (prof > 0).all()


@given(interval_lists, st.floats(-12, 12), st.floats(1e-4, 20))
def test_window_measure_matches_brute_force(iv, x, t):
    E = IntervalUnion.from_intervals(iv)
    assert abs(E.window_measure(x, t) - brute_window(E.intervals, x, t)) < 1e-12 * max(1, t)


@given(interval_lists, st.floats(0.1, 10), st.floats(-5, 5))
def test_scale_equivariance(iv, a, b):
    E = IntervalUnion.from_intervals(iv)
    F = E.affine(a, b)
    x = np.concatenate([E.starts, E.ends, 0.5 * (E.starts + E.ends)])
    tg = default_t_grid(E.diameter, 8, 3)
    c1 = homogeneity_constant(E, tg, x)
    c2 = homogeneity_constant(F, a * tg, a * x + b)
    assert abs(c1 - c2) < 1e-9


@given(interval_lists, interval_lists)
def test_monotone_in_set(iv, extra):
    E = IntervalUnion.from_intervals(iv)
    F = IntervalUnion.from_intervals(iv + extra)
    x = np.concatenate([E.starts, E.ends])
    tg = default_t_grid(max(E.diameter, 1e-3), 8, 3)
    # on matched (x, t) grids, enlarging the set cannot shrink any window
    assert (F.window_measure(x[:, None], tg[None]) >= E.window_measure(x[:, None], tg[None]) - 1e-12).all()


def test_cantor_constant_decays_geometrically():
    # the approximations lose measure like (2/3)^L, and so does their constant
    vals = {L: homogeneity_constant(cantor_set(L)) for L in (4, 8, 12)}
    for L, v in vals.items():
        assert 0.5 * (2 / 3) ** L < v < (2 / 3) ** L
    assert vals[12] / vals[8] < 0.25
