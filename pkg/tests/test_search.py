import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lejakit.search import (
    CIRCLE, INTERVAL, SearchConfig, angles_to_points, grid_angles, sup_search,
)


@given(st.integers(1, 5000), st.integers(4, 200))
def test_grid_size_is_power_of_two_and_large_enough(k, mult):
    cfg = SearchConfig(grid_mult=mult)
    m = cfg.grid_size(k)
    assert m & (m - 1) == 0
    assert m >= max(cfg.min_grid, mult * k, 4 * k)


@pytest.mark.parametrize("kw", [{"grid_mult": 3}, {"refine_brackets": 0}, {"bracket_tol": 0.0}])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        SearchConfig(**kw)


def test_grid_avoids_dyadic_angles():
    th = grid_angles(CIRCLE, 1024) / math.pi
    # angles are odd multiples of pi/1024, never dyadic of lower order
    assert np.allclose(th * 1024 % 2, 1.0)


@settings(deadline=None, max_examples=30)
@given(st.floats(0.0, 2 * math.pi), st.integers(1, 9))
def test_finds_smooth_maximum_on_circle(phase, freq):
    fn = lambda z: np.cos(freq * (np.angle(z) - phase)) + 0.1 * np.cos(np.angle(z) - phase)
    res = sup_search(fn, CIRCLE, SearchConfig(min_grid=1024))
    assert res.ok
    assert res.value == pytest.approx(1.1, abs=1e-12)


def test_interval_endpoint_maximum():
    res = sup_search(lambda x: x**3, INTERVAL, SearchConfig(min_grid=1024))
    assert res.value <= 1.0
    assert res.value == pytest.approx(1.0, abs=1e-9)
    assert res.point == pytest.approx(1.0, abs=1e-6)


def test_budget_flag():
    res = sup_search(np.abs, CIRCLE, SearchConfig(max_grid=16), k=1)
    assert res.status == "budget"
    assert not res.ok
    assert math.isnan(res.value)


def test_nonfinite_flag():
    res = sup_search(lambda z: np.full(z.shape, np.nan), CIRCLE, SearchConfig(min_grid=64))
    assert res.status == "nonfinite"


def test_extra_candidates_participate():
    # a spike the grid cannot see, supplied as an extra angle
    fn = lambda z: np.where(np.abs(z - 1j) < 1e-12, 5.0, 0.0)
    res = sup_search(fn, CIRCLE, SearchConfig(min_grid=64), extra=[math.pi / 2])
    assert res.value == 5.0


def test_deterministic_tie_break_leftmost():
    res = sup_search(lambda z: np.ones(z.shape), CIRCLE, SearchConfig(min_grid=64))
    assert res.angle == grid_angles(CIRCLE, 64)[0]


def test_angles_to_points():
    assert angles_to_points(INTERVAL, [0.0, math.pi])[1] == -1.0
    with pytest.raises(ValueError):
        angles_to_points("sphere", [0.0])
