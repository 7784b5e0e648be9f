import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lejakit.disc import conjugate_doubling_section, leja_section
from lejakit.interval import (
    angle_recursion_section, gauss_lobatto_angles, project, project_from_disc,
    projection_index, sqrt_recursion_section, square_map_check, xi_angles,
)


def test_first_three_nodes():
    assert list(project_from_disc(3).nodes) == [1.0, -1.0, 0.0]


def test_first_nodes_values():
    r = project_from_disc(7).nodes
    s = math.sqrt(0.5)
    assert np.allclose(r, [1, -1, 0, s, -s, math.cos(math.pi / 8), -math.cos(math.pi / 8)],
                       atol=1e-16)


@pytest.mark.parametrize("k, j", [(0, 0), (1, 1), (2, 2), (3, 4), (4, 5), (5, 8), (8, 11), (9, 16), (17, 32)])
def test_projection_index(k, j):
    assert projection_index(k) == j


def test_projection_index_rejects_negative():
    with pytest.raises(ValueError):
        projection_index(-1)


@settings(deadline=None, max_examples=30)
@given(st.integers(min_value=2, max_value=3000))
def test_projection_consumes_minimal_disc_section(k):
    sec = project_from_disc(k)
    assert sec.consumed == projection_index(k - 1) + 1
    assert sec.folded[-1] == leja_section(projection_index(k - 1) + 1).angles[-1].folded()


def test_three_routes_agree_exactly():
    k = 4096
    a = project_from_disc(k)
    b = angle_recursion_section(k)
    assert a.same_nodes(b)
    assert a.folded == tuple(x.folded() for x in xi_angles(k))


def test_invariants():
    project_from_disc(2000).check_invariants()


def test_square_map():
    assert square_map_check(3000)


def test_square_map_detects_swap():
    sec = project_from_disc(12)
    ang = list(sec.angles)
    ang[4], ang[9] = ang[9], ang[4]
    assert not square_map_check(12, type(sec)(tuple(ang)))


@pytest.mark.parametrize("n", range(0, 12))
def test_gauss_lobatto_sections(n):
    sec = project_from_disc((1 << n) + 1)
    assert set(sec.folded) == gauss_lobatto_angles(n)


def test_sqrt_route_is_projection_of_conjugate_doubling():
    k = 1024
    r = sqrt_recursion_section(k)
    f = project(conjugate_doubling_section(2 * k), k).nodes
    assert np.max(np.abs(r - f)) <= 1e-14


def test_sqrt_route_differs_entrywise_from_canonical():
    r = sqrt_recursion_section(40)
    c = project_from_disc(40).nodes
    assert np.allclose(r[:7], c[:7], atol=1e-15)
    assert not np.allclose(r[7], c[7])
    assert not math.isclose(abs(r[13]), abs(c[13]))
    # same Gauss-Lobatto sets at k = 2^n + 1
    for n in range(1, 5):
        k = (1 << n) + 1
        assert np.allclose(np.sort(r[:k]), np.sort(c[:k]), atol=1e-14)


def test_alternating_signs():
    r = project_from_disc(501).nodes
    for j in range(2, 250):
        assert r[2 * j - 1] == -r[2 * j]


@pytest.mark.parametrize("bad", [project_from_disc, angle_recursion_section, sqrt_recursion_section])
def test_rejects_zero_length(bad):
    with pytest.raises(ValueError):
        bad(0)
