import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lejakit.disc import leja_section
from lejakit.interp import (
    LagrangeBasis, basis_eval, delta_apply, interpolate, newton_delta, newton_interpolate,
    operator_norm_on_grid,
)
from lejakit.interval import project_from_disc


def _section(domain, k):
    return leja_section(k) if domain == "disc" else project_from_disc(k)


def _points(domain, rng, m):
    if domain == "disc":
        return np.exp(2j * np.pi * rng.random(m))
    return np.cos(np.pi * rng.random(m))


def test_e2_basis_at_i():
    basis = LagrangeBasis(leja_section(2))
    assert abs(basis.eval(0, 1j)) == pytest.approx(np.sqrt(0.5), rel=1e-15)
    assert basis_eval(basis, 1, 1j) == pytest.approx((1j - 1) / (-2))


@pytest.mark.parametrize("domain", ["disc", "interval"])
def test_kronecker_on_nodes(domain):
    sec = _section(domain, 33)
    m = LagrangeBasis(sec).matrix(sec.nodes)
    assert np.array_equal(m, np.eye(33))


@pytest.mark.parametrize("domain", ["disc", "interval"])
@pytest.mark.parametrize("k", [1, 2, 7, 64, 128])
def test_partition_of_unity(domain, k):
    rng = np.random.default_rng(k)
    m = LagrangeBasis(_section(domain, k)).matrix(_points(domain, rng, 200))
    assert np.max(np.abs(m.sum(axis=1) - 1.0)) <= 1e-10


@settings(deadline=None, max_examples=25)
@given(st.sampled_from(["disc", "interval"]), st.integers(1, 128), st.integers(0, 2**32 - 1))
def test_degree_exactness(domain, k, seed):
    rng = np.random.default_rng(seed)
    coef = rng.standard_normal(k)
    sec = _section(domain, k)
    z = _points(domain, rng, 100)
    exact = np.polynomial.polynomial.polyval(z, coef)
    got = interpolate(LagrangeBasis(sec), np.polynomial.polynomial.polyval(sec.nodes, coef), z)
    assert np.max(np.abs(got - exact)) <= 1e-9 * max(1.0, np.max(np.abs(exact)))


@pytest.mark.parametrize("domain", ["disc", "interval"])
def test_newton_telescoping(domain):
    rng = np.random.default_rng(3)
    k = 96
    sec = _section(domain, k)
    f = lambda z: np.exp(z) * np.cos(3 * z)
    z = _points(domain, rng, 50)
    lagrange = interpolate(LagrangeBasis(sec), f(sec.nodes), z)
    newton = newton_interpolate(sec, f(sec.nodes), z)
    assert np.max(np.abs(newton - lagrange)) <= 1e-9 * np.max(np.abs(lagrange))


def test_newton_delta_vanishes_on_earlier_nodes():
    sec = project_from_disc(10)
    fv = np.sin(sec.nodes)
    d = newton_delta(sec, 6, fv)
    assert np.max(np.abs(d(sec.nodes[:6]))) == 0.0
    # Delta_l f(z_l) = f(z_l) - I_{Z_l} f(z_l)
    assert d(sec.nodes[6])[0] == pytest.approx(d.coefficient)
    assert delta_apply(sec, 0, fv, 0.3) == fv[0]


def test_interpolate_shape_check():
    with pytest.raises(ValueError):
        interpolate(LagrangeBasis(leja_section(4)), np.ones(3), 0.5j)


def test_newton_delta_argument_checks():
    sec = leja_section(4)
    with pytest.raises(ValueError):
        newton_delta(sec, 4, np.ones(5))
    with pytest.raises(ValueError):
        newton_delta(sec, 2, np.ones(2))


def test_basis_rejects_repeated_nodes():
    with pytest.raises(ValueError):
        LagrangeBasis(np.array([0.0, 0.5, 0.5]))


def test_real_basis_refuses_complex_points():
    with pytest.raises(TypeError):
        LagrangeBasis(project_from_disc(3)).matrix(np.array([0.5j]))


def test_operator_norm_on_grid_matches_lebesgue_at_roots():
    # E_2 = {1, -1}: lambda(i) = sqrt 2 is the maximum on the circle
    m = LagrangeBasis(leja_section(2)).matrix(np.array([1j, 1.0 + 0j]))
    assert operator_norm_on_grid(m) == pytest.approx(np.sqrt(2.0))
