import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lejakit.binary import binary_stats, sigma1
from lejakit.disc import leja_section
from lejakit.interval import project_from_disc
from lejakit.lebesgue import (
    SectionEvaluator, diff_norm_direct, diff_norm_interval,
    diff_norm_disc, diff_norm_generic, disc_report, gamma, gamma_K, gamma_bound,
    interval_indices, interval_report, lebesgue2_at, lebesgue_at, next_point_profile,
    roots_of_unity_bound, roots_of_unity_constant, sup_lebesgue, sup_W,
)
from lejakit.search import SearchConfig

CFG = SearchConfig()


def mp_lebesgue(nodes, z, dps=40):
    """Independent high-precision oracle: (sum |l_j|, (sum |l_j|^2)^(1/2))."""
    with mpmath.workdps(dps):
        zs = [mpmath.mpc(complex(v)) for v in nodes]
        zz = mpmath.mpc(complex(z))
        mags = []
        for j, zj in enumerate(zs):
            t = mpmath.mpf(1)
            for i, zi in enumerate(zs):
                if i != j:
                    t *= abs(zz - zi) / abs(zj - zi)
            mags.append(t)
        return float(mpmath.fsum(mags)), float(mpmath.sqrt(mpmath.fsum(m * m for m in mags)))


def roots_of_unity_oracle(n):
    # maximum of the Lebesgue function of the n-th roots of unity is reached
    # midway between two roots, where it equals (1/n) sum_j csc(pi (2j+1) / (2n))
    return math.fsum(1.0 / math.sin(math.pi * (2 * j + 1) / (2 * n)) for j in range(n)) / n


# --- pointwise values -------------------------------------------------------

def test_value_one_on_nodes():
    for sec in (leja_section(20), project_from_disc(20)):
        assert np.array_equal(lebesgue_at(sec, sec.nodes), np.ones(20))
        assert lebesgue2_at(sec, sec.nodes[3]) == 1.0


def test_e2_at_i():
    assert lebesgue_at(leja_section(2), 1j) == pytest.approx(math.sqrt(2.0), rel=1e-15)


@pytest.mark.parametrize("n", range(1, 9))
def test_lambda_at_next_for_all_ones(n):
    k = (1 << n) - 1
    seq = leja_section(k + 1)
    assert lebesgue_at(seq[:k], seq.nodes[k]) == pytest.approx(k, rel=1e-12)


def test_quadratic_at_e3():
    seq = leja_section(4)
    assert lebesgue2_at(seq[:3], seq.nodes[3]) == pytest.approx(math.sqrt(3.0), rel=1e-14)


@settings(deadline=None, max_examples=15)
@given(st.sampled_from(["disc", "interval"]), st.integers(2, 40), st.floats(0.0, 2 * math.pi))
def test_against_mpmath_oracle(domain, k, theta):
    sec = leja_section(k) if domain == "disc" else project_from_disc(k)
    z = complex(math.cos(theta), math.sin(theta)) if domain == "disc" else math.cos(theta)
    lam_ref, lam2_ref = mp_lebesgue(sec.nodes, z)
    lam, lam2 = (v[0] for v in SectionEvaluator(sec).both(z))
    assert lam == pytest.approx(lam_ref, rel=1e-12)
    assert lam2 == pytest.approx(lam2_ref, rel=1e-12)


@settings(deadline=None, max_examples=25)
@given(st.sampled_from(["disc", "interval"]), st.integers(1, 300), st.integers(0, 2**32 - 1))
def test_norm_chain_pointwise(domain, k, seed):
    rng = np.random.default_rng(seed)
    if domain == "disc":
        sec, z = leja_section(k), np.exp(2j * np.pi * rng.random(50))
    else:
        sec, z = project_from_disc(k), np.cos(np.pi * rng.random(50))
    lam, lam2 = SectionEvaluator(sec).both(z)
    assert np.all(lam2 <= lam * (1 + 1e-12))
    assert np.all(lam <= math.sqrt(k) * lam2 * (1 + 1e-12))


@pytest.mark.parametrize("n", range(0, 13))
def test_quadratic_function_is_one_on_roots_of_unity(n):
    z = np.exp(2j * np.pi * np.random.default_rng(n).random(200))
    assert np.max(np.abs(lebesgue2_at(leja_section(1 << n), z) - 1.0)) <= 1e-10


# --- identities through the next-point profile ------------------------------

@pytest.fixture(scope="module")
def disc_profile():
    return next_point_profile("disc", 4097)


def test_quadratic_identity_profile(disc_profile):
    for k in range(1, 4097):
        q = 2.0 ** sigma1(k)
        assert abs(disc_profile.lam2[k] ** 2 - (q - 1)) / q <= 1e-9, k


def test_odd_step_recursions(disc_profile):
    for n_ in range(1, 2049):
        k = 2 * n_ + 1
        assert disc_profile.lam2[k] ** 2 == pytest.approx(2 * disc_profile.lam2[n_] ** 2 + 1, rel=1e-9)
        assert disc_profile.lam[k] == pytest.approx(2 * disc_profile.lam[n_] + 1, rel=1e-9)


def test_lower_bound_at_next_node(disc_profile):
    for k in range(1, 4097):
        assert disc_profile.lam[k] >= 2.0 ** sigma1(k) - 1 - 1e-9


def test_log_w_profile_is_sigma1(disc_profile):
    k = np.arange(1, 4097)
    assert np.allclose(disc_profile.logw[1:4097], [sigma1(int(i)) * math.log(2) for i in k],
                       atol=1e-10)


def test_profile_matches_direct_evaluation():
    for domain, seq in (("disc", leja_section(201)), ("interval", project_from_disc(201))):
        prof = next_point_profile(domain, 200)
        for k in (1, 2, 17, 64, 200):
            lam, lam2 = (v[0] for v in SectionEvaluator(seq[:k]).both(seq.nodes[k]))
            assert prof.lam[k] == pytest.approx(lam, rel=1e-11)
            assert prof.lam2[k] == pytest.approx(lam2, rel=1e-11)


def test_profile_rejects_unknown_domain():
    with pytest.raises(ValueError):
        next_point_profile("sphere", 3)


@pytest.mark.parametrize("big_n", [1, 2, 3, 5, 16, 100, 777, 2048])
def test_halving_identity(big_n):
    z = np.exp(2j * np.pi * np.random.default_rng(big_n).random(1000))
    full = SectionEvaluator(leja_section(2 * big_n))
    half = SectionEvaluator(leja_section(big_n))
    lam_f, lam2_f = full.both(z)
    lam_h, lam2_h = half.both(z * z)
    assert np.max(np.abs(lam2_f - lam2_h)) <= 1e-10
    assert np.all(lam_f >= lam_h - 1e-10)


@pytest.mark.parametrize("k", [1, 2, 3, 7, 30, 129, 512])
def test_growth_inequality_disc(k):
    z = np.exp(2j * np.pi * np.random.default_rng(k).random(300))
    nodes = leja_section(k + 1).nodes
    cur, nxt = SectionEvaluator(nodes[:k]), SectionEvaluator(nodes)
    bound = cur.lam2(z) + cur.lam2(nodes[k:])[0] + 1.0
    assert np.all(nxt.lam2(z) <= bound + 1e-9)


def test_growth_inequality_interval_needs_the_ratio_factor():
    k = 5
    nodes = project_from_disc(k + 1).nodes
    z = np.cos(np.pi * np.linspace(0.001, 0.999, 2000))
    cur, nxt = SectionEvaluator(nodes[:k]), SectionEvaluator(nodes)
    lam2_k = cur.lam2(nodes[k:])[0]
    plain = cur.lam2(z) + lam2_k + 1.0
    assert np.any(nxt.lam2(z) > plain + 1e-3)  # not a Leja sequence on [-1, 1]
    ratio = np.exp(cur.log_w(z) - cur.log_w(nodes[k:])[0])
    assert np.all(nxt.lam2(z) <= cur.lam2(z) + ratio * (lam2_k + 1.0) + 1e-9)


# --- suprema ----------------------------------------------------------------

def test_sup_single_node():
    assert sup_lebesgue(leja_section(1), CFG).value == pytest.approx(1.0, rel=1e-12)


def test_sup_two_nodes():
    assert sup_lebesgue(leja_section(2), CFG).value == pytest.approx(math.sqrt(2.0), rel=1e-9)


@pytest.mark.parametrize("n", range(1, 7))
def test_sup_all_ones_index(n):
    k = (1 << n) - 1
    assert sup_lebesgue(leja_section(k), CFG).value == pytest.approx(k, rel=1e-6)


@pytest.mark.parametrize("p", range(0, 9))
def test_roots_of_unity_constant_against_closed_form(p):
    got = roots_of_unity_constant(p).value
    assert got == pytest.approx(roots_of_unity_oracle(1 << p), rel=1e-9)
    assert got <= roots_of_unity_bound(p) * (1 + 1e-9)


def test_roots_of_unity_bound_values():
    assert roots_of_unity_bound(0) == 1.0
    assert roots_of_unity_bound(1) == math.sqrt(2.0)
    assert roots_of_unity_bound(3) == pytest.approx(2 / math.pi * (3 * math.log(2) + 2.25))


@pytest.mark.parametrize("make, k", [(disc_report, 33), (disc_report, 64), (interval_report, 20),
                                     (interval_report, 65)])
def test_report_invariants(make, k):
    r = make(k, CFG)
    assert r.status == "ok"
    assert r.L >= r.lambda_at_next
    assert r.L >= 1.0 and r.L2 >= 1.0 - 1e-12
    assert r.L <= math.sqrt(k) * r.L2 * (1 + 1e-9)


def test_gauss_lobatto_constant_below_log_bound():
    for n in range(1, 8):
        r = interval_report((1 << n) + 1, CFG)
        assert r.L <= 1 + 2 / math.pi * n * math.log(2)


def test_interval_power_of_two_lower_bound():
    for n in range(2, 8):
        r = interval_report(1 << n, CFG)
        assert r.lambda_at_next == pytest.approx((1 << n) - 1, rel=1e-9)


def test_three_k_fails_at_252():
    sec = project_from_disc(252)
    assert lebesgue_at(sec, math.cos(1.534570035912436)) > 3 * 252
    assert sup_lebesgue(project_from_disc(129), CFG).value <= 3 * 129


# --- difference operators ---------------------------------------------------

def test_diff_norm_disc_values():
    assert diff_norm_disc(1) == 2.0
    assert diff_norm_disc(2) == pytest.approx(1 + math.sqrt(2.0), rel=1e-15)
    for n in range(1, 9):
        assert diff_norm_disc((1 << n) - 1) == pytest.approx(1 << n, rel=1e-12)
    with pytest.raises(ValueError):
        diff_norm_disc(0)


def test_diff_norm_disc_matches_definition():
    for k in (1, 3, 6, 11, 20):
        assert diff_norm_direct(leja_section(k + 1), CFG)[0] == pytest.approx(diff_norm_disc(k), rel=1e-9)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 7, 12, 33, 40])
def test_interval_diff_norm_three_routes(k):
    a = diff_norm_interval(k, CFG).value
    seq = project_from_disc(k + 1)
    b = diff_norm_generic(seq[:k], seq.nodes[k], CFG)[0]
    c = diff_norm_direct(seq, CFG)[0]
    assert a == pytest.approx(b, rel=1e-8)
    assert a == pytest.approx(c, rel=1e-8)


def test_beta_values():
    for n in range(0, 9):
        assert diff_norm_interval(1 << n, CFG).beta == pytest.approx(0.25, rel=1e-9)
    for k in (3, 5, 6, 7, 9, 100, 255, 300, 511):
        s = binary_stats(k)
        assert diff_norm_interval(k, CFG).beta <= 2.0 ** (s.sigma0 - s.p - 1) * (1 + 1e-9)


def test_diff_norm_interval_quadratic_bound():
    for k in range(1, 130):
        assert diff_norm_interval(k, CFG).value <= (1 + k) ** 2


def test_sup_w_small():
    assert sup_W(2, CFG) == pytest.approx(4.0, rel=1e-12)
    assert sup_W(1, CFG) == pytest.approx(4.0, rel=1e-12)


@pytest.mark.parametrize("k", [3, 4, 5, 8, 13, 16, 31, 32, 100, 128, 200, 256])
def test_sup_w_bounds(k):
    n = (k - 1).bit_length() - 1
    s = binary_stats(k)
    bound = 2.0 ** (n + 3) if k == 2 << n else 2.0 ** (2 * s.sigma1 + s.p - 1)
    assert sup_W(k, CFG) <= bound * (1 + 1e-9)


# --- gamma ------------------------------------------------------------------

def test_gamma_first_values():
    assert gamma(1, 1) == pytest.approx(1.25, abs=1e-12)
    for m in range(2, 11):
        assert gamma(m, 1) == pytest.approx(1 + 1 / (2**m * math.sin(math.pi / 2**m)) ** 2, rel=1e-12)


@pytest.mark.parametrize("m, l", [(0, 1), (1, 0), (1, 2), (3, 5)])
def test_gamma_domain(m, l):
    with pytest.raises(ValueError):
        gamma(m, l)


def test_gamma_bound_formula():
    assert gamma_bound(1) == 1.25
    assert gamma_bound(2) == 0.625
    assert gamma_bound(3) == 0.625


def test_gamma_against_mpmath():
    m, l = 4, 5
    k_big = (1 << m) + l
    nodes = leja_section(k_big).nodes
    with mpmath.workdps(40):
        f = [mpmath.mpc(complex(v)) for v in nodes[1 << m:]]
        tot = mpmath.mpf(0)
        for e in nodes:
            w = mpmath.fprod(abs(mpmath.conj(mpmath.mpc(complex(e))) - x) for x in f)
            tot += 4 / w**2
        ref = float(tot / mpmath.mpf(4) ** m)
    assert gamma(m, l) == pytest.approx(ref, rel=1e-12)


def test_interval_indices():
    assert interval_indices(2) == (0, 0, 2)
    assert interval_indices(3) == (1, 0, 4)
    assert interval_indices(7) == (2, 2, 10)
    with pytest.raises(ValueError):
        interval_indices(1)


@settings(deadline=None, max_examples=20)
@given(st.integers(2, 120), st.integers(0, 2**32 - 1))
def test_gamma_k_bounds_interval_lebesgue_function(k, seed):
    z = np.exp(2j * np.pi * np.random.default_rng(seed).random(100))
    lam = lebesgue_at(project_from_disc(k), z.real)
    assert np.all(lam <= (gamma_K(k, z) + gamma_K(k, np.conj(z))) * (1 + 1e-9))
