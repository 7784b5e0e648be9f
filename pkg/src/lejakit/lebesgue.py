"""Lebesgue functions, Lebesgue constants and difference-operator norms.

For a section ``Z_k`` the Lebesgue function is ``lambda(z) = sum_j |l_j(z)|``
and the quadratic one ``lambda_2(z) = (sum_j |l_j(z)|^2)^(1/2)``; their
maxima over the circle (disc sections) or over [-1, 1] (R-Leja sections)
are found with :func:`lejakit.search.sup_search`.
"""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .binary import binary_stats
from .disc import leja_section
from .interval import project_from_disc, projection_index
from .interp import LagrangeBasis
from .search import (CIRCLE, INTERVAL, SearchConfig, SearchResult, angles_to_points,
                     grid_angles, refine_maxima, sup_search)

LOG2 = math.log(2.0)
_LOG_FLOOR = -1e300


class SectionEvaluator:
    """Precomputed derivative weights of one section, evaluated many times."""

    def __init__(self, section):
        nodes = section.nodes if hasattr(section, "nodes") else np.asarray(section)
        self.nodes = np.asarray(nodes)
        self.k = self.nodes.size
        self.domain = getattr(section, "domain", CIRCLE if np.iscomplexobj(self.nodes) else INTERVAL)
        self.logd = kernels.log_weights(self.nodes)

    def both(self, z):
        return kernels.lebesgue_eval(self.nodes, self.logd, np.atleast_1d(z))

    def lam(self, z):
        return self.both(z)[0]

    def lam2(self, z):
        return self.both(z)[1]

    def log_w(self, z):
        return kernels.logabs_w(self.nodes, np.atleast_1d(z))


def _scalar_or_array(z, arr):
    return arr if np.ndim(z) else float(arr[0])


def lebesgue_at(section, z):
    """``lambda_{Z_k}(z)``; equals 1 on the nodes."""
    return _scalar_or_array(z, SectionEvaluator(section).lam(z))


def lebesgue2_at(section, z):
    """``lambda_{Z_k,2}(z)``."""
    return _scalar_or_array(z, SectionEvaluator(section).lam2(z))


def _angle_of(domain: str, point) -> float:
    if domain == CIRCLE:
        return float(np.angle(point)) % (2.0 * math.pi)
    return float(math.acos(max(-1.0, min(1.0, float(point)))))


def lebesgue_constants(section, cfg: SearchConfig, extra_points=()) -> tuple[SearchResult, SearchResult]:
    """Suprema of ``lambda`` and ``lambda_2`` from one shared grid pass."""
    ev = SectionEvaluator(section)
    domain = ev.domain
    m = cfg.grid_size(ev.k)
    if m > cfg.max_grid:
        bad = SearchResult(math.nan, math.nan, math.nan, "budget", 0)
        return bad, bad
    theta = grid_angles(domain, m)
    lam, lam2 = ev.both(angles_to_points(domain, theta))
    res = refine_maxima(ev.lam, domain, cfg, theta, lam)
    res2 = refine_maxima(ev.lam2, domain, cfg, theta, lam2)
    if len(extra_points) and res.ok and res2.ok:
        # candidates evaluated at their exact coordinates, not re-derived from an angle
        pts = np.asarray(extra_points)
        e_lam, e_lam2 = ev.both(pts)
        res = _with_candidates(res, domain, pts, e_lam)
        res2 = _with_candidates(res2, domain, pts, e_lam2)
    return res, res2


def _with_candidates(res: SearchResult, domain: str, pts, vals) -> SearchResult:
    i = int(np.argmax(vals))
    if vals[i] <= res.value:
        return res
    pt = complex(pts[i]) if domain == CIRCLE else float(pts[i])
    return SearchResult(float(vals[i]), _angle_of(domain, pt), pt, res.status,
                        res.evaluations + len(vals))


def sup_lebesgue(section, cfg: SearchConfig | None = None) -> SearchResult:
    return lebesgue_constants(section, cfg or SearchConfig())[0]


def sup_lebesgue2(section, cfg: SearchConfig | None = None) -> SearchResult:
    return lebesgue_constants(section, cfg or SearchConfig())[1]


@dataclass
class LebesgueReport:
    """Per-``k`` record for a disc or interval section."""

    domain: str
    k: int
    lambda_at_next: float
    lambda2_at_next: float
    L: float
    L2: float
    argmax_angle: float
    argmax2_angle: float
    D: float
    status: str
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)


def _status(*results) -> str:
    for r in results:
        if not r.ok:
            return "inconclusive:" + r.status
    return "ok"


def disc_report(k: int, cfg: SearchConfig | None = None) -> LebesgueReport:
    cfg = cfg or SearchConfig()
    t0 = time.perf_counter()
    seq = leja_section(k + 1)
    sec = seq[:k]
    nxt = seq.nodes[k]
    res, res2 = lebesgue_constants(sec, cfg, extra_points=[nxt])
    ev = SectionEvaluator(sec)
    lam_n, lam2_n = (float(v[0]) for v in ev.both(nxt))
    return LebesgueReport(CIRCLE, k, lam_n, lam2_n, res.value, res2.value, res.angle,
                          res2.angle, 1.0 + lam_n, _status(res, res2),
                          time.perf_counter() - t0)


def interval_report(k: int, cfg: SearchConfig | None = None) -> LebesgueReport:
    cfg = cfg or SearchConfig()
    t0 = time.perf_counter()
    seq = project_from_disc(k + 1)
    sec = seq[:k]
    nxt = seq.nodes[k]
    res, res2 = lebesgue_constants(sec, cfg, extra_points=[nxt])
    ev = SectionEvaluator(sec)
    lam_n, lam2_n = (float(v[0]) for v in ev.both(nxt))
    dn = diff_norm_interval(k, cfg)
    return LebesgueReport(INTERVAL, k, lam_n, lam2_n, res.value, res2.value, res.angle,
                          res2.angle, dn.value, _status(res, res2, dn.search),
                          time.perf_counter() - t0)


def report(domain: str, k: int, cfg: SearchConfig | None = None) -> LebesgueReport:
    if domain == CIRCLE or domain == "disc":
        return disc_report(k, cfg)
    if domain == INTERVAL:
        return interval_report(k, cfg)
    raise ValueError(f"unknown domain {domain!r}")


# --- values at the next node ------------------------------------------------

@dataclass
class NextPointProfile:
    """``lambda_{Z_k}(z_k)``, ``lambda_{Z_k,2}(z_k)`` and ``log|w_{Z_k}(z_k)|`` for
    ``k = 1..kmax`` (index 0 unused)."""

    domain: str
    lam: np.ndarray
    lam2: np.ndarray
    logw: np.ndarray

    @property
    def kmax(self) -> int:
        return self.lam.size - 1


def next_point_profile(domain: str, kmax: int) -> NextPointProfile:
    if domain in (CIRCLE, "disc"):
        nodes = leja_section(kmax + 1).nodes
        domain = CIRCLE
    elif domain == INTERVAL:
        nodes = project_from_disc(kmax + 1).nodes
    else:
        raise ValueError(f"unknown domain {domain!r}")
    lam, lam2, logw = kernels.next_point_profile(nodes, kmax)
    return NextPointProfile(domain, lam, lam2, logw)


# --- roots of unity ---------------------------------------------------------

@lru_cache(maxsize=None)
def roots_of_unity_constant(p: int, cfg: SearchConfig | None = None) -> SearchResult:
    """Searched Lebesgue constant of the ``2**p``-th roots of unity."""
    return sup_lebesgue(leja_section(1 << p), cfg or SearchConfig())


def roots_of_unity_bound(p: int) -> float:
    """Closed-form bound: ``1``, ``sqrt 2`` and ``(2/pi)(p log 2 + 9/4)`` for ``p >= 2``."""
    if p == 0:
        return 1.0
    if p == 1:
        return math.sqrt(2.0)
    return 2.0 / math.pi * (p * LOG2 + 2.25)


# --- difference operators ---------------------------------------------------

def diff_norm_disc(k: int) -> float:
    """``D_k(E) = 1 + lambda_{E_k}(e_k)`` (the sup of ``|w|/|w(e_k)|`` is 1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    seq = leja_section(k + 1)
    return 1.0 + float(SectionEvaluator(seq[:k]).lam(seq.nodes[k])[0])


@dataclass
class DiffNorm:
    value: float
    beta: float
    sup_W: float
    search: SearchResult


def _log_w_fn(nodes):
    def fn(z):
        v = kernels.logabs_w(nodes, z)
        return np.maximum(v, _LOG_FLOOR)
    return fn


def sup_log_w(section, cfg: SearchConfig) -> SearchResult:
    """Maximum of ``log|w_{Z_k}|`` over the section's domain."""
    nodes = section.nodes if hasattr(section, "nodes") else np.asarray(section)
    domain = getattr(section, "domain", CIRCLE if np.iscomplexobj(nodes) else INTERVAL)
    return sup_search(_log_w_fn(nodes), domain, cfg, max(len(nodes), 1))


def sup_W(k: int, cfg: SearchConfig | None = None) -> float:
    """``sup_{[-1,1]} |W_{R_k}|`` with ``W_{R_k} = 2^k w_{R_k}``."""
    res = sup_log_w(project_from_disc(k), cfg or SearchConfig())
    return math.exp(k * LOG2 + res.value) if res.ok else math.nan


def diff_norm_interval(k: int, cfg: SearchConfig | None = None) -> DiffNorm:
    """``D_k(R) = 2 beta_k sup|W_{R_k}|`` with
    ``beta_k = (1 + lambda_{R_k}(r_k)) / (2 |W_{R_k}(r_k)|)``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    cfg = cfg or SearchConfig()
    seq = project_from_disc(k + 1)
    sec = seq[:k]
    r_k = seq.nodes[k]
    ev = SectionEvaluator(sec)
    lam_k = float(ev.lam(r_k)[0])
    log_W_rk = k * LOG2 + float(ev.log_w(r_k)[0])
    beta = (1.0 + lam_k) / (2.0 * math.exp(log_W_rk))
    res = sup_log_w(sec, cfg)
    if not res.ok:
        return DiffNorm(math.nan, beta, math.nan, res)
    log_sup_W = k * LOG2 + res.value
    # 2 * beta * sup|W| without forming the large factors separately
    value = (1.0 + lam_k) * math.exp(log_sup_W - log_W_rk)
    return DiffNorm(value, beta, math.exp(log_sup_W), res)


def diff_norm_generic(section, next_point, cfg: SearchConfig | None = None) -> tuple[float, SearchResult]:
    """``D_k = (1 + lambda_{Z_k}(z_k)) sup |w_{Z_k}(z) / w_{Z_k}(z_k)|`` for any section.

    The ratio is formed factor by factor, ``prod_j |z - z_j| / |z_k - z_j|``,
    and ``lambda`` comes from the Lagrange basis, so nothing is shared with
    :func:`diff_norm_interval` except the search.
    """
    cfg = cfg or SearchConfig()
    basis = LagrangeBasis(section)
    zk = np.atleast_1d(np.asarray(next_point, dtype=basis.nodes.dtype))
    lam_k = float(np.abs(basis.matrix(zk)).sum())
    denom = np.abs(zk[0] - basis.nodes)

    def ratio(z):
        return np.prod(np.abs(np.asarray(z)[:, None] - basis.nodes[None, :]) / denom[None, :], axis=1)

    domain = CIRCLE if basis.is_complex else INTERVAL
    res = sup_search(ratio, domain, cfg, basis.k)
    if not res.ok:
        return math.nan, res
    return (1.0 + lam_k) * res.value, res


def diff_norm_direct(section_next, cfg: SearchConfig | None = None) -> tuple[float, SearchResult]:
    """Norm of ``Delta_k = I_{Z_{k+1}} - I_{Z_k}`` straight from the definition:
    ``sup_z sum_j |L_j(z) - l_j(z)|`` with ``L`` the basis of ``Z_{k+1}``, ``l``
    that of ``Z_k`` and ``l_k = 0``.  Dense in ``k``; meant for small sections."""
    cfg = cfg or SearchConfig()
    nodes = section_next.nodes if hasattr(section_next, "nodes") else np.asarray(section_next)
    big, small = LagrangeBasis(nodes), LagrangeBasis(nodes[:-1])

    def row_sum(z):
        m_big, m_small = big.matrix(z), small.matrix(z)
        return np.abs(m_big[:, :-1] - m_small).sum(axis=1) + np.abs(m_big[:, -1])

    domain = CIRCLE if big.is_complex else INTERVAL
    res = sup_search(row_sum, domain, cfg, big.k)
    return (res.value if res.ok else math.nan), res


# --- gamma quantities -------------------------------------------------------

def gamma(m: int, l: int) -> float:
    """``4^{-m} sum_{j < 2^m + l} 4 / |w_F(conj e_j)|^2`` with ``F = (e_{2^m}, ..., e_{2^m+l-1})``."""
    if m < 1 or not 1 <= l <= (1 << (m - 1)):
        raise ValueError(f"need m >= 1 and 1 <= l <= 2^(m-1), got m={m}, l={l}")
    big_k = (1 << m) + l
    seq = leja_section(big_k)
    f_angles = set(seq.angles[1 << m:])
    conj = [a.conjugate() for a in seq.angles]
    if f_angles.intersection(conj):
        raise ArithmeticError("a conjugate node lies in F; gamma undefined")
    f_nodes = seq.nodes[1 << m:]
    logw = kernels.logabs_w(f_nodes, np.conj(seq.nodes))
    terms = np.exp(2.0 * LOG2 - 2.0 * logw - m * 2.0 * LOG2)
    return math.fsum(terms.tolist())


def gamma_bound(l: int) -> float:
    s = binary_stats(l)
    return 5.0 / 2.0 ** (s.sigma1 + s.p + 1)


def interval_indices(k: int) -> tuple[int, int, int]:
    """``(n, l, K)`` with ``2^n <= k - 1 < 2^{n+1}``, ``l = k - 1 - 2^n`` and
    ``K = 2^{n+1} + l``, the length of the smallest disc section projecting onto ``R_k``."""
    if k < 2:
        raise ValueError("need k >= 2")
    n = (k - 1).bit_length() - 1
    l = k - 1 - (1 << n)
    big_k = (1 << (n + 1)) + l
    assert big_k == projection_index(k)
    return n, l, big_k


def gamma_K(k: int, z) -> np.ndarray:
    """``|w_F(conj z)| sum_j |L_j(z)| / |w_F(conj e_j)|`` for the disc section
    ``E_K`` behind ``R_k`` and ``F = (e_{2^{n+1}}, ..., e_{K-1})``.

    Bounds the interval Lebesgue function: ``lambda_{R_k}(Re z) <= gamma_K(z) +
    gamma_K(conj z)``.
    """
    n, l, big_k = interval_indices(k)
    seq = leja_section(big_k)
    f_nodes = seq.nodes[1 << (n + 1):]
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    basis = np.abs(LagrangeBasis(seq).matrix(z))
    log_wf_z = kernels.logabs_w(f_nodes, np.conj(z)) if l else np.zeros(z.size)
    log_wf_e = kernels.logabs_w(f_nodes, np.conj(seq.nodes)) if l else np.zeros(big_k)
    return np.exp(log_wf_z) * (basis * np.exp(-log_wf_e)[None, :]).sum(axis=1)
