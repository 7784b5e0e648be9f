"""Global maximisation of functions on the unit circle or on [-1, 1].

A uniform grid in angle is scanned first (for the interval, the abscissas
are ``cos`` of the angles), then golden-section search refines the best
local maxima of the grid in lockstep.  The reported maximum is a value the
function actually attains, hence a lower bound on the true supremum.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

CIRCLE = "circle"
INTERVAL = "interval"

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SearchConfig:
    """Budget of a sup-search.

    The grid has ``max(min_grid, grid_mult * k)`` points rounded up to a
    power of two, so grid angles ``(i + 1/2) * step`` never coincide with a
    dyadic node angle.  ``refine_brackets`` local maxima are refined to
    bracket width ``bracket_tol``.  A grid larger than ``max_grid`` exhausts
    the budget and the search is reported as inconclusive.
    """

    grid_mult: int = 64
    min_grid: int = 8192
    refine_brackets: int = 16
    bracket_tol: float = 1e-12
    tol_rel: float = 1e-6
    max_grid: int = 1 << 22

    def __post_init__(self):
        if self.grid_mult < 4:
            raise ValueError("grid_mult must be >= 4 (grid needs >= 4k points)")
        if self.refine_brackets < 1:
            raise ValueError("refine_brackets must be >= 1")
        if not self.bracket_tol > 0:
            raise ValueError("bracket_tol must be positive")

    def grid_size(self, k: int) -> int:
        m = max(self.min_grid, self.grid_mult * max(k, 1), 4 * max(k, 1))
        return 1 << (m - 1).bit_length()

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SearchResult:
    value: float
    angle: float  # parameter of the maximiser: circle angle or arccos(x)
    point: complex | float
    status: str  # "ok", "budget" or "nonfinite"
    evaluations: int

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def grid_angles(domain: str, m: int) -> np.ndarray:
    span = 2.0 * math.pi if domain == CIRCLE else math.pi
    return (np.arange(m) + 0.5) * (span / m)


def angles_to_points(domain: str, theta):
    theta = np.asarray(theta, dtype=float)
    if domain == CIRCLE:
        return np.cos(theta) + 1j * np.sin(theta)
    if domain == INTERVAL:
        return np.cos(theta)
    raise ValueError(f"unknown domain {domain!r}")


def sup_search(fn, domain: str, cfg: SearchConfig, k: int = 1, extra=None) -> SearchResult:
    """Maximise ``fn`` (vectorised over points) on ``domain``.

    ``k`` sizes the grid; ``extra`` optionally lists additional angles whose
    values take part in the final maximum (never in the budget check).
    """
    m = cfg.grid_size(k)
    if m > cfg.max_grid:
        return SearchResult(math.nan, math.nan, math.nan, "budget", 0)
    theta = grid_angles(domain, m)
    vals = np.asarray(fn(angles_to_points(domain, theta)), dtype=float)
    return refine_maxima(fn, domain, cfg, theta, vals, extra=extra)


def refine_maxima(fn, domain, cfg, theta, vals, extra=None) -> SearchResult:
    """Golden-section refinement around the best local maxima of a grid scan."""
    m = theta.size
    evals = m
    if not np.all(np.isfinite(vals)):
        return SearchResult(math.nan, math.nan, math.nan, "nonfinite", evals)
    step = theta[1] - theta[0] if m > 1 else math.pi
    if domain == CIRCLE:
        left, right = np.roll(vals, 1), np.roll(vals, -1)
    else:
        left = np.concatenate(([-np.inf], vals[:-1]))
        right = np.concatenate((vals[1:], [-np.inf]))
    peaks = np.flatnonzero((vals >= left) & (vals >= right))
    if peaks.size == 0:
        peaks = np.array([int(np.argmax(vals))])
    # stable ordering: larger value first, then smaller index
    order = np.lexsort((peaks, -vals[peaks]))
    peaks = peaks[order[: cfg.refine_brackets]]

    a = theta[peaks] - step
    b = theta[peaks] + step
    if domain == INTERVAL:
        a = np.maximum(a, 0.0)
        b = np.minimum(b, math.pi)
    best_t = theta[peaks].copy()
    best_v = vals[peaks].copy()

    def ev(t):
        v = np.asarray(fn(angles_to_points(domain, t)), dtype=float)
        return v

    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = ev(c), ev(d)
    evals += 2 * c.size
    for t, v in ((c, fc), (d, fd)):
        upd = v > best_v
        best_t[upd], best_v[upd] = t[upd], v[upd]
    while np.max(b - a) > cfg.bracket_tol:
        keep_left = fc >= fd
        # maximising: the max lies in [a, d] when f(c) >= f(d)
        b = np.where(keep_left, d, b)
        a = np.where(keep_left, a, c)
        new_c = b - _INV_PHI * (b - a)
        new_d = a + _INV_PHI * (b - a)
        probe = np.where(keep_left, new_c, new_d)
        fp = ev(probe)
        evals += probe.size
        if not np.all(np.isfinite(fp)):
            return SearchResult(math.nan, math.nan, math.nan, "nonfinite", evals)
        d_next = np.where(keep_left, c, new_d)
        fd_next = np.where(keep_left, fc, fp)
        c = np.where(keep_left, new_c, d)
        fc = np.where(keep_left, fp, fd)
        d, fd = d_next, fd_next
        upd = fp > best_v
        best_t[upd], best_v[upd] = probe[upd], fp[upd]

    cand_t = np.concatenate((theta, best_t))
    cand_v = np.concatenate((vals, best_v))
    if extra is not None and len(extra):
        et = np.asarray(extra, dtype=float)
        ev_extra = ev(et)
        evals += et.size
        if not np.all(np.isfinite(ev_extra)):
            return SearchResult(math.nan, math.nan, math.nan, "nonfinite", evals)
        cand_t = np.concatenate((cand_t, et))
        cand_v = np.concatenate((cand_v, ev_extra))
    top = cand_v.max()
    i = int(np.flatnonzero(cand_v == top)[np.argmin(cand_t[cand_v == top])])
    t = float(cand_t[i])
    pt = angles_to_points(domain, np.array([t]))[0]
    pt = complex(pt) if domain == CIRCLE else float(pt)
    return SearchResult(float(top), t, pt, "ok", evals)
