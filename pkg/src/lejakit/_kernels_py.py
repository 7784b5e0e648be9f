"""Pure numpy implementation of the hot kernels.

Same signatures and semantics as the compiled ``_kernels`` module; used
when the extension is not built or ``LEJAKIT_PURE=1`` is set.
"""
import math

import numpy as np

BACKEND = "python"

_CHUNK_ELEMS = 1 << 21
_NODE_HIT = 1e-300


def _split(points):
    points = np.asarray(points)
    if np.iscomplexobj(points):
        return points.real.astype(float), points.imag.astype(float)
    return points.astype(float), None


def _dist2(nre, nim, pre, pim):
    dx = pre[:, None] - nre[None, :]
    d2 = dx * dx
    if nim is not None or pim is not None:
        dy = (0.0 if pim is None else pim[:, None]) - (0.0 if nim is None else nim[None, :])
        d2 = d2 + dy * dy
    return d2


def log_weights(nodes, nthreads=1):
    """``log |prod_{i != j} (z_j - z_i)|`` for every node ``j``."""
    nre, nim = _split(nodes)
    k = nre.size
    out = np.empty(k)
    rows = max(1, _CHUNK_ELEMS // max(k, 1))
    for a in range(0, k, rows):
        b = min(k, a + rows)
        d2 = _dist2(nre, nim, nre[a:b], None if nim is None else nim[a:b])
        d2[np.arange(b - a), np.arange(a, b)] = 1.0
        with np.errstate(divide="ignore"):  # repeated nodes give -inf, as in the compiled kernel
            out[a:b] = 0.5 * np.log(d2).sum(axis=1)
    return out


def lebesgue_eval(nodes, logd, points, nthreads=1):
    """Lebesgue and quadratic Lebesgue functions at ``points``.

    ``logd`` are the log-magnitudes of the derivative weights from
    :func:`log_weights`.  Exact node hits evaluate to 1.
    """
    nre, nim = _split(nodes)
    pre, pim = _split(points)
    logd = np.asarray(logd, dtype=float)
    shift = float(np.max(-logd))
    cw = np.exp(-logd - shift)
    npts = pre.size
    lam = np.empty(npts)
    lam2 = np.empty(npts)
    rows = max(1, _CHUNK_ELEMS // max(nre.size, 1))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for a in range(0, npts, rows):
            b = min(npts, a + rows)
            d2 = _dist2(nre, nim, pre[a:b], None if pim is None else pim[a:b])
            hit = (d2 < _NODE_HIT).any(axis=1)
            d = np.sqrt(d2)
            logw = np.log(d).sum(axis=1) + shift
            t = cw[None, :] / d
            scale = np.exp(logw)
            lam[a:b] = scale * t.sum(axis=1)
            lam2[a:b] = scale * np.sqrt((t * t).sum(axis=1))
            lam[a:b][hit] = 1.0
            lam2[a:b][hit] = 1.0
    return lam, lam2


def logabs_w(nodes, points, nthreads=1):
    """``log |prod_j (z - z_j)|`` at each point (``-inf`` on nodes)."""
    nre, nim = _split(nodes)
    pre, pim = _split(points)
    npts = pre.size
    out = np.empty(npts)
    if nre.size == 0:
        out[:] = 0.0
        return out
    rows = max(1, _CHUNK_ELEMS // nre.size)
    with np.errstate(divide="ignore"):
        for a in range(0, npts, rows):
            b = min(npts, a + rows)
            d2 = _dist2(nre, nim, pre[a:b], None if pim is None else pim[a:b])
            out[a:b] = 0.5 * np.log(d2).sum(axis=1)
    return out


def next_point_profile(nodes, kmax):
    """Values at the next node along a nested sequence.

    Returns arrays ``lam, lam2, logw`` of length ``kmax + 1`` where entry
    ``k >= 1`` holds ``lambda_{Z_k}(z_k)``, ``lambda_{Z_k,2}(z_k)`` and
    ``log|w_{Z_k}(z_k)|``.  Derivative weights are updated incrementally
    with compensated sums, so the whole profile costs O(kmax^2).
    """
    nre, nim = _split(nodes)
    if nre.size < kmax + 1:
        raise ValueError("need kmax + 1 nodes")
    lam = np.full(kmax + 1, np.nan)
    lam2 = np.full(kmax + 1, np.nan)
    logw_out = np.full(kmax + 1, np.nan)
    logd = np.zeros(kmax + 1)
    comp = np.zeros(kmax + 1)
    for k in range(1, kmax + 1):
        dx = nre[k] - nre[:k]
        d2 = dx * dx
        if nim is not None:
            dy = nim[k] - nim[:k]
            d2 = d2 + dy * dy
        ld = 0.5 * np.log(d2)
        logw = math.fsum(ld.tolist())
        t = np.exp(logw - ld - logd[:k])
        lam[k] = t.sum()
        lam2[k] = np.sqrt((t * t).sum())
        logw_out[k] = logw
        # vectorised Kahan update of the weights for Z_{k+1}
        y = ld - comp[:k]
        s = logd[:k] + y
        comp[:k] = (s - logd[:k]) - y
        logd[:k] = s
        logd[k] = logw
    return lam, lam2, logw_out
