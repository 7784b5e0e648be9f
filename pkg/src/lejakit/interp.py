"""Lagrange interpolation and Newton difference operators on a node section.

The basis is evaluated in the first (non-barycentric) form

    l_j(z) = w(z) / ((z - z_j) * w'(z_j)),

with ``w'(z_j) = prod_{i != j} (z_j - z_i)`` stored as log-magnitude plus
phase, so products of a few thousand factors neither overflow nor lose
digits.  The same code path serves the circle and the interval.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels


def _nodes_of(section):
    nodes = section.nodes if hasattr(section, "nodes") else section
    return np.asarray(nodes)


class LagrangeBasis:
    """Lagrange basis of a node section (complex for the disc, real for [-1, 1])."""

    def __init__(self, section):
        nodes = _nodes_of(section)
        if nodes.ndim != 1 or nodes.size == 0:
            raise ValueError("need a non-empty 1-d node array")
        self.is_complex = bool(np.iscomplexobj(nodes))
        self.nodes = nodes.astype(complex if self.is_complex else float)
        self.k = self.nodes.size
        self.log_weights = kernels.log_weights(self.nodes)
        if np.any(~np.isfinite(self.log_weights)):
            raise ValueError("nodes are not pairwise distinct")
        diff = self.nodes[:, None] - self.nodes[None, :]
        np.fill_diagonal(diff, 1.0)
        if self.is_complex:
            self.weight_phase = np.angle(diff).sum(axis=1)
        else:
            self.weight_sign = np.where(np.count_nonzero(diff < 0, axis=1) % 2, -1.0, 1.0)

    def __len__(self) -> int:
        return self.k

    def matrix(self, z) -> np.ndarray:
        """``l_j(z_p)`` for every point ``p`` (rows) and node ``j`` (columns)."""
        z = np.atleast_1d(np.asarray(z))
        if self.is_complex:
            z = z.astype(complex)
        elif np.iscomplexobj(z):
            raise TypeError("real section evaluated at complex points")
        diff = z[:, None] - self.nodes[None, :]
        absd = np.abs(diff)
        hits = absd == 0.0
        with np.errstate(divide="ignore", invalid="ignore"):
            logd = np.log(np.where(hits, 1.0, absd))
            logw = logd.sum(axis=1, keepdims=True)
            mag = np.exp(logw - logd - self.log_weights[None, :])
            if self.is_complex:
                ang = np.angle(np.where(hits, 1.0, diff))
                phase = ang.sum(axis=1, keepdims=True) - ang - self.weight_phase[None, :]
                out = mag * np.exp(1j * phase)
            else:
                neg = diff < 0
                nneg = np.count_nonzero(neg, axis=1, keepdims=True) - neg
                sign = np.where(nneg % 2, -1.0, 1.0) * self.weight_sign[None, :]
                out = mag * sign
        rows = hits.any(axis=1)
        if rows.any():
            out[rows] = hits[rows].astype(out.dtype)
        return out

    def eval(self, j: int, z):
        """``l_j(z)``; exactly the Kronecker delta on the nodes."""
        if not 0 <= j < self.k:
            raise IndexError(j)
        col = self.matrix(z)[:, j]
        return col if np.ndim(z) else col[0]


def basis_eval(basis: LagrangeBasis, j: int, z):
    return basis.eval(j, z)


def interpolate(basis: LagrangeBasis, fvals, z):
    """``sum_j f(z_j) l_j(z)``."""
    fvals = np.asarray(fvals)
    if fvals.shape != (basis.k,):
        raise ValueError(f"expected {basis.k} function values, got shape {fvals.shape}")
    out = basis.matrix(z) @ fvals
    return out if np.ndim(z) else out[0]


@dataclass
class NewtonDelta:
    """``Delta_l f(z) = (f(z_l) - I_{Z_l} f(z_l)) * prod_{j<l} (z - z_j)/(z_l - z_j)``."""

    level: int
    coefficient: complex | float
    nodes: np.ndarray  # z_0 .. z_l

    def __call__(self, z):
        z = np.atleast_1d(np.asarray(z))
        if self.level == 0:
            out = np.full(z.shape, self.coefficient, dtype=np.result_type(z, self.coefficient))
        else:
            prev, zl = self.nodes[: self.level], self.nodes[self.level]
            ratio = (z[:, None] - prev[None, :]) / (zl - prev)[None, :]
            out = self.coefficient * np.prod(ratio, axis=1)
        return out


def newton_delta(section, l: int, fvals) -> NewtonDelta:
    """Build ``Delta_l`` from ``f`` sampled on the first ``l + 1`` nodes."""
    nodes = _nodes_of(section)
    fvals = np.asarray(fvals)
    if l < 0 or nodes.size < l + 1:
        raise ValueError("need l >= 0 and at least l + 1 nodes")
    if fvals.size < l + 1:
        raise ValueError("need f on the first l + 1 nodes")
    if l == 0:
        return NewtonDelta(0, fvals[0], nodes[:1].copy())
    basis = LagrangeBasis(nodes[:l])
    coef = fvals[l] - interpolate(basis, fvals[:l], nodes[l])
    return NewtonDelta(l, coef, nodes[: l + 1].copy())


def delta_apply(section, l: int, fvals, z):
    """Evaluate ``Delta_l f`` at ``z``."""
    out = newton_delta(section, l, fvals)(z)
    return out if np.ndim(z) else out[0]


def newton_interpolate(section, fvals, z):
    """``I_{Z_k} f(z) = sum_{l<k} Delta_l f(z)`` with ``k = len(fvals)``."""
    k = len(fvals)
    z_arr = np.atleast_1d(np.asarray(z))
    total = sum(newton_delta(section, l, fvals)(z_arr) for l in range(k))
    return total if np.ndim(z) else total[0]


def operator_norm_on_grid(matrix_rows) -> float:
    """Largest absolute row sum, i.e. sup of a Lebesgue-type function on the sample."""
    return float(np.max(np.abs(matrix_rows).sum(axis=1)))


__all__ = [
    "LagrangeBasis", "NewtonDelta", "basis_eval", "delta_apply", "interpolate",
    "newton_delta", "newton_interpolate", "operator_norm_on_grid",
]
