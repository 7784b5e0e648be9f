"""Leja sections on the unit disc.

The canonical sequence starts at ``e_0 = 1`` and enumerates the dyadic
points of the circle in bit-reversed order: ``1, -1, i, -i, e^{i pi/4},
...``.  Any other Leja sequence started on the circle is a rotation of
this one as a set, and every quantity computed here is rotation
invariant, so only the canonical sequence is generated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .binary import DyadicAngle, bit_reversed_angle, cos_sin
from .search import CIRCLE, SearchConfig, sup_search

MAX_K = 1 << 20


@dataclass(frozen=True)
class DiscSection:
    """Ordered node sequence on the unit circle, stored as exact angles."""

    angles: tuple[DyadicAngle, ...]

    domain = CIRCLE

    def __len__(self) -> int:
        return len(self.angles)

    @property
    def k(self) -> int:
        return len(self.angles)

    @cached_property
    def nodes(self) -> np.ndarray:
        cs = [cos_sin(a) for a in self.angles]
        return np.array([complex(c, s) for c, s in cs], dtype=complex)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return DiscSection(self.angles[item])
        return self.angles[item]

    def check_invariants(self) -> None:
        """Raise ``AssertionError`` if the section breaks a structural rule."""
        if len(set(self.angles)) != len(self.angles):
            raise AssertionError("repeated node")
        for j in range(0, len(self.angles) - 1, 2):
            if self.angles[j + 1] != self.angles[j].negate():
                raise AssertionError(f"e_{j + 1} != -e_{j}")
        n = 0
        while (1 << n) <= len(self.angles):
            if set(self.angles[: 1 << n]) != roots_of_unity(n):
                raise AssertionError(f"first 2^{n} nodes are not the 2^{n}-th roots of unity")
            n += 1


def roots_of_unity(n: int) -> set[DyadicAngle]:
    """Angles of the ``2**n``-th roots of unity."""
    return {DyadicAngle.make(2 * j, n) for j in range(1 << n)}


def roots_of_minus_one(n: int) -> set[DyadicAngle]:
    """Angles of the ``2**n``-th roots of ``-1``."""
    return {DyadicAngle.make(2 * j + 1, n) for j in range(1 << n)}


def _check_k(k: int) -> None:
    if not 1 <= k <= MAX_K:
        raise ValueError(f"section length must be in [1, {MAX_K}], got {k}")


def leja_section(k: int) -> DiscSection:
    """The first ``k`` points of the canonical Leja sequence."""
    _check_k(k)
    return DiscSection(tuple(bit_reversed_angle(j) for j in range(k)))


def doubling_extend(section: DiscSection) -> DiscSection:
    """``E_{2N} = E_N followed by e^{i pi / N} E_N`` for ``N`` a power of two."""
    n_len = len(section)
    if n_len == 0 or n_len & (n_len - 1):
        raise ValueError(f"length must be a power of two, got {n_len}")
    rot = DyadicAngle.make(1, n_len.bit_length() - 1)
    return DiscSection(section.angles + tuple(a + rot for a in section.angles))


def conjugate_doubling_section(k: int) -> DiscSection:
    """Leja sequence built by ``F_{2N} = F_N followed by e^{i pi / N} conj(F_N)``.

    Its projection onto [-1, 1] is the R-Leja sequence produced by the
    square-root recursion.
    """
    _check_k(k)
    angles = [DyadicAngle(0, 0)]
    while len(angles) < k:
        rot = DyadicAngle.make(1, len(angles).bit_length() - 1)
        angles += [a.conjugate() + rot for a in angles]
    return DiscSection(tuple(angles[:k]))


def product_magnitude(section, z: complex) -> float:
    """``|w_S(z)| = prod_s |z - s|``, accumulated as an exactly rounded log-sum."""
    nodes = section.nodes if hasattr(section, "nodes") else np.asarray(section)
    if len(nodes) == 0:
        raise ValueError("empty section")
    d = np.abs(complex(z) - nodes.astype(complex))
    if np.any(d == 0.0):
        return 0.0
    return math.exp(math.fsum(np.log(d).tolist()))


@dataclass
class GreedyReport:
    k: int
    attained: float
    grid_max: float
    argmax_angle: float
    rel_gap: float
    status: str  # "pass", "fail" or "inconclusive"
    tol: float = 1e-9
    search_status: str = "ok"

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def verify_greedy(k: int, cfg: SearchConfig | None = None, points=None,
                  tol: float = 1e-9) -> GreedyReport:
    """Check that node ``k`` maximises ``|w_{Z_k}|`` over the circle.

    ``points`` (complex, length > k) defaults to the canonical sequence.
    Uniqueness of the maximiser is not required.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    cfg = cfg or SearchConfig(min_grid=1 << 16)
    if points is None:
        points = leja_section(k + 1).nodes
    points = np.asarray(points, dtype=complex)
    if points.size < k + 1:
        raise ValueError("need k + 1 points")
    prev = points[:k]
    attained = product_magnitude(prev, points[k])

    def fn(z):
        return np.exp(kernels.logabs_w(prev, z))

    res = sup_search(fn, CIRCLE, cfg, k)
    if not res.ok:
        return GreedyReport(k, attained, math.nan, math.nan, math.nan,
                            "inconclusive", tol, res.status)
    rel_gap = (res.value - attained) / res.value
    status = "pass" if attained >= res.value * (1.0 - tol) else "fail"
    return GreedyReport(k, attained, res.value, res.angle, rel_gap, status, tol)


@dataclass
class StructuralReport:
    nmax: int
    roots_of_unity: dict[int, bool] = field(default_factory=dict)
    dyadic_blocks: dict[int, bool] = field(default_factory=dict)
    squares_enumerate: bool = False
    leading_root_of_minus_one: dict[int, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (all(self.roots_of_unity.values()) and all(self.dyadic_blocks.values())
                and self.squares_enumerate and all(self.leading_root_of_minus_one.values()))


def structural_checks(nmax: int) -> StructuralReport:
    """Exact set-level checks on the canonical sequence up to ``2**nmax`` points.

    * ``E_{2^n}`` is the set of ``2^n``-th roots of unity;
    * the block ``(e_{2^n}, ..., e_{2^{n+1}-1})`` is ``e_{2^n} E_{2^n}``, a rotated
      ``2^n``-Leja section (same set structure at every dyadic level);
    * ``(e_{2j})^2 = e_j``, so squaring the even entries reproduces the sequence;
    * ``e_{2^n}`` is a ``2^n``-th root of ``-1``.
    """
    if not 0 <= nmax <= 20:
        raise ValueError("nmax must be in [0, 20]")
    rep = StructuralReport(nmax)
    full = leja_section(1 << nmax).angles
    for n in range(nmax + 1):
        rep.roots_of_unity[n] = set(full[: 1 << n]) == roots_of_unity(n)
    for n in range(nmax):
        lo, hi = 1 << n, 1 << (n + 1)
        head = full[lo]
        block = full[lo:hi]
        rotated = tuple(head + a for a in full[:lo])
        rep.dyadic_blocks[n] = block == rotated
        rep.leading_root_of_minus_one[n] = head in roots_of_minus_one(n)
    half = len(full) // 2
    rep.squares_enumerate = all(full[2 * j].double() == full[j] for j in range(half))
    return rep

