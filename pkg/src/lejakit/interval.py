"""R-Leja sequences on [-1, 1].

The canonical R-Leja sequence is the projection ``x = Re(z)`` of the
canonical disc sequence, skipping points whose real part was already
taken (a point is skipped exactly when it is the conjugate of an earlier
one).  Nodes keep their exact angle; ``cos`` is even, so angles are
compared after folding ``theta ~ 2*pi - theta`` into ``[0, pi]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .binary import PI, ZERO, DyadicAngle, bit_reversed_angle, cos_sin
from .disc import DiscSection, leja_section
from .search import INTERVAL

HALF_PI = DyadicAngle(1, 1)


@dataclass(frozen=True)
class IntervalSection:
    """Ordered nodes ``r_j = cos(theta_j)`` on [-1, 1] with exact angles."""

    angles: tuple[DyadicAngle, ...]
    consumed: int | None = None  # disc points scanned to build it, if projected

    domain = INTERVAL

    def __len__(self) -> int:
        return len(self.angles)

    @property
    def k(self) -> int:
        return len(self.angles)

    @cached_property
    def nodes(self) -> np.ndarray:
        return np.array([cos_sin(a)[0] for a in self.angles], dtype=float)

    @cached_property
    def folded(self) -> tuple[DyadicAngle, ...]:
        return tuple(a.folded() for a in self.angles)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return IntervalSection(self.angles[item])
        return self.angles[item]

    def same_nodes(self, other: "IntervalSection") -> bool:
        """Exact entrywise equality of the node values."""
        return self.folded == other.folded

    def check_invariants(self) -> None:
        f = self.folded
        if len(set(f)) != len(f):
            raise AssertionError("repeated node")
        head = (ZERO, PI, HALF_PI)
        if f[:3] != head[: len(f)]:
            raise AssertionError("sequence must start with 1, -1, 0")
        for j in range(2, (len(f) + 1) // 2):
            # r_{2j-1} = -r_{2j}  <=>  folded angles are supplementary
            if f[2 * j] != (PI + f[2 * j - 1].conjugate()).folded():
                raise AssertionError(f"r_{2 * j - 1} != -r_{2 * j}")


def projection_index(k: int) -> int:
    """Index ``J(k)`` of the disc point projected to give ``r_k``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k <= 1:
        return k
    n = (k - 1).bit_length() - 1  # 2^n + 1 <= k < 2^{n+1} + 1
    return (1 << n) + k - 1


def project(disc: DiscSection, k: int) -> IntervalSection:
    """First ``k`` projected nodes of ``disc`` under the skip rule."""
    seen: set[DyadicAngle] = set()
    out: list[DyadicAngle] = []
    used = 0
    for a in disc.angles:
        if len(out) == k:
            break
        used += 1
        f = a.folded()
        if f in seen:
            continue
        seen.add(f)
        out.append(a)
    if len(out) < k:
        raise ValueError("disc section too short for the requested projection")
    return IntervalSection(tuple(out), consumed=used)


def project_from_disc(k: int) -> IntervalSection:
    """``R_k`` from the canonical disc sequence by the skip rule."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return project(leja_section(projection_index(k - 1) + 1), k)


def xi_angles(k: int) -> tuple[DyadicAngle, ...]:
    """First ``k`` entries of ``(1, -1)`` followed by the blocks ``E_{2^j, 2^j + 2^{j-1}}``."""
    out = [ZERO, PI]
    j = 1
    while len(out) < k:
        lo = 1 << j
        out.extend(bit_reversed_angle(i) for i in range(lo, lo + (lo >> 1)))
        j += 1
    return tuple(out[:k])


def angle_recursion_section(k: int) -> IntervalSection:
    """Angles ``phi_0 = 0, phi_1 = pi, phi_2 = pi/2``, ``phi_{2j-1} = phi_j / 2``
    and ``phi_{2j} = phi_{2j-1} + pi`` for ``j >= 2``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    phi = [ZERO, PI, HALF_PI][:k]
    j = 2
    while len(phi) < k:
        odd = phi[j].halve()
        phi.append(odd)
        if len(phi) < k:
            phi.append(odd + PI)
        j += 1
    return IntervalSection(tuple(phi))


def sqrt_recursion_section(k: int) -> np.ndarray:
    """Floating-point nodes from ``r_{2j-1} = sqrt((r_j + 1) / 2)``, ``r_{2j} = -r_{2j-1}``.

    This is the projection of :func:`~lejakit.disc.conjugate_doubling_section`,
    not of the canonical disc sequence; the two agree as sets on every
    Gauss-Lobatto section but differ entrywise from index 7 on.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    r = [1.0, -1.0, 0.0][:k]
    j = 2
    while len(r) < k:
        v = math.sqrt((r[j] + 1.0) / 2.0)
        r.append(v)
        if len(r) < k:
            r.append(-v)
        j += 1
    return np.array(r)


def square_map_check(k: int, section: IntervalSection | None = None) -> bool:
    """Exact check of ``2 r_{2j}^2 - 1 = r_j`` (and ``2 r_{2j-1}^2 - 1 = r_j`` for
    ``j >= 2``) for every index inside the section, via angle doubling."""
    sec = section if section is not None else project_from_disc(k)
    a = sec.angles
    for j in range(len(a)):
        if 2 * j >= len(a):
            break
        if a[2 * j].double().folded() != a[j].folded():
            return False
        if j >= 2 and a[2 * j - 1].double().folded() != a[j].folded():
            return False
    return True


def gauss_lobatto_angles(n: int) -> set[DyadicAngle]:
    """Folded angles of ``cos(j pi / 2^n)``, ``j = 0..2^n``."""
    return {DyadicAngle.make(j, n) for j in range((1 << n) + 1)}
