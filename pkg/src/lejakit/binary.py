"""Binary expansions of integers and exact dyadic angles.

Every node used in this package sits at an angle ``num * pi / 2**log2den``.
Keeping those angles as integers makes set-level statements (roots of
unity, Gauss-Lobatto abscissas, the squaring maps) exact integer checks;
floating coordinates are only ever derived from them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

MAX_LOG2DEN = 62


@dataclass(frozen=True)
class BinaryStats:
    """Binary digit statistics of a positive integer ``k``.

    ``n`` is the index of the leading bit (``2**n <= k < 2**(n+1)``),
    ``sigma1``/``sigma0`` count ones and zeros among the ``n + 1`` digits
    and ``p`` is the 2-adic valuation of ``k``.
    """

    k: int
    n: int
    sigma1: int
    sigma0: int
    p: int


def binary_stats(k: int) -> BinaryStats:
    if k < 1:
        raise ValueError(f"binary statistics need k >= 1, got {k}")
    n = k.bit_length() - 1
    s1 = bin(k).count("1")
    p = (k & -k).bit_length() - 1
    return BinaryStats(k=k, n=n, sigma1=s1, sigma0=n + 1 - s1, p=p)


def sigma1(k: int) -> int:
    return binary_stats(k).sigma1


def sigma0(k: int) -> int:
    return binary_stats(k).sigma0


def two_adic(k: int) -> int:
    """Largest ``p`` with ``2**p`` dividing ``k``."""
    return binary_stats(k).p


def leading_bit(k: int) -> int:
    return binary_stats(k).n


@dataclass(frozen=True)
class DyadicAngle:
    """The angle ``num * pi / 2**log2den`` in canonical form.

    Canonical means ``num == 0`` with ``log2den == 0``, or ``num`` odd with
    ``0 < num < 2**(log2den + 1)``, so the angle lies in ``[0, 2*pi)`` and
    equal angles compare equal as integer pairs.  Build instances through
    :meth:`make` unless the pair is already canonical.
    """

    num: int
    log2den: int

    def __post_init__(self):
        if self.log2den < 0 or self.log2den > MAX_LOG2DEN:
            raise OverflowError(f"log2den={self.log2den} outside [0, {MAX_LOG2DEN}]")
        if self.num == 0:
            if self.log2den != 0:
                raise ValueError("zero angle must have log2den == 0")
        elif self.num % 2 == 0 or not 0 < self.num < (2 << self.log2den):
            raise ValueError(f"non-canonical angle {self.num}/2^{self.log2den}")

    @classmethod
    def make(cls, num: int, log2den: int) -> "DyadicAngle":
        """Canonicalize ``num * pi / 2**log2den`` (any integer ``num``)."""
        if log2den < 0:
            num <<= -log2den
            log2den = 0
        num %= 2 << log2den
        if num == 0:
            return cls(0, 0)
        tz = (num & -num).bit_length() - 1
        shift = min(tz, log2den)
        num >>= shift
        log2den -= shift
        if log2den > MAX_LOG2DEN:
            raise OverflowError(f"angle needs {log2den} fractional bits (cap {MAX_LOG2DEN})")
        return cls(num, log2den)

    @property
    def value(self) -> float:
        """The angle in radians."""
        return math.pi * self.num / (1 << self.log2den)

    def as_fraction_of_pi(self) -> Fraction:
        return Fraction(self.num, 1 << self.log2den)

    def double(self) -> "DyadicAngle":
        return angle_double(self)

    def halve(self) -> "DyadicAngle":
        return angle_halve(self)

    def negate(self) -> "DyadicAngle":
        return angle_negate(self)

    def conjugate(self) -> "DyadicAngle":
        return angle_conjugate(self)

    def folded(self) -> "DyadicAngle":
        """Representative in ``[0, pi]`` of the class ``{theta, 2*pi - theta}``."""
        if self.num > (1 << self.log2den):
            return angle_conjugate(self)
        return self

    def __add__(self, other: "DyadicAngle") -> "DyadicAngle":
        d = max(self.log2den, other.log2den)
        return DyadicAngle.make(
            (self.num << (d - self.log2den)) + (other.num << (d - other.log2den)), d
        )

    def cos_sin(self) -> tuple[float, float]:
        return cos_sin(self)

    def point(self) -> complex:
        c, s = cos_sin(self)
        return complex(c, s)

    def __repr__(self) -> str:
        return f"DyadicAngle({self.num}pi/2^{self.log2den})"


ZERO = DyadicAngle(0, 0)
PI = DyadicAngle(1, 0)


def angle_double(theta: DyadicAngle) -> DyadicAngle:
    return DyadicAngle.make(theta.num, theta.log2den - 1)


def angle_halve(theta: DyadicAngle) -> DyadicAngle:
    """The square root branch ``theta / 2`` in ``[0, pi)``."""
    return DyadicAngle.make(theta.num, theta.log2den + 1)


def angle_negate(theta: DyadicAngle) -> DyadicAngle:
    """Angle of ``-e^{i theta}``."""
    return theta + PI


def angle_conjugate(theta: DyadicAngle) -> DyadicAngle:
    return DyadicAngle.make(-theta.num, theta.log2den)


def bit_reversed_angle(k: int) -> DyadicAngle:
    """Angle ``pi * sum_j a_j 2**-j`` for ``k = sum_j a_j 2**j``.

    This is the bit-reversal (Van der Corput) enumeration of the dyadic
    points on the circle; ``k = 2, 3`` give ``pi/2`` and ``3*pi/2``.
    """
    if k < 0:
        raise ValueError(f"index must be non-negative, got {k}")
    if k == 0:
        return ZERO
    n = k.bit_length() - 1
    rev = int(format(k, "b")[::-1], 2)
    return DyadicAngle.make(rev, n)


def cos_sin(theta: DyadicAngle) -> tuple[float, float]:
    """Cosine and sine with octant reduction.

    Angles on the octant grid map to exact values (``cos(pi/2) == 0.0``)
    and symmetric angles give sign-symmetric floats, so ``e_{2j+1} ==
    -e_{2j}`` holds bitwise for the derived coordinates.
    """
    if theta.num == 0:
        return 1.0, 0.0
    d = theta.log2den
    # theta = (q + frac) * pi/4 with frac = rnum/rden in [0, 1)
    if d <= 2:
        q, rnum, rden = theta.num << (2 - d), 0, 1
    else:
        q, rnum = divmod(theta.num, 1 << (d - 2))
        rden = 1 << (d - 2)
    q %= 8
    if rnum == 0:
        return _octant_point(q)
    if q % 2 == 0:
        r = (math.pi / 4) * rnum / rden
        return _rotate_octant(q, math.cos(r), math.sin(r))
    # odd octant: theta = (q+1)*pi/4 - r with r in (0, pi/4)
    r = (math.pi / 4) * (rden - rnum) / rden
    return _rotate_octant(q + 1, math.cos(r), -math.sin(r))


_SQRT_HALF = math.sqrt(0.5)


def _octant_point(q: int) -> tuple[float, float]:
    table = (
        (1.0, 0.0),
        (_SQRT_HALF, _SQRT_HALF),
        (0.0, 1.0),
        (-_SQRT_HALF, _SQRT_HALF),
        (-1.0, 0.0),
        (-_SQRT_HALF, -_SQRT_HALF),
        (0.0, -1.0),
        (_SQRT_HALF, -_SQRT_HALF),
    )
    return table[q % 8]


def _rotate_octant(q: int, c: float, s: float) -> tuple[float, float]:
    # multiply (c, s) by e^{i q pi/4} for even q only
    q %= 8
    if q == 0:
        return c, s
    if q == 2:
        return -s, c
    if q == 4:
        return -c, -s
    if q == 6:
        return s, -c
    raise AssertionError("odd octant rotation")
