"""Exact integer/rational kernel: 3-vectors, the hat projection, Farey sums.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator) and integers are plain Python ints, so nothing here rounds.
Lengths are irrational in general; every routine works with squared
lengths and the comparison helpers at the bottom decide inequalities
between sums of square roots exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterator, Sequence, Union

from .errors import ZeroLeadComponent

RationalLike = Union[int, Fraction, str]


@dataclass(frozen=True, slots=True)
class IntVec3:
    """Integer 3-vector. ``z`` is the projective (lead) coordinate."""

    z: int
    x: int
    y: int

    def __iter__(self) -> Iterator[int]:
        yield self.z
        yield self.x
        yield self.y

    def __add__(self, other: IntVec3) -> IntVec3:
        return IntVec3(self.z + other.z, self.x + other.x, self.y + other.y)

    def __sub__(self, other: IntVec3) -> IntVec3:
        return IntVec3(self.z - other.z, self.x - other.x, self.y - other.y)

    def __neg__(self) -> IntVec3:
        return IntVec3(-self.z, -self.x, -self.y)

    def __mul__(self, k: int) -> IntVec3:
        return IntVec3(k * self.z, k * self.x, k * self.y)

    __rmul__ = __mul__

    def dot(self, other) -> Fraction | int:
        a0, a1, a2 = other
        return self.z * a0 + self.x * a1 + self.y * a2

    def cross(self, other: IntVec3) -> IntVec3:
        return cross(self, other)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.z, self.x, self.y)


E1 = IntVec3(1, 0, 0)
E2 = IntVec3(0, 1, 0)
E3 = IntVec3(0, 0, 1)
ZERO = IntVec3(0, 0, 0)


@dataclass(frozen=True, slots=True)
class RationalPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __iter__(self) -> Iterator[Fraction]:
        yield self.x
        yield self.y

    def __add__(self, other: RationalPoint) -> RationalPoint:
        return RationalPoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: RationalPoint) -> RationalPoint:
        return RationalPoint(self.x - other.x, self.y - other.y)

    def __mul__(self, k) -> RationalPoint:
        return RationalPoint(self.x * k, self.y * k)

    __rmul__ = __mul__

    def in_triangle(self) -> bool:
        """``1 >= x >= y > 0``, decided exactly."""
        return 1 >= self.x >= self.y > 0

    def projective(self) -> tuple[int, Fraction, Fraction]:
        return (1, self.x, self.y)

    def to_float(self) -> tuple[float, float]:
        return (float(self.x), float(self.y))

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def point(x: RationalLike, y: RationalLike) -> RationalPoint:
    return RationalPoint(Fraction(x), Fraction(y))


def cross(u: IntVec3, v: IntVec3) -> IntVec3:
    return IntVec3(
        u.x * v.y - u.y * v.x,
        u.y * v.z - u.z * v.y,
        u.z * v.x - u.x * v.z,
    )


def det3(u: IntVec3, v: IntVec3, w: IntVec3) -> int:
    return cross(u, v).dot(w)


def hat(v: IntVec3) -> RationalPoint:
    """Intersection of the ray through ``v`` with the plane ``z = 1``."""
    if v.z == 0:
        raise ZeroLeadComponent(f"hat undefined for {v.as_tuple()}")
    return RationalPoint(Fraction(v.x, v.z), Fraction(v.y, v.z))


def farey_sum(t: IntVec3, s: IntVec3) -> RationalPoint:
    return hat(t + s)


def dist2(p: RationalPoint, q: RationalPoint) -> Fraction:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def orient(a: RationalPoint, b: RationalPoint, c: RationalPoint) -> Fraction:
    """Twice the signed area of ``abc``; positive when counter-clockwise."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def sign(q) -> int:
    return (q > 0) - (q < 0)


def on_segment(p: RationalPoint, a: RationalPoint, b: RationalPoint) -> bool:
    if orient(a, b, p) != 0:
        return False
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def closest_on_segment(c: RationalPoint, a: RationalPoint, b: RationalPoint) -> RationalPoint:
    """Exact nearest point to ``c`` on the closed segment ``ab``."""
    d = b - a
    len2 = d.x * d.x + d.y * d.y
    if len2 == 0:
        return a
    t = ((c.x - a.x) * d.x + (c.y - a.y) * d.y) / len2
    t = min(max(t, Fraction(0)), Fraction(1))
    return a + d * t


def segment_dist2(c: RationalPoint, a: RationalPoint, b: RationalPoint) -> Fraction:
    return dist2(c, closest_on_segment(c, a, b))


def exact_sqrt(q: Fraction) -> Fraction | None:
    """Rational square root of ``q`` when it exists, else None."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_le(lhs: Sequence[Fraction], rhs: Sequence[Fraction]) -> bool:
    """Decide ``sum(sqrt(l) for l in lhs) <= sum(sqrt(r) for r in rhs)`` exactly.

    Entries are nonnegative radicands (squared lengths). At most three
    radicands in total; that covers every triangle-side comparison used.
    """
    lhs = [Fraction(v) for v in lhs if v != 0]
    rhs = [Fraction(v) for v in rhs if v != 0]
    if any(v < 0 for v in lhs + rhs):
        raise ValueError("radicands must be nonnegative")
    if len(lhs) + len(rhs) > 3:
        raise ValueError("at most three radicands supported")
    if not lhs:
        return True
    if not rhs:
        return False
    if len(lhs) == 1 and len(rhs) == 1:
        return lhs[0] <= rhs[0]
    if len(lhs) == 2:
        return _pair_le_single(lhs[0], lhs[1], rhs[0])
    # sqrt(r) <= sqrt(p) + sqrt(q)  <=>  not (sqrt(p) + sqrt(q) < sqrt(r))
    return not _pair_lt_single(rhs[0], rhs[1], lhs[0])


def _pair_le_single(p: Fraction, q: Fraction, r: Fraction) -> bool:
    # sqrt(p) + sqrt(q) <= sqrt(r)  <=>  2 sqrt(pq) <= r - p - q
    gap = r - p - q
    return gap >= 0 and 4 * p * q <= gap * gap


def _pair_lt_single(p: Fraction, q: Fraction, r: Fraction) -> bool:
    gap = r - p - q
    return gap > 0 and 4 * p * q < gap * gap
