"""Nested partition triangles.

``X_k = C_k x C_{k+1}`` and, since the ``a_{k+1}`` term of ``C_{k+1}`` drops
out of the cross product, ``X_k = C_k x (C_{k-2} - C_{k-1})`` depends only on
``a_0 .. a_k``. The triangle of points whose sequence starts with
``a_0 .. a_n`` has vertices ``hat(X_{n-1})``, ``hat(X_n)`` and the Farey sum
of ``X_n`` and ``X_{n-2}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Iterable, Literal, Sequence, Union

from .errors import ConsistencyFailure, Degenerate, IndexOutOfRange, ZeroLeadComponent
from .exact import (
    E1,
    IntVec3,
    RationalPoint,
    cross,
    dist2,
    farey_sum,
    hat,
    orient,
    sqrt_le,
)
from .trimap import TriSequence, as_digits, c_vectors, inverse_step

X_BASE = (IntVec3(0, 0, 1), E1, IntVec3(1, 1, 0))  # X_{-3}, X_{-2}, X_{-1}


@dataclass(frozen=True)
class XState:
    """``X_{-3} .. X_n`` for the digit prefix ``a_0 .. a_n``."""

    digits: tuple[int, ...]
    vectors: tuple[IntVec3, ...]

    @property
    def n(self) -> int:
        return len(self.digits) - 1

    def X(self, k: int) -> IntVec3:
        if not -3 <= k <= self.n:
            raise IndexOutOfRange(f"X_{k} outside -3..{self.n}")
        return self.vectors[k + 3]

    def x(self, k: int) -> int:
        return self.X(k).z

    def leads(self) -> list[int]:
        return [v.z for v in self.vectors]


def x_recursion(digits: Iterable[int], seeds: Sequence[IntVec3] = X_BASE) -> list[IntVec3]:
    """``X_k = X_{k-3} + a_k X_{k-2} + X_{k-1}`` from three seed vectors."""
    xs = list(seeds)
    for a in digits:
        xs.append(xs[-3] + xs[-2] * a + xs[-1])
    return xs


def x_from_cross(digits: Sequence[int]) -> list[IntVec3]:
    cs = c_vectors(digits)  # cs[i] is C_{i-3}
    out = [cross(cs[0], cs[1]), cross(cs[1], cs[2])]
    for i in range(2, len(cs)):
        out.append(cross(cs[i], cs[i - 2] - cs[i - 1]))
    return out


def x_vectors(seq: TriSequence | Sequence[int]) -> XState:
    digits = as_digits(seq)
    by_cross = x_from_cross(digits)
    by_recursion = x_recursion(digits)
    if by_cross != by_recursion:
        raise ConsistencyFailure("cross-product and recursive X vectors disagree")
    return XState(digits, tuple(by_recursion))


@dataclass(frozen=True)
class PartitionTriangle:
    prefix: TriSequence
    prev_vertex: RationalPoint  # hat(X_{n-1})
    vertex: RationalPoint  # hat(X_n)
    farey_vertex: RationalPoint  # X_n +^ X_{n-2}
    xstate: XState

    @property
    def vertices(self) -> tuple[RationalPoint, RationalPoint, RationalPoint]:
        return (self.prev_vertex, self.vertex, self.farey_vertex)

    @property
    def centroid(self) -> RationalPoint:
        a, b, c = self.vertices
        return RationalPoint((a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3)

    def combination(self, wa, wb, wc) -> RationalPoint:
        """Barycentric point with weights proportional to ``wa, wb, wc``."""
        total = Fraction(wa + wb + wc)
        a, b, c = self.vertices
        return RationalPoint(
            (wa * a.x + wb * b.x + wc * c.x) / total,
            (wa * a.y + wb * b.y + wc * c.y) / total,
        )


def triangle_from_xstate(xs: XState, prefix: TriSequence | None = None) -> PartitionTriangle:
    n = xs.n
    try:
        verts = (hat(xs.X(n - 1)), hat(xs.X(n)), farey_sum(xs.X(n), xs.X(n - 2)))
    except ZeroLeadComponent as exc:
        raise ConsistencyFailure(f"undefined vertex for prefix {xs.digits}: {exc}") from None
    if orient(*verts) == 0:
        raise ConsistencyFailure(f"collinear vertices for prefix {xs.digits}")
    return PartitionTriangle(prefix or TriSequence(xs.digits), *verts, xs)


def triangle_vertices(seq: TriSequence | Sequence[int], allow_empty: bool = False) -> PartitionTriangle:
    """Partition triangle of a digit prefix.

    The empty prefix (the whole reference triangle) falls out of the same
    formula with ``n = -1`` but is only returned when ``allow_empty``.
    """
    digits = as_digits(seq)
    if not digits and not allow_empty:
        raise Degenerate("partition triangle needs a non-empty prefix")
    return triangle_from_xstate(x_vectors(digits), TriSequence(digits))


@dataclass(frozen=True)
class SideLengths:
    """Squared side lengths.

    ``tau2``: prev_vertex to vertex; ``rho2``: vertex to farey_vertex;
    ``mu2``: prev_vertex to farey_vertex.
    """

    tau2: Fraction
    rho2: Fraction
    mu2: Fraction

    @property
    def s2(self) -> Fraction:
        return max(self.tau2, self.rho2, self.mu2)

    @property
    def longest(self) -> float:
        return math.sqrt(self.s2)

    def triangle_inequality_holds(self) -> bool:
        t, r, m = self.tau2, self.rho2, self.mu2
        return sqrt_le([t], [r, m]) and sqrt_le([r], [t, m]) and sqrt_le([m], [t, r])


def side_lengths(tri: PartitionTriangle) -> SideLengths:
    if not tri.prefix.digits:
        raise Degenerate("side lengths are defined for non-empty prefixes only")
    return SideLengths(
        dist2(tri.prev_vertex, tri.vertex),
        dist2(tri.vertex, tri.farey_vertex),
        dist2(tri.prev_vertex, tri.farey_vertex),
    )


def contains(tri: PartitionTriangle, p: RationalPoint, mode: Literal["open", "closed"] = "closed") -> bool:
    a, b, c = tri.vertices
    area = orient(a, b, c)
    signs = [orient(a, b, p) * area, orient(b, c, p) * area, orient(c, a, p) * area]
    if mode == "open":
        return all(s > 0 for s in signs)
    if mode == "closed":
        return all(s >= 0 for s in signs)
    raise ValueError(f"mode must be 'open' or 'closed', not {mode!r}")


def dual_digit(xs: XState, p: RationalPoint) -> int:
    """Next digit from the rotating planes about ``X_{n-1}``.

    Plane ``P_k`` is spanned by ``X_{n-1}`` and ``X_{n-1} + X_{n-3} + k X_{n-2}``;
    its normal ``X_{n-1} x X_{n-3} + k X_{n-1} x X_{n-2}`` is affine in ``k``,
    and the digit is the ``k`` for which ``(1, x, y)`` sits on the closed
    near side of ``P_k`` and strictly past ``P_{k+1}``.
    """
    m = len(xs.digits)  # the digit being chosen is a_m
    pivot = xs.X(m - 1)
    v = p.projective()
    base = Fraction(cross(pivot, xs.X(m - 3)).dot(v))
    step = Fraction(cross(pivot, xs.X(m - 2)).dot(v))
    if step >= 0 or base < 0:
        raise Degenerate(f"{p} is not strictly inside the current cone")
    return int(base // -step)


PointLike = Union[TriSequence, Iterable[int]]


@dataclass(frozen=True)
class PointEstimate:
    point: RationalPoint
    radius2: Fraction  # squared enclosure radius; 0 means exact
    depth: int

    @property
    def radius(self) -> float:
        return math.sqrt(self.radius2)

    @property
    def diameter(self) -> float:
        return 2 * self.radius


@dataclass(frozen=True)
class SegmentEstimate:
    even_limit: RationalPoint
    odd_limit: RationalPoint
    gap2: Fraction  # squared distance between the two parity tails
    even_residual2: Fraction
    odd_residual2: Fraction
    diameter2: Fraction  # squared longest side at depth (a rigorous upper bound)
    depth: int

    @property
    def length(self) -> float:
        return math.sqrt(self.gap2)

    @property
    def length_lower_bound(self) -> float:
        slack = 2 * (math.sqrt(self.even_residual2) + math.sqrt(self.odd_residual2))
        return max(0.0, self.length - slack)


def limit_estimate(seq: PointLike, depth: int, factor: int = 8) -> PointEstimate | SegmentEstimate:
    """Estimate where the nested triangles of ``seq`` shrink to.

    Hats of even and odd index converge separately. When their gap at
    ``depth`` exceeds ``factor`` times the larger within-parity step, the
    sequence looks like it describes a segment. Both residuals are kept so
    callers can apply their own threshold.
    """
    if depth < 4:
        raise ValueError("depth must be at least 4")
    if isinstance(seq, TriSequence) and seq.terminated and len(seq) <= depth + 1:
        return _terminated_estimate(seq)
    digits = tuple(islice(iter(seq), depth + 1))
    if len(digits) < depth + 1:
        raise IndexOutOfRange(f"sequence has only {len(digits)} digits, depth {depth} needs {depth + 1}")
    xs = x_vectors(digits)
    n = xs.n
    tri = triangle_from_xstate(xs)
    diam2 = side_lengths(tri).s2
    hats = {k: hat(xs.X(k)) for k in range(n - 3, n + 1)}
    e, o = (n, n - 1) if n % 2 == 0 else (n - 1, n)
    res_e = dist2(hats[e], hats[e - 2])
    res_o = dist2(hats[o], hats[o - 2])
    gap2 = dist2(hats[e], hats[o])
    if gap2 > factor * factor * max(res_e, res_o):
        return SegmentEstimate(hats[e], hats[o], gap2, res_e, res_o, diam2, depth)
    return PointEstimate(hats[n], diam2, depth)


def _terminated_estimate(seq: TriSequence) -> PointEstimate | SegmentEstimate:
    digits = seq.digits
    if seq.terminal is not None:
        p = seq.terminal
        for a in reversed(digits):
            p = inverse_step(a, p)
        return PointEstimate(p, Fraction(0), len(digits) - 1)
    # every point of the edge hat(X_{n-1}) hat(X_n) terminates with these digits
    xs = x_vectors(digits)
    a, b = hat(xs.X(xs.n - 1)), hat(xs.X(xs.n))
    length2 = dist2(a, b)
    return SegmentEstimate(a, b, length2, Fraction(0), Fraction(0), length2, len(digits) - 1)
