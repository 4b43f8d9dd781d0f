"""Density of partition-triangle edges, vertices and cells; mixing witnesses.

The constructions follow the density arguments step for step. Wherever a
"sufficiently large" digit is needed it is found by doubling, and every
geometric condition along the way is decided exactly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ConsistencyFailure, EmptyCell, NotFound, OutOfDomain
from .exact import RationalPoint, closest_on_segment, dist2, farey_sum, hat, on_segment, point, segment_dist2
from .geometry import PartitionTriangle, contains, triangle_vertices, x_recursion, X_BASE
from .trimap import TriSequence, as_digits, expand, inverse_step, iterate

REFERENCE_VERTICES = (point(0, 0), point(1, 0), point(1, 1))
CENTROID = point(Fraction(2, 3), Fraction(1, 3))


@dataclass(frozen=True)
class Budget:
    max_prefix: int = 500
    max_digit_bits: int = 64

    @classmethod
    def from_env(cls, var: str = "TRISEQ_BUDGET") -> "Budget":
        """``TRISEQ_BUDGET=<max_prefix>[,<max_digit_bits>]``."""
        raw = os.environ.get(var)
        if not raw:
            return cls()
        try:
            parts = [int(p) for p in raw.split(",")]
        except ValueError:
            raise OutOfDomain(f"{var} must look like '500' or '500,64', got {raw!r}") from None
        if not 1 <= len(parts) <= 2 or min(parts) < 1:
            raise OutOfDomain(f"bad {var} value {raw!r}")
        return cls(*parts)


@dataclass(frozen=True)
class Ball:
    center: RationalPoint
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise OutOfDomain("ball radius must be positive")

    @property
    def r2(self) -> Fraction:
        return self.radius * self.radius

    def contains(self, p: RationalPoint, closed: bool = True) -> bool:
        d = dist2(self.center, p)
        return d <= self.r2 if closed else d < self.r2

    def meets_segment(self, a: RationalPoint, b: RationalPoint) -> bool:
        """Open ball against closed segment."""
        return segment_dist2(self.center, a, b) < self.r2

    def shrink(self, factor) -> "Ball":
        return Ball(self.center, self.radius * factor)


def _closest_in_triangle(c: RationalPoint) -> RationalPoint:
    a, b, d = REFERENCE_VERTICES
    if 1 >= c.x >= c.y >= 0:
        return c
    cands = [closest_on_segment(c, p, q) for p, q in ((a, b), (b, d), (d, a))]
    return min(cands, key=lambda q: dist2(c, q))


def interior_point_in(ball: Ball) -> RationalPoint:
    """A rational point of the open triangle inside the open ball."""
    q = _closest_in_triangle(ball.center)
    if not ball.contains(q, closed=False):
        raise OutOfDomain("ball does not meet the open triangle")
    t = Fraction(1, 2)
    for _ in range(4096):
        p = q + (CENTROID - q) * t
        if ball.contains(p, closed=False):
            return p
        t /= 2
    raise NotFound("could not place a point of the open triangle in the ball")


def _edge(xs, m: int) -> tuple[RationalPoint, RationalPoint]:
    """The designated edge ``hat(X_{m-1})`` to ``X_m +^ X_{m-2}``; ``xs[i]`` is ``X_{i-3}``."""
    return hat(xs[m + 2]), farey_sum(xs[m + 3], xs[m + 1])


def _push(xs: list, a: int) -> list:
    return xs + [xs[-3] + xs[-2] * a + xs[-1]]


def _doubling(test, budget: Budget, what: str) -> int:
    a = 1
    while a.bit_length() <= budget.max_digit_bits + 1:
        if test(a):
            return a
        a *= 2
    raise NotFound(f"no digit up to 2^{budget.max_digit_bits} {what}")


def edge_through_ball(ball: Ball, budget: Budget = Budget()) -> TriSequence:
    """A prefix whose designated edge meets the open ball."""
    w = interior_point_in(ball)
    seq = expand(w, budget.max_prefix)
    if not seq.terminated:
        raise NotFound("rational seed did not terminate within the budget")
    digits = list(seq.digits)
    xs = x_recursion(digits)
    for m in range(len(digits)):
        if ball.meets_segment(*_edge(xs, m)):
            return TriSequence(digits[: m + 1])
    m = len(digits) - 1
    prev_v, cur_v = hat(xs[m + 2]), hat(xs[m + 3])
    far = farey_sum(xs[m + 3], xs[m + 1])
    if on_segment(w, cur_v, far):
        # with a zero digit the Farey vertex becomes the next hat vertex
        digits.append(0)
        xs = _push(xs, 0)
        m += 1
        prev_v, cur_v = hat(xs[m + 2]), hat(xs[m + 3])
    if not on_segment(w, prev_v, cur_v):
        raise ConsistencyFailure(f"terminating point {w} is on no edge of its cell")

    def ok(a: int) -> bool:
        return ball.meets_segment(*_edge(_push(xs, a), m + 1))

    digits.append(_doubling(ok, budget, "brings the edge into the ball"))
    if len(digits) > budget.max_prefix:
        raise NotFound("prefix budget exhausted")
    return TriSequence(digits)


def vertex_in_ball(ball: Ball, budget: Budget = Budget()) -> TriSequence:
    """A prefix ``a_0 .. a_m`` whose last hat vertex ``hat(X_m)`` lies in the open ball.

    Three digits at a time: slide to the sub-edge holding the current
    witness, make that sub-edge a hat edge with a zero, then open a new
    designated edge through the half ball that is at most 3/2 as long.
    """
    half = ball.shrink(Fraction(1, 2))
    digits = list(edge_through_ball(half, budget).digits)
    xs = x_recursion(digits)
    m = len(digits) - 1
    a_pt, b_pt = _edge(xs, m)
    wk = closest_on_segment(half.center, a_pt, b_pt)
    while True:
        for k in (m - 1, m):
            if ball.contains(hat(xs[k + 3]), closed=False):
                return TriSequence(digits[: k + 1])
        if len(digits) + 3 > budget.max_prefix:
            raise NotFound("prefix budget exhausted while approaching a vertex")
        start, end = _edge(xs, m)
        span = end - start
        t = ((wk.x - start.x) * span.x + (wk.y - start.y) * span.y) / (span.x ** 2 + span.y ** 2)
        if t <= 0:
            raise ConsistencyFailure("witness sits on an excluded vertex")
        s = Fraction(xs[m + 3].z + xs[m + 1].z, xs[m + 2].z)
        u = s * (1 - t) / t
        a1 = u.numerator // u.denominator
        xs = _push(_push(xs, a1), 0)
        digits += [a1, 0]
        m += 2
        if not on_segment(wk, hat(xs[m + 2]), hat(xs[m + 3])):
            raise ConsistencyFailure("witness left the hat edge after the zero digit")
        base2 = dist2(hat(xs[m + 3]), hat(xs[m + 2]))

        def ok(a: int) -> bool:
            cand = _push(xs, a)
            p, q = _edge(cand, m + 1)
            return half.meets_segment(p, q) and 4 * dist2(p, q) < 9 * base2

        a3 = _doubling(ok, budget, "shortens the designated edge inside the ball")
        xs = _push(xs, a3)
        digits.append(a3)
        m += 1
        wk = closest_on_segment(half.center, *_edge(xs, m))


def find_partition_triangle_in_ball(ball: Ball, budget: Budget = Budget()) -> PartitionTriangle:
    """A partition triangle whose closed hull sits in the closed ball.

    Anchor a hat vertex in the half ball, then alternate a zero digit with
    a digit large enough to pull the next same-parity vertex back into the
    half ball; the zeros force the cells to shrink onto the anchor region.
    """
    if all(ball.contains(v) for v in REFERENCE_VERTICES):
        return triangle_vertices((), allow_empty=True)
    half = ball.shrink(Fraction(1, 2))
    digits = list(vertex_in_ball(half, budget).digits)
    xs = x_recursion(digits)

    def inside(ds) -> Optional[PartitionTriangle]:
        # the shortest fitting prefix along the path gives the largest cell
        for k in range(1, len(ds) + 1):
            tri = triangle_vertices(ds[:k])
            if all(ball.contains(v) for v in tri.vertices):
                return tri
        return None

    while True:
        tri = inside(digits)
        if tri is not None:
            return tri
        if len(digits) + 2 > budget.max_prefix:
            raise NotFound("prefix budget exhausted while shrinking onto the ball")
        digits.append(0)
        xs = _push(xs, 0)
        tri = inside(digits)
        if tri is not None:
            return tri
        a = _doubling(lambda a: half.contains(hat(_push(xs, a)[-1]), closed=False),
                      budget, "returns the vertex to the ball")
        digits.append(a)
        xs = _push(xs, a)


@dataclass(frozen=True)
class MixingWitness:
    prefix_a: TriSequence
    prefix_b: TriSequence
    gap: int
    concatenated: TriSequence
    power: int
    samples: tuple[RationalPoint, ...]
    forward_passed: int
    preimage_passed: int
    preimage_total: int

    @property
    def passed(self) -> bool:
        return self.forward_passed == len(self.samples) and self.preimage_passed == self.preimage_total


_WEIGHTS = [(1, 1, 1)] + [(i, j, k) for i in range(1, 5) for j in range(1, 5) for k in range(1, 5)
                          if (i, j, k) != (1, 1, 1) and len({i, j, k}) > 1]


def interior_samples(tri: PartitionTriangle, count: int) -> list[RationalPoint]:
    """Centroid first, then distinct strictly positive barycentric combinations."""
    if count > len(_WEIGHTS):
        raise OutOfDomain(f"at most {len(_WEIGHTS)} interior samples available")
    out, seen = [], set()
    for w in _WEIGHTS:
        p = tri.combination(*w)
        if p not in seen:
            seen.add(p)
            out.append(p)
        if len(out) == count:
            break
    return out


def _starts_with(seq: TriSequence, prefix: Sequence[int]) -> bool:
    return seq.digits[: len(prefix)] == tuple(prefix)


def mixing_witness(prefix_a, prefix_b, gap: int, samples: int = 25) -> MixingWitness:
    """Check that ``T^(|A| + gap)`` carries the cell of ``A 0^gap B`` into the cell of ``B``.

    Forward: sampled interior points of the concatenated cell stay in the
    cell of ``A`` and their image's digits begin with ``B``. Backward:
    sampled interior points of the target cell pull back, along the inverse
    branches, to interior points of the concatenated cell.
    """
    if gap < 0:
        raise OutOfDomain("gap must be nonnegative")
    a, b = as_digits(prefix_a), as_digits(prefix_b)
    concat = a + (0,) * gap + b
    power = len(a) + gap
    if not concat:
        raise OutOfDomain("need a nonempty concatenation")
    try:
        cell = triangle_vertices(concat)
    except ConsistencyFailure as exc:
        raise EmptyCell(str(exc)) from None
    outer = triangle_vertices(a) if a else None
    pts = interior_samples(cell, samples)
    forward = 0
    for p in pts:
        ok = contains(cell, p, "open") and _starts_with(expand(p, len(concat) + 1), concat)
        if ok and outer is not None:
            ok = contains(outer, p, "closed")
        if ok:
            image = iterate(p, power)
            ok = image.in_triangle() and _starts_with(expand(image, len(b) + 1), b)
        forward += ok
    target = triangle_vertices(b, allow_empty=True)
    targets = interior_samples(target, min(samples, 9))
    back = 0
    for q in targets:
        p = q
        for digit in reversed(concat[:power]):
            p = inverse_step(digit, p)
        back += contains(cell, p, "open") and iterate(p, power) == q
    return MixingWitness(TriSequence(a), TriSequence(b), gap, TriSequence(concat), power,
                         tuple(pts), forward, back, len(targets))
