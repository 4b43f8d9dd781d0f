"""The triangle map and digit extraction.

The reference triangle is ``{(x, y) : 1 >= x >= y > 0}``, cut into cells
``1 - x - k y >= 0 > 1 - x - (k + 1) y``. On cell ``k`` the map is
``(a, b) -> (b / a, (1 - a - k b) / a)``; an orbit terminates when the
second coordinate hits exactly zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import ConsistencyFailure, OutOfDomain, OutOfTriangle
from .exact import E1, E2, E3, IntVec3, RationalPoint

DEFAULT_MAX_TERMS = 10_000


@dataclass(frozen=True)
class TriSequence:
    """Digits of a triangle sequence.

    ``terminated_at`` is the step ``k`` at which ``T^k(p)`` landed on the
    bottom edge (always ``len(digits)`` when set). ``terminal`` optionally
    records that landing point ``(t, 0)``; without it a terminated sequence
    only pins down an edge, not a point.
    """

    digits: tuple[int, ...]
    terminated_at: Optional[int] = None
    terminal: Optional[RationalPoint] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(a) for a in self.digits))
        if any(a < 0 for a in self.digits):
            raise OutOfDomain("triangle digits must be nonnegative")
        if self.terminated_at is not None and self.terminated_at != len(self.digits):
            raise OutOfDomain("terminated_at must equal the number of digits")

    @property
    def terminated(self) -> bool:
        return self.terminated_at is not None

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    def prefix(self, n: int) -> "TriSequence":
        return TriSequence(self.digits[:n])

    def __add__(self, other) -> "TriSequence":
        return TriSequence(self.digits + tuple(other))


@dataclass(frozen=True)
class IntervalPoint:
    """Closed rational box ``[x_lo, x_hi] x [y_lo, y_hi]``."""

    x_lo: Fraction
    x_hi: Fraction
    y_lo: Fraction
    y_hi: Fraction

    def __post_init__(self):
        for name in ("x_lo", "x_hi", "y_lo", "y_hi"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.x_lo > self.x_hi or self.y_lo > self.y_hi:
            raise OutOfDomain("interval bounds reversed")

    @classmethod
    def from_point(cls, p: RationalPoint) -> "IntervalPoint":
        return cls(p.x, p.x, p.y, p.y)

    @property
    def degenerate(self) -> bool:
        return self.x_lo == self.x_hi and self.y_lo == self.y_hi

    def corners(self):
        for x in (self.x_lo, self.x_hi):
            for y in (self.y_lo, self.y_hi):
                yield x, y


@dataclass(frozen=True)
class Ambiguous:
    """Interval expansion stopped: the box straddles a cell boundary."""

    step: int
    digits: tuple[int, ...]


def _require_in_triangle(p: RationalPoint) -> None:
    if not p.in_triangle():
        raise OutOfTriangle(f"{p} is not in the triangle 1 >= x >= y > 0")


def cell_index(x: Fraction, y: Fraction) -> int:
    """Largest ``k`` with ``1 - x - k y >= 0``; caller guarantees ``y > 0``."""
    num = 1 - x
    return (num.numerator * y.denominator) // (num.denominator * y.numerator)


def partition_index(p: RationalPoint) -> int:
    _require_in_triangle(p)
    return cell_index(p.x, p.y)


def in_cell(p: RationalPoint, k: int) -> bool:
    return 1 - p.x - k * p.y >= 0 > 1 - p.x - (k + 1) * p.y


def apply_cell(p: RationalPoint, k: int) -> RationalPoint:
    """The cell-``k`` branch of the map, applied without checking membership."""
    return RationalPoint(p.y / p.x, (1 - p.x - k * p.y) / p.x)


def triangle_step(p: RationalPoint) -> tuple[int, RationalPoint, bool]:
    """One application of the map: ``(digit, image, terminal)``."""
    k = partition_index(p)
    image = apply_cell(p, k)
    terminal = image.y == 0
    if not terminal and not image.in_triangle():
        raise ConsistencyFailure(f"image {image} of {p} left the triangle")
    return k, image, terminal


def inverse_step(k: int, image: RationalPoint) -> RationalPoint:
    """Preimage of ``image`` under the cell-``k`` branch."""
    a = 1 / (1 + k * image.x + image.y)
    return RationalPoint(a, image.x * a)


def expand(p: RationalPoint, max_terms: int = DEFAULT_MAX_TERMS) -> TriSequence:
    _require_in_triangle(p)
    digits = []
    while len(digits) < max_terms:
        k, p, terminal = triangle_step(p)
        digits.append(k)
        if terminal:
            return TriSequence(tuple(digits), len(digits), p)
    return TriSequence(tuple(digits))


def orbit(p: RationalPoint, steps: int) -> list[RationalPoint]:
    """``[p, T p, ..., T^steps p]``, stopping early at a terminal point."""
    out = [p]
    for _ in range(steps):
        _, p, terminal = triangle_step(p)
        out.append(p)
        if terminal:
            break
    return out


def iterate(p: RationalPoint, steps: int) -> RationalPoint:
    pts = orbit(p, steps)
    if len(pts) != steps + 1:
        raise OutOfTriangle(f"orbit terminated after {len(pts) - 1} of {steps} steps")
    return pts[-1]


def _clip(box: IntervalPoint) -> IntervalPoint | None:
    # The enclosed point lies in the closed triangle, so trimming the box to
    # the bounding box of (box cap triangle) keeps it a valid enclosure.
    x_hi = min(box.x_hi, Fraction(1))
    y_lo = max(box.y_lo, Fraction(0))
    y_hi = min(box.y_hi, x_hi)
    x_lo = max(box.x_lo, y_lo)
    if x_lo > x_hi or y_lo > y_hi or x_hi <= 0:
        return None
    return IntervalPoint(x_lo, x_hi, y_lo, y_hi)


def expand_interval(box: IntervalPoint, max_terms: int = DEFAULT_MAX_TERMS) -> TriSequence | Ambiguous:
    """Digits shared by every point of ``box``, or where that stops being decidable."""
    if box.degenerate:
        return expand(RationalPoint(box.x_lo, box.y_lo), max_terms)
    digits: list[int] = []
    clipped = _clip(box)
    if clipped is None or clipped.y_hi == 0:
        raise OutOfTriangle("interval box does not meet the triangle")
    box = clipped
    while len(digits) < max_terms:
        if box.y_lo <= 0 or box.x_lo <= 0:
            return Ambiguous(len(digits), tuple(digits))
        # 1 - x - k y is decreasing in x and y: extremes sit at opposite corners
        k = cell_index(box.x_hi, box.y_hi)
        if not (1 - box.x_lo - (k + 1) * box.y_lo < 0):
            return Ambiguous(len(digits), tuple(digits))
        digits.append(k)
        # x' = b / a rises with b and falls with a; y' = 1/a - 1 - k b / a falls with both
        image = IntervalPoint(
            box.y_lo / box.x_hi,
            box.y_hi / box.x_lo,
            (1 - box.x_hi - k * box.y_hi) / box.x_hi,
            (1 - box.x_lo - k * box.y_lo) / box.x_lo,
        )
        if image.y_hi == 0:
            return TriSequence(tuple(digits), len(digits))
        box = _clip(image)
        if box is None:
            raise ConsistencyFailure("interval image left the triangle")
    return TriSequence(tuple(digits))


C_BASE = (E1, E2, E3)


def c_vectors(seq: Iterable[int]) -> list[IntVec3]:
    """``[C_{-3}, C_{-2}, C_{-1}, C_0, ..., C_n]``."""
    cs = list(C_BASE)
    for a in seq:
        cs.append(cs[-3] - cs[-2] - cs[-1] * a)
    return cs


def d_values(p: RationalPoint, seq: Iterable[int]) -> list[Fraction]:
    """``d_k = (1, x, y) . C_k`` for ``k = -3 .. n``."""
    v = p.projective()
    return [Fraction(c.dot(v)) for c in c_vectors(seq)]


def digits_from_dots(p: RationalPoint, max_terms: int = DEFAULT_MAX_TERMS) -> TriSequence:
    """Digits chosen so that ``d_{k-3} - d_{k-2} - a_k d_{k-1}`` stays nonnegative."""
    _require_in_triangle(p)
    d3, d2, d1 = Fraction(1), p.x, p.y
    digits = []
    while len(digits) < max_terms:
        base = d3 - d2
        a = (base.numerator * d1.denominator) // (base.denominator * d1.numerator)
        nxt = base - a * d1
        digits.append(a)
        d3, d2, d1 = d2, d1, nxt
        if nxt == 0:
            return TriSequence(tuple(digits), len(digits))
    return TriSequence(tuple(digits))


_SEQ_SPLIT = re.compile(r"[,\s]+")


def parse_sequence(text: str) -> TriSequence:
    """Comma/newline separated nonnegative integers, optional trailing ``!``."""
    body = text.strip()
    terminated = body.endswith("!")
    if terminated:
        body = body[:-1]
    tokens = [t for t in _SEQ_SPLIT.split(body) if t]
    try:
        digits = tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise OutOfDomain(f"bad sequence token: {exc}") from None
    return TriSequence(digits, len(digits) if terminated else None)


def format_sequence(seq: TriSequence) -> str:
    return ",".join(map(str, seq.digits)) + ("!" if seq.terminated else "")


def parse_point(text: str) -> RationalPoint:
    """``num/den,num/den`` (decimals are read exactly)."""
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 2:
        raise OutOfDomain(f"point must be 'x,y', got {text!r}")
    try:
        return RationalPoint(Fraction(parts[0]), Fraction(parts[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise OutOfDomain(f"bad point {text!r}: {exc}") from None


def parse_interval(text: str) -> IntervalPoint:
    """``xlo:xhi,ylo:yhi``."""
    try:
        xs, ys = text.split(",")
        x_lo, x_hi = (Fraction(v) for v in xs.split(":"))
        y_lo, y_hi = (Fraction(v) for v in ys.split(":"))
    except (ValueError, ZeroDivisionError) as exc:
        raise OutOfDomain(f"bad interval {text!r}: {exc}") from None
    return IntervalPoint(x_lo, x_hi, y_lo, y_hi)


def as_digits(seq: TriSequence | Sequence[int]) -> tuple[int, ...]:
    return seq.digits if isinstance(seq, TriSequence) else tuple(seq)
