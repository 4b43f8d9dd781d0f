"""Classical continued fractions on (0, 1].

Two routes to the same digits: the Gauss map ``x -> 1/x - floor(1/x)``, and
the lattice construction that adds ``V_{n-2} + a V_{n-1}`` while staying on
the same side of the line ``y = alpha x``. The second is the planar
analogue of the triangle-map dual construction and doubles as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import OutOfDomain


@dataclass(frozen=True)
class CFExpansion:
    digits: tuple[int, ...]
    terminated: bool
    # signs of det((1, alpha), V_n) for n = -1, 0, 1, ...; empty for gauss route
    sides: tuple[int, ...] = field(default=(), compare=False)

    def value(self) -> Fraction:
        return fold(self.digits)


def _check(x: Fraction) -> Fraction:
    x = Fraction(x)
    if not 0 < x <= 1:
        raise OutOfDomain(f"{x} not in (0, 1]")
    return x


def gauss_step(x) -> tuple[int, Fraction]:
    x = _check(x)
    inv = 1 / x
    k = inv.numerator // inv.denominator
    return k, inv - k


def cf_expand(x, max_terms: int = 10_000) -> CFExpansion:
    x = _check(x)
    digits = []
    while len(digits) < max_terms:
        k, x = gauss_step(x)
        digits.append(k)
        if x == 0:
            return CFExpansion(tuple(digits), True)
    return CFExpansion(tuple(digits), False)


def cf_geometric(x, max_terms: int = 10_000) -> CFExpansion:
    alpha = _check(x)

    def side(v: tuple[int, int]) -> Fraction:
        # det((1, alpha), (v0, v1)); positive above the line y = alpha x
        return v[1] - alpha * v[0]

    prev, cur = (0, 1), (1, 0)  # V_{-1}, V_0
    s_prev, s_cur = side(prev), side(cur)
    sides = [1, -1]
    digits = []
    while len(digits) < max_terms:
        # s_prev + a * s_cur keeps the sign of s_prev (or hits 0) for a <= floor(...)
        a = int(s_prev // -s_cur)
        nxt = (prev[0] + a * cur[0], prev[1] + a * cur[1])
        s_nxt = s_prev + a * s_cur
        digits.append(a)
        prev, cur = cur, nxt
        s_prev, s_cur = s_cur, s_nxt
        sides.append((s_nxt > 0) - (s_nxt < 0))
        if s_nxt == 0:
            return CFExpansion(tuple(digits), True, tuple(sides))
    return CFExpansion(tuple(digits), False, tuple(sides))


def fold(digits: Sequence[int]) -> Fraction:
    """Evaluate ``1/(a_1 + 1/(a_2 + ...))``."""
    value = Fraction(0)
    for a in reversed(digits):
        value = 1 / (a + value)
    return value
