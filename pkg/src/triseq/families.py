"""Deterministic digit families and the ``--family`` option strings."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import count, islice
from pathlib import Path
from typing import Iterator, Optional

from .errors import OutOfDomain
from .trimap import TriSequence, parse_sequence

KINDS = ("linear", "square", "prime", "pow2", "constant", "custom")


def primes_upto(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def first_primes(n: int) -> list[int]:
    """The first ``n`` primes via a sieve sized by the Rosser bound."""
    if n <= 0:
        return []
    limit = 15 if n < 6 else int(n * (math.log(n) + math.log(math.log(n)))) + 1
    primes = primes_upto(limit)
    while len(primes) < n:
        limit *= 2
        primes = primes_upto(limit)
    return primes[:n]


@dataclass(frozen=True)
class SequenceFamily:
    """A reproducible digit sequence ``a_0, a_1, ...``.

    The four named families put ``a_0 = 0`` and ``a_n = f(n)`` for ``n >= 1``
    with ``f(n) = n``, ``n**2``, the ``n``-th prime (``p_1 = 2``) and
    ``2**(n-1)``. ``constant`` repeats ``param`` from ``a_0`` on. ``custom``
    replays a finite list.
    """

    kind: str
    param: Optional[int] = None
    data: tuple[int, ...] = field(default=(), repr=False)
    label: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise OutOfDomain(f"unknown family kind {self.kind!r}")
        if self.kind == "constant" and (self.param is None or self.param < 0):
            raise OutOfDomain("constant family needs a nonnegative digit")

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.kind == "constant":
            return f"const:{self.param}"
        return self.kind

    @property
    def finite(self) -> bool:
        return self.kind == "custom"

    def __iter__(self) -> Iterator[int]:
        if self.kind == "custom":
            return iter(self.data)
        if self.kind == "constant":
            return (self.param for _ in count())
        if self.kind == "prime":
            return self._primes()
        f = {"linear": lambda n: n, "square": lambda n: n * n, "pow2": lambda n: 1 << (n - 1)}[self.kind]
        return (0 if n == 0 else f(n) for n in count())

    def _primes(self) -> Iterator[int]:
        yield 0
        size = 64
        done = 0
        while True:
            batch = first_primes(size)
            yield from batch[done:]
            done, size = size, size * 2

    def digits(self, n: int) -> tuple[int, ...]:
        """First ``n`` digits; a custom family may return fewer."""
        return tuple(islice(iter(self), n))

    def sequence(self, n: int) -> TriSequence:
        return TriSequence(self.digits(n))


LINEAR = SequenceFamily("linear")
SQUARE = SequenceFamily("square")
PRIME = SequenceFamily("prime")
POW2 = SequenceFamily("pow2")


def constant(c: int) -> SequenceFamily:
    return SequenceFamily("constant", param=c)


def custom(digits, label: Optional[str] = None) -> SequenceFamily:
    return SequenceFamily("custom", data=tuple(int(a) for a in digits), label=label)


def parse_family(spec: str) -> SequenceFamily:
    """``linear``, ``square``, ``prime``, ``pow2``, ``const:<c>`` or ``file:<path>``."""
    spec = spec.strip()
    if spec in ("linear", "square", "prime", "pow2"):
        return SequenceFamily(spec)
    if spec.startswith("const:"):
        try:
            return constant(int(spec[len("const:"):]))
        except ValueError:
            raise OutOfDomain(f"bad constant family {spec!r}") from None
    if spec.startswith("file:"):
        path = Path(spec[len("file:"):])
        # OSError propagates; the CLI reports it with a nonzero exit
        seq = parse_sequence(path.read_text())
        return custom(seq.digits, label=spec)
    raise OutOfDomain(f"unknown family {spec!r}")
