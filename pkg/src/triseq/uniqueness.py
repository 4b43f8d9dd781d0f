"""When does a digit sequence pin down a single point?

Writing ``s_n = (x_n + x_{n-2}) / x_{n-1}`` for the lead components of the
X vectors, the edge ratios are ``lambda_n = s_n / (a_{n+1} + s_n)``,
``lambda~_n = s_n / (a_{n+1} + 1 + s_n)`` and ``lambda'_n = lambda_n - lambda~_n``.
A sequence with finitely many zero digits describes a segment exactly when
``prod (1 - lambda_n)`` stays positive, and ``1 - lambda_n`` collapses to
``a_{n+1} x_{n-1} / x_{n+1}`` so partial products telescope.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import ConsistencyFailure, IndexOutOfRange, ZeroDigit
from .exact import IntVec3, dist2, exact_sqrt, farey_sum, hat, sqrt_le
from .families import SequenceFamily
from .geometry import XState, side_lengths, triangle_from_xstate, x_recursion, x_vectors
from .trimap import TriSequence, as_digits

# Lead components of X_{-3}, X_{-2}, X_{-1} (the geometric X vectors).
CROSS_SEEDS = (0, 1, 1)
# Lead components of C_{-3}, C_{-2}, C_{-1}. Running the X recurrence from
# these reproduces the classic listing 1, 1, 3, 8, 33, ... for the
# powers-of-two family, which the cross-product vectors do not.
BASIS_SEEDS = (1, 0, 0)


@dataclass(frozen=True)
class LeadSequence:
    """Lead components ``x_{-3} .. x_n`` under a chosen seeding."""

    digits: tuple[int, ...]
    leads: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.digits) - 1

    def x(self, k: int) -> int:
        if not -3 <= k <= self.n:
            raise IndexOutOfRange(f"x_{k} outside -3..{self.n}")
        return self.leads[k + 3]


def lead_sequence(digits: Iterable[int], seeds: Sequence[int] = CROSS_SEEDS) -> LeadSequence:
    digits = tuple(digits)
    vecs = x_recursion(digits, [IntVec3(s, 0, 0) for s in seeds])
    return LeadSequence(digits, tuple(v.z for v in vecs))


def _leads(source, depth: int | None = None, seeds: Sequence[int] = CROSS_SEEDS):
    if isinstance(source, (XState, LeadSequence)):
        return source
    if isinstance(source, SequenceFamily):
        if depth is None:
            raise ValueError("depth is required for a family")
        source = source.digits(depth)
    return lead_sequence(as_digits(source), seeds)


@dataclass(frozen=True)
class LambdaTriple:
    lam: Fraction
    lam_tilde: Fraction
    lam_prime: Fraction


def _digit_after(xs, n: int, a_next: Optional[int]) -> int:
    if a_next is not None:
        return a_next
    if n + 1 > xs.n:
        raise IndexOutOfRange(f"a_{n + 1} is not in the prefix")
    return xs.digits[n + 1]


def ratio_s(xs, n: int) -> Fraction:
    if n - 2 < -3 or n > xs.n:
        raise IndexOutOfRange(f"lambda_{n} needs x_{n - 2} .. x_{n}")
    den = xs.x(n - 1)
    if den <= 0:
        raise IndexOutOfRange(f"x_{n - 1} = {den} is not positive")
    return Fraction(xs.x(n) + xs.x(n - 2), den)


def lambda_family(xs, n: int, a_next: Optional[int] = None) -> LambdaTriple:
    """Edge ratios at index ``n``; ``a_next`` overrides ``a_{n+1}``."""
    a = _digit_after(xs, n, a_next)
    if a < 0:
        raise ValueError("digits are nonnegative")
    s = ratio_s(xs, n)
    lam = s / (a + s)
    lam_tilde = s / (a + 1 + s)
    lam_prime = s / ((a + s) * (a + 1 + s))
    return LambdaTriple(lam, lam_tilde, lam_prime)


def one_minus_lambda(xs, n: int) -> Fraction:
    """``a_{n+1} x_{n-1} / x_{n+1}``."""
    if n + 1 > xs.n or n - 1 < -3:
        raise IndexOutOfRange(f"1 - lambda_{n} needs x_{n - 1} and x_{n + 1}")
    return Fraction(xs.digits[n + 1] * xs.x(n - 1), xs.x(n + 1))


def lambda_geometric(xs: XState, n: int) -> LambdaTriple:
    """The three ratios measured as distances along the edge; needs ``X_{n+1}``."""
    if n + 1 > xs.n or n - 2 < -3:
        raise IndexOutOfRange(f"geometric lambda_{n} needs X_{n - 2} .. X_{n + 1}")
    start = hat(xs.X(n - 1))
    mu2 = dist2(start, farey_sum(xs.X(n), xs.X(n - 2)))
    nxt = hat(xs.X(n + 1))
    mid = farey_sum(xs.X(n - 1), xs.X(n + 1))

    def ratio(d2):
        r = exact_sqrt(d2 / mu2)
        if r is None:
            raise ConsistencyFailure(f"edge ratio at {n} is not rational")
        return r

    return LambdaTriple(ratio(dist2(start, nxt)), ratio(dist2(start, mid)), ratio(dist2(mid, nxt)))


def partial_product(source, N: int, M: int, seeds: Sequence[int] = CROSS_SEEDS) -> Fraction:
    """``prod_{n=N}^{M} (1 - lambda_n)``, termwise and telescoped.

    ``source`` is a family, a digit list or a prepared lead sequence. The
    telescoped form is ``x_{N-1} x_N / (x_M x_{M+1}) * prod_{n=N+1}^{M+1} a_n``.
    """
    if M < N:
        raise ValueError("need N <= M")
    xs = _leads(source, M + 2, seeds)
    if M + 1 > xs.n:
        raise IndexOutOfRange(f"product to {M} needs a_{M + 1}")
    digits = xs.digits
    zeros = [n for n in range(N + 1, M + 2) if digits[n] == 0]
    if zeros:
        raise ZeroDigit(f"a_{zeros[0]} = 0 inside the product range")
    termwise = Fraction(1)
    for n in range(N, M + 1):
        termwise *= one_minus_lambda(xs, n)
    digit_product = math.prod(digits[N + 1 : M + 2])
    closed = Fraction(xs.x(N - 1) * xs.x(N) * digit_product, xs.x(M) * xs.x(M + 1))
    if termwise != closed:
        raise ConsistencyFailure(f"telescoped product disagrees on [{N}, {M}]")
    return termwise


class Verdict(str, enum.Enum):
    UNIQUE = "Unique"
    NON_UNIQUE = "NonUnique"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class Evidence:
    rule: str
    detail: str
    bound: Optional[Fraction] = None


@dataclass(frozen=True)
class ClassificationReport:
    family: str
    verdict: Verdict
    partial_product: Fraction
    product_start: int
    depth: int
    zero_count: int
    analytic: bool
    evidence: tuple[Evidence, ...] = field(default=())


class Surd2:
    """Exact ``a + b*sqrt(2)`` with rational ``a``, ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def pow2_half(cls, e: int) -> "Surd2":
        """``2 ** (e / 2)`` for any integer ``e``."""
        if e % 2 == 0:
            return cls(Fraction(2) ** (e // 2), 0)
        return cls(0, Fraction(2) ** ((e - 1) // 2))

    def __mul__(self, o: "Surd2") -> "Surd2":
        return Surd2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    def __rsub__(self, q) -> "Surd2":
        return Surd2(q - self.a, -self.b)

    def sign(self) -> int:
        a, b = self.a, self.b
        if a >= 0 and b >= 0:
            return 0 if a == b == 0 else 1
        if a <= 0 and b <= 0:
            return -1
        # opposite signs: compare a^2 with 2 b^2
        diff = a * a - 2 * b * b
        if diff == 0:
            return 0
        return (1 if a > 0 else -1) if diff > 0 else (1 if b > 0 else -1)

    def __le__(self, q) -> bool:
        return Surd2(self.a - q, self.b).sign() <= 0

    def __ge__(self, q) -> bool:
        return Surd2(self.a - q, self.b).sign() >= 0

    def lower_rational(self, digits: int = 30) -> Fraction:
        """A rational no larger than the exact value."""
        scale = 10 ** digits
        lo = Fraction(math.isqrt(2 * scale * scale), scale)
        hi = lo + Fraction(1, scale)
        return self.a + self.b * (lo if self.b >= 0 else hi)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(2)

    def __repr__(self) -> str:
        return f"Surd2({self.a}, {self.b})"


def pow2_term_lower_bound(n: int) -> Surd2:
    """``1 - 2 ** (1 - n/2)``, the per-index floor on ``1 - lambda_n`` for powers of two."""
    return 1 - Surd2.pow2_half(2 - n)


def pow2_product_lower_bound(N: int, M: int) -> Surd2:
    out = Surd2(1)
    for n in range(N, M + 1):
        out = out * pow2_term_lower_bound(n)
    return out


def growth_bounds_hold(xs, n: int) -> bool:
    """``1 + 2**((n-1)/2) <= x_n / x_{n-1} <= 2**(n/2)``, decided by squaring."""
    r = Fraction(xs.x(n), xs.x(n - 1))
    upper = r * r <= 2 ** n
    lower = r >= 1 and (r - 1) ** 2 >= Fraction(2) ** (n - 1)
    return upper and lower


# Analytic verdicts for the named families, with the argument that settles each.
_ANALYTIC = {
    "linear": (Verdict.UNIQUE, "bounded-ratio",
               "1 - lambda_n <= a_{n+1}/(a_{n+1}+1) = (n+1)/(n+2); the product telescopes to 0"),
    "square": (Verdict.UNIQUE, "alternating-ratio",
               "x_n/x_{n-1} >= n+1 or x_{n-1}/x_{n-2} >= n; factors <= 1 - 1/(2k+2) infinitely often"),
    "prime": (Verdict.UNIQUE, "prime-ratio",
              "1 - lambda_n <= 1 - 1/(p_{n+1}+1) and prod (1 - 1/p) diverges to 0"),
    "pow2": (Verdict.NON_UNIQUE, "growth-bounds",
             "1 + 2^((n-1)/2) <= x_n/x_{n-1} <= 2^(n/2) for n >= 7 gives 1 - lambda_n > 1 - 2^(1-n/2)"),
}


def classify(family: SequenceFamily, depth: int = 40,
             unique_threshold: Fraction = Fraction(1, 10 ** 6),
             tail_lower_bound: Optional[Fraction] = None) -> ClassificationReport:
    """Verdict plus the finite evidence behind it.

    Named families carry their analytic verdict. For anything else no
    verdict is a theorem: a small partial product is reported as evidence
    of uniqueness, and non-uniqueness is only claimed when the caller
    supplies a positive lower bound for the tail product.
    """
    if depth < 8:
        raise ValueError("depth must be at least 8")
    digits = family.digits(depth + 2)
    if len(digits) < 4:
        raise IndexOutOfRange("need at least four digits to classify")
    depth = min(depth, len(digits) - 2)
    zeros = [n for n, a in enumerate(digits) if a == 0]
    start = zeros[-1] if zeros else 0
    xs = lead_sequence(digits)
    evidence: list[Evidence] = []
    if start <= depth:
        product = partial_product(xs, start, depth)
        evidence.append(Evidence("partial-product", f"prod_{{n={start}}}^{{{depth}}} (1 - lambda_n)", product))
    else:
        product = Fraction(1)
        evidence.append(Evidence("partial-product", "no zero-free window inside the depth", product))

    if family.kind in _ANALYTIC:
        verdict, rule, detail = _ANALYTIC[family.kind]
        if family.kind == "pow2":
            bound = pow2_product_lower_bound(7, depth)
            evidence.append(Evidence(rule, detail))
            evidence.append(Evidence("pow2-product-floor",
                                     f"prod_{{n=7}}^{{{depth}}} (1 - 2^(1-n/2)) ~ {float(bound):.12g}",
                                     bound.lower_rational()))
        else:
            evidence.append(Evidence(rule, detail))
        return ClassificationReport(family.name, verdict, product, start, depth, len(zeros), True, tuple(evidence))

    if family.kind == "constant":
        c = family.param
        if c == 0:
            evidence.append(Evidence("infinitely-many-zeros", "every digit is 0"))
        else:
            evidence.append(Evidence("bounded-ratio", f"1 - lambda_n <= {c}/{c + 1} for every n", Fraction(c, c + 1)))
        return ClassificationReport(family.name, Verdict.UNIQUE, product, start, depth, len(zeros), True, tuple(evidence))

    # finite data: evidence only
    recent = [z for z in zeros if z >= len(digits) // 2]
    if recent:
        evidence.append(Evidence("recurring-zeros",
                                 f"{len(recent)} zero digits in the second half; zeros favour uniqueness "
                                 "but only infinitely many of them settle it"))
        verdict = Verdict.UNDETERMINED
    elif product < unique_threshold:
        evidence.append(Evidence("product-below-threshold", "partial product under the threshold", unique_threshold))
        verdict = Verdict.UNIQUE
    elif tail_lower_bound is not None and tail_lower_bound > 0:
        evidence.append(Evidence("tail-lower-bound", "caller-supplied positive tail bound", Fraction(tail_lower_bound)))
        verdict = Verdict.NON_UNIQUE
    else:
        verdict = Verdict.UNDETERMINED
    return ClassificationReport(family.name, verdict, product, start, depth, len(zeros), False, tuple(evidence))


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    index: int
    passed: bool


@dataclass(frozen=True)
class InequalityReport:
    family: str
    depth: int
    checks: tuple[InequalityCheck, ...]

    @property
    def violations(self) -> list[InequalityCheck]:
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.violations


def inequality_suite(family: SequenceFamily | Sequence[int], depth: int = 30) -> InequalityReport:
    """Check the edge-ratio identities and inequalities for ``n = 0 .. depth``.

    Every length comparison is made on squared lengths via :func:`sqrt_le`.
    """
    if isinstance(family, SequenceFamily):
        name, digits = family.name, family.digits(depth + 2)
    else:
        name, digits = "custom", tuple(family)
    if len(digits) < depth + 2:
        raise IndexOutOfRange(f"need {depth + 2} digits, have {len(digits)}")
    xs = x_vectors(digits)
    tris = [triangle_from_xstate(x_vectors(digits[: n + 1])) for n in range(depth + 2)]
    sides = [side_lengths(t) for t in tris]
    checks: list[InequalityCheck] = []

    def record(check: str, n: int, ok: bool):
        checks.append(InequalityCheck(check, n, bool(ok)))

    for n in range(depth + 1):
        a = digits[n + 1]
        lt = lambda_family(xs, n)
        geo = lambda_geometric(xs, n)
        lam, lt_, lp = lt.lam, lt.lam_tilde, lt.lam_prime
        record("ratios-match-geometry", n, geo == lt)
        record("prime-is-difference", n, lp == lam - lt_)
        record("closed-form-one-minus-lambda", n, 1 - lam == one_minus_lambda(xs, n))
        bumped = lambda_family(xs, n, a + 1)
        record("ratios-decrease-in-digit", n,
               bumped.lam < lam and bumped.lam_tilde < lt_ and bumped.lam_prime < lp)
        record("one-minus-lambda-digit-bound", n, 1 - lam <= Fraction(a, a + 1))
        record("prime-bound-plus", n, lp <= lam * lam / (1 + lam))
        record("prime-bound-minus-tilde", n, lp <= lt_ * lt_ / (1 - lt_))
        if lam < 1:
            record("prime-bound-minus", n, lp <= lam * lam / (1 - lam))
        cur, nxt = sides[n], sides[n + 1]
        # tau_{n+1} >= (1 - lam) tau_n - lam rho_n
        record("tau-step-lower", n, sqrt_le([(1 - lam) ** 2 * cur.tau2], [nxt.tau2, lam * lam * cur.rho2]))
        k = lam * lam / (1 + lam)
        record("rho-step-upper", n, sqrt_le([nxt.rho2], [k * k * cur.rho2, k * k * cur.tau2]))
        record("triangle-inequality", n, cur.triangle_inequality_holds())
    return InequalityReport(name, depth, tuple(checks))
