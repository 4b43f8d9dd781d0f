"""Acceptance suite: one check per criterion, each reporting a PASS/FAIL line.

Run under pytest (the lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction as F
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from _helpers import random_points  # noqa: E402

from triseq.cf import cf_expand, cf_geometric, fold  # noqa: E402
from triseq.dynamics import Ball, find_partition_triangle_in_ball, mixing_witness  # noqa: E402
from triseq.exact import point  # noqa: E402
from triseq.families import LINEAR, POW2, PRIME, SQUARE  # noqa: E402
from triseq.geometry import (  # noqa: E402
    PointEstimate,
    SegmentEstimate,
    contains,
    dual_digit,
    limit_estimate,
    triangle_vertices,
    x_vectors,
)
from triseq.trimap import digits_from_dots, expand  # noqa: E402
from triseq.uniqueness import (  # noqa: E402
    BASIS_SEEDS,
    CROSS_SEEDS,
    growth_bounds_hold,
    inequality_suite,
    lead_sequence,
    partial_product,
    pow2_product_lower_bound,
)

RESULTS: list[str] = []


def report(num: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] AC{num:<2} {title}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_ac01_pow2_lead_integers():
    t0 = time.perf_counter()
    xs = lead_sequence(POW2.digits(8), BASIS_SEEDS)
    got = tuple(xs.x(k) for k in range(8))
    elapsed = time.perf_counter() - t0
    want = (1, 1, 3, 8, 33, 164, 1228, 11757)
    report(1, "pow2 lead integers", got == want and elapsed < 1,
           f"x_0..x_7 = {got} in {elapsed:.4f}s (seeds x_-3..x_-1 = 1, 0, 0)")


def test_ac02_pow2_growth_bounds():
    xs = lead_sequence(POW2.digits(31), BASIS_SEEDS)
    bad = [n for n in range(7, 31) if not growth_bounds_hold(xs, n)]
    report(2, "pow2 growth bounds 7..30", not bad, f"{len(bad)} violations")


def test_ac03_pow2_non_uniqueness():
    floor = pow2_product_lower_bound(7, 40)
    products = {name: partial_product(POW2, 7, 40, seeds) for name, seeds in
                (("classic", BASIS_SEEDS), ("geometric", CROSS_SEEDS))}
    above = all(floor <= p for p in products.values())
    est40 = limit_estimate(POW2, 40)
    est80 = limit_estimate(POW2, 80)
    segs = isinstance(est40, SegmentEstimate) and isinstance(est80, SegmentEstimate)
    agree = segs and abs(est40.length - est80.length) < 1e-6
    positive = segs and est40.length_lower_bound > 0
    detail = (f"product {float(products['geometric']):.6f} >= floor {float(floor):.6f}; "
              f"length40 {est40.length:.9f}, lower bound {getattr(est40, 'length_lower_bound', 0):.9f}, "
              f"length80 {getattr(est80, 'length', float('nan')):.9f}")
    report(3, "pow2 segment", above and positive and agree, detail)


def test_ac04_linear_uniqueness_evidence():
    bad = [N for N in range(0, 41) if not partial_product(LINEAR, 0, N) <= F(1, N + 2)]
    est = limit_estimate(LINEAR, 40)
    diam_ok = isinstance(est, PointEstimate) and est.diameter < 1e-3
    report(4, "linear product and diameter", not bad and diam_ok,
           f"{len(bad)} bound violations for N <= 40; diameter {getattr(est, 'diameter', float('nan')):.3e}")


def test_ac05_definition_equivalence():
    t0 = time.perf_counter()
    failures = 0
    for p in random_points(1000, 505):
        seq = expand(p)
        if seq != digits_from_dots(p):
            failures += 1
            continue
        if not all(contains(triangle_vertices(seq.digits[:k]), p, "closed") for k in range(1, len(seq) + 1)):
            failures += 1
    elapsed = time.perf_counter() - t0
    report(5, "expand vs dot digits + containment", failures == 0 and elapsed < 30,
           f"{failures} failures over 1000 points in {elapsed:.2f}s")


def test_ac06_golden_vertices():
    d0 = set(triangle_vertices((0,)).vertices)
    d1 = set(triangle_vertices((1,)).vertices)
    want0 = {point(1, 0), point(1, 1), point(F(1, 2), F(1, 2))}
    want1 = {point(1, 0), point(F(1, 2), F(1, 2)), point(F(1, 3), F(1, 3))}

    def on_cell_closure(v, k):
        return 1 - v.x - k * v.y >= 0 >= 1 - v.x - (k + 1) * v.y and 1 >= v.x >= v.y >= 0

    cells_ok = all(on_cell_closure(v, 0) for v in d0) and all(on_cell_closure(v, 1) for v in d1)
    report(6, "golden vertices", d0 == want0 and d1 == want1 and cells_ok,
           "first-level cells match the partition inequalities")


def test_ac07_dual_construction():
    failures = 0
    steps = 0
    for p in random_points(1000, 707):
        digits = expand(p).digits
        for n in range(len(digits)):
            steps += 1
            failures += dual_digit(x_vectors(digits[:n]), p) != digits[n]
    report(7, "dual plane digits", failures == 0, f"{failures} mismatches over {steps} steps")


def test_ac08_cf_baseline():
    rng = random.Random(808)
    failures = 0
    for _ in range(1000):
        q = rng.randint(1, 10 ** 4)
        x = F(rng.randint(1, q), q)
        a, g = cf_expand(x), cf_geometric(x)
        failures += a.digits != g.digits or not a.terminated or fold(a.digits) != x
    report(8, "continued fraction baseline", failures == 0, f"{failures} failures over 1000 rationals")


def test_ac09_mixing_witness():
    rng = random.Random(909)
    failures, done = 0, 0
    while done < 50:
        a = tuple(rng.randint(0, 6) for _ in range(rng.randint(0, 3)))
        b = tuple(rng.randint(0, 6) for _ in range(rng.randint(0, 3)))
        gap = rng.randint(0, 5)
        if not a and not b and gap == 0:
            continue
        done += 1
        failures += not mixing_witness(a, b, gap, samples=25).passed
    report(9, "mixing witnesses", failures == 0, f"{failures} failing triples of 50")


def test_ac10_density():
    rng = random.Random(1010)
    t0 = time.perf_counter()
    failures = 0
    for _ in range(20):
        q = rng.randint(2, 1000)
        u, v = rng.randint(1, q), rng.randint(1, q)
        center = point(F(max(u, v), q), F(min(u, v), q))
        for radius in (F(1, 10), F(1, 100), F(1, 1000)):
            ball = Ball(center, radius)
            tri = find_partition_triangle_in_ball(ball)
            failures += not all(ball.contains(p) for p in tri.vertices)
    elapsed = time.perf_counter() - t0
    report(10, "partition triangles in balls", failures == 0 and elapsed < 60,
           f"{failures} failures over 60 balls in {elapsed:.2f}s")


def test_ac11_inequality_suite():
    bad = {}
    for fam in (LINEAR, SQUARE, PRIME, POW2):
        rep = inequality_suite(fam, depth=30)
        if not rep.ok:
            bad[fam.name] = [(c.name, c.index) for c in rep.violations[:3]]
    report(11, "ratio identities and inequalities", not bad,
           "all four families clean to depth 30" if not bad else f"violations {bad}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_ac") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
