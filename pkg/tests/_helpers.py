import random
from fractions import Fraction as F

from triseq.exact import point


def random_points(n, seed, max_den=1000):
    """Random rationals of the triangle with denominators up to ``max_den``."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        q = rng.randint(1, max_den)
        a, b = rng.randint(1, q), rng.randint(1, q)
        out.append(point(F(max(a, b), q), F(min(a, b), q)))
    return out
