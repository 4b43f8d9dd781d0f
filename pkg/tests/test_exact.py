from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from triseq.errors import ZeroLeadComponent
from triseq.exact import (
    IntVec3,
    cross,
    dist2,
    exact_sqrt,
    farey_sum,
    hat,
    on_segment,
    orient,
    point,
    segment_dist2,
    sqrt_le,
)
from triseq.geometry import x_vectors

ints = st.integers(-50, 50)
vecs = st.builds(IntVec3, ints, ints, ints)


def test_cross_examples():
    assert cross(IntVec3(1, 0, 0), IntVec3(0, 1, 0)) == IntVec3(0, 0, 1)
    v = IntVec3(3, -7, 2)
    assert cross(v, v) == IntVec3(0, 0, 0)
    assert cross(IntVec3(1, -1, 0), IntVec3(-1, 2, -1)) == IntVec3(1, 1, 1)


def test_hat_examples():
    assert hat(IntVec3(1, 1, 1)) == point(1, 1)
    assert hat(IntVec3(2, 1, 1)) == point(F(1, 2), F(1, 2))
    assert hat(IntVec3(3, 2, 1)) == point(F(2, 3), F(1, 3))
    with pytest.raises(ZeroLeadComponent):
        hat(IntVec3(0, 1, 1))


def test_farey_examples():
    assert farey_sum(IntVec3(1, 0, 0), IntVec3(1, 1, 0)) == point(F(1, 2), 0)
    assert farey_sum(IntVec3(2, 1, 1), IntVec3(2, 1, 1)) == hat(IntVec3(2, 1, 1))
    assert farey_sum(IntVec3(1, 1, 1), IntVec3(1, 0, 0)) == point(F(1, 2), F(1, 2))
    with pytest.raises(ZeroLeadComponent):
        farey_sum(IntVec3(1, 0, 0), IntVec3(-1, 2, 3))


def test_dist2_examples():
    assert dist2(point(1, 0), point(1, 1)) == 1
    assert dist2(point(1, 1), point(F(1, 2), F(1, 2))) == F(1, 2)
    p = point(F(3, 7), F(1, 9))
    assert dist2(p, p) == 0


@given(vecs, vecs, vecs, ints)
def test_cross_bilinear_and_orthogonal(u, v, w, k):
    assert cross(u + w, v) == cross(u, v) + cross(w, v)
    assert cross(u * k, v) == cross(u, v) * k
    assert cross(u, v) == -cross(v, u)
    assert cross(u, v).dot(u) == 0 == cross(u, v).dot(v)


pos = st.integers(1, 60)


@given(pos, ints, ints, pos, ints, ints)
def test_farey_sum_lies_between(a, b, c, d, e, f):
    t, s = IntVec3(a, b, c), IntVec3(d, e, f)
    m = farey_sum(t, s)
    assert orient(hat(t), hat(s), m) == 0
    assert on_segment(m, hat(t), hat(s))


@given(st.lists(st.integers(0, 6), min_size=3, max_size=12))
def test_farey_vertex_distance_ratio(digits):
    # the Farey point of X_n and X_{n+2} divides the edge in the ratio of lead components
    xs = x_vectors(digits)
    for n in range(-1, xs.n - 1):
        a, c = xs.X(n), xs.X(n + 2)
        lhs = dist2(hat(a), farey_sum(a, c)) * (a.z + c.z) ** 2
        rhs = c.z ** 2 * dist2(hat(a), hat(c))
        assert lhs == rhs


def test_exact_sqrt():
    assert exact_sqrt(F(9, 16)) == F(3, 4)
    assert exact_sqrt(F(2)) is None


def test_segment_distance():
    assert segment_dist2(point(0, 1), point(-1, 0), point(1, 0)) == 1
    assert segment_dist2(point(2, 0), point(-1, 0), point(1, 0)) == 1


@given(st.lists(st.fractions(0, 20), min_size=3, max_size=3))
def test_sqrt_le_matches_float(vals):
    import math

    p, q, r = vals
    exact = sqrt_le([r], [p, q])
    approx = math.sqrt(r) - (math.sqrt(p) + math.sqrt(q))
    if abs(approx) > 1e-9:
        assert exact == (approx <= 0)
    assert sqrt_le([p], [p])
