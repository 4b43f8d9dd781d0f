from fractions import Fraction as F

import pytest

from triseq.dynamics import (
    Ball,
    Budget,
    edge_through_ball,
    find_partition_triangle_in_ball,
    interior_point_in,
    interior_samples,
    mixing_witness,
    vertex_in_ball,
)
from triseq.errors import NotFound, OutOfDomain
from triseq.exact import farey_sum, hat, point, segment_dist2
from triseq.geometry import contains, triangle_vertices, x_vectors
from triseq.trimap import expand, iterate


def designated_edge(digits):
    xs = x_vectors(digits)
    n = xs.n
    return hat(xs.X(n - 1)), farey_sum(xs.X(n), xs.X(n - 2))


def fits(tri, ball):
    return all(ball.contains(v) for v in tri.vertices)


def test_ball_validation():
    with pytest.raises(OutOfDomain):
        Ball(point(F(1, 2), F(1, 4)), 0)
    with pytest.raises(OutOfDomain):
        interior_point_in(Ball(point(3, 3), F(1, 10)))


def test_interior_point_for_boundary_center():
    ball = Ball(point(1, 0), F(1, 1000))
    p = interior_point_in(ball)
    assert p.in_triangle() and ball.contains(p, closed=False)


@pytest.mark.parametrize("center, radius", [
    ((F(1, 2), F(1, 4)), F(1, 10)),
    ((F(2, 3), F(1, 3)), F(1, 20)),
    ((F(2, 3), F(1, 3)), F(1, 10 ** 5)),
    ((F(1, 1000), F(1, 2000)), F(1, 10 ** 4)),
])
def test_edge_through_ball(center, radius):
    ball = Ball(point(*center), radius)
    seq = edge_through_ball(ball)
    a, b = designated_edge(seq.digits)
    # oracle: closest point of the segment is strictly inside the disk
    assert segment_dist2(ball.center, a, b) < ball.r2


def test_huge_ball_any_first_edge_works():
    ball = Ball(point(F(2, 3), F(1, 3)), 2)
    assert segment_dist2(ball.center, *designated_edge((0,))) < ball.r2
    assert len(edge_through_ball(ball)) == 1


@pytest.mark.parametrize("center, radius", [((F(1, 2), F(1, 4)), F(1, 10)), ((F(9, 10), F(1, 10)), F(1, 100))])
def test_vertex_in_ball(center, radius):
    ball = Ball(point(*center), radius)
    seq = vertex_in_ball(ball)
    assert ball.contains(hat(x_vectors(seq.digits).X(len(seq) - 1)), closed=False)


@pytest.mark.parametrize("center, radius", [
    ((F(1, 2), F(1, 4)), F(1, 10)),
    ((F(9, 10), F(1, 10)), F(1, 4)),
    ((F(1, 3), F(1, 3)), F(1, 1000)),
    ((1, 0), F(1, 500)),
])
def test_partition_triangle_in_ball(center, radius):
    ball = Ball(point(*center), radius)
    tri = find_partition_triangle_in_ball(ball)
    assert fits(tri, ball)
    assert tri == triangle_vertices(tri.prefix)


def test_whole_triangle_for_huge_ball():
    tri = find_partition_triangle_in_ball(Ball(point(F(2, 3), F(1, 3)), 1))
    assert tri.prefix.digits == ()


@pytest.mark.parametrize("center", [(F(1, 2), F(1, 4)), (F(2, 3), F(1, 3)), (F(9, 10), F(1, 10))])
def test_shrinking_balls(center):
    lengths = []
    for radius in (F(1, 10), F(1, 100), F(1, 1000)):
        ball = Ball(point(*center), radius)
        tri = find_partition_triangle_in_ball(ball)
        assert fits(tri, ball)
        lengths.append(len(tri.prefix))
    assert lengths == sorted(lengths)


def test_budget_exhaustion():
    with pytest.raises(NotFound):
        find_partition_triangle_in_ball(Ball(point(F(1, 3), F(1, 7)), F(1, 10 ** 6)), Budget(max_prefix=3))


def test_budget_from_env(monkeypatch):
    monkeypatch.setenv("TRISEQ_BUDGET", "40,16")
    assert Budget.from_env() == Budget(40, 16)
    monkeypatch.setenv("TRISEQ_BUDGET", "0")
    with pytest.raises(OutOfDomain):
        Budget.from_env()
    monkeypatch.delenv("TRISEQ_BUDGET")
    assert Budget.from_env() == Budget()


def test_interior_samples_are_distinct_and_interior():
    tri = triangle_vertices((1, 2, 0))
    pts = interior_samples(tri, 25)
    assert pts[0] == tri.centroid
    assert len(set(pts)) == 25
    assert all(contains(tri, p, "open") for p in pts)


@pytest.mark.parametrize("a, b, gap, concat, power", [
    ((0,), (1,), 2, (0, 0, 0, 1), 3),
    ((1, 2), (0,), 0, (1, 2, 0), 2),
    ((3,), (), 0, (3,), 1),
])
def test_mixing_examples(a, b, gap, concat, power):
    w = mixing_witness(a, b, gap, samples=25)
    assert w.concatenated.digits == concat and w.power == power
    assert w.passed and len(w.samples) == 25
    # oracle: iterate the centroid directly
    image = iterate(triangle_vertices(concat).centroid, power)
    assert expand(image, len(b) + 1).digits[: len(b)] == b


def test_mixing_rejects_negative_gap():
    with pytest.raises(OutOfDomain):
        mixing_witness((1,), (1,), -1)
