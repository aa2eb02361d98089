from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flipgraph.embedded_tree import (
    Corner,
    EmbeddedTree,
    InteriorDegreeTooSmall,
    NoInteriorVertex,
    NotATree,
    corner_step,
    corners,
    edge_key,
    load_tree,
)
from trees import exhaustive_trees

TREES = st.sampled_from(exhaustive_trees())


def test_star_has_three_faces_and_corners(named):
    t = named("star")
    assert t.leaves == (1, 2, 3)
    assert t.interior_vertices == (4,)
    assert t.faces == (1, 2, 3)
    assert len(t.corners()) == 3


def test_a2_basic_counts(named):
    t = named("a2")
    assert len(t.leaves) == 5
    assert t.interior_edges == ((6, 7), (7, 8))
    assert len(corners(t)) == 9
    assert t.path(1, 5) == (1, 6, 7, 8, 5)


def test_leaves_omit_their_line():
    t = load_tree({4: [1, 2, 3]})
    assert t.neighbors(1) == (4,)
    assert t.is_leaf(1) and not t.is_leaf(4)


def test_succ_and_pred_are_inverse(named):
    t = named("mixed")
    for v in t.vertices:
        for a in t.neighbors(v):
            assert t.pred(v, t.succ(v, a)) == a


def test_rotation_equality_ignores_starting_neighbor():
    a = load_tree({5: [1, 2, 3, 4]})
    b = load_tree({5: [3, 4, 1, 2]})
    mirror = load_tree({5: [4, 3, 2, 1]})
    assert a == b and hash(a) == hash(b)
    assert a != mirror


@pytest.mark.parametrize(
    "rotation, error",
    [
        ({3: [1, 2]}, InteriorDegreeTooSmall),
        ({1: [2]}, NoInteriorVertex),
        ({4: [1, 2, 3], 5: [1, 6, 7]}, NotATree),
        ({4: [1, 1, 2]}, NotATree),
        ({4: [4, 1, 2]}, NotATree),
        ({4: [1, 2, 5], 5: [6, 7, 8]}, NotATree),
    ],
)
def test_invalid_trees_are_rejected(rotation, error):
    with pytest.raises(error):
        EmbeddedTree(rotation)


def test_corner_step_rejects_unknown_direction(named):
    t = named("star")
    with pytest.raises(ValueError):
        t.corner_step(t.corners()[0], "up")


def test_corner_between_requires_consecutive_edges(named):
    t = named("star4")
    assert t.corner_between(5, 1, 2) == t.corner(5, 1)
    assert t.corner_between(5, 2, 1) == t.corner(5, 1)
    with pytest.raises(ValueError):
        t.corner_between(5, 1, 3)


@settings(max_examples=40, deadline=None)
@given(TREES)
def test_corner_count_is_sum_of_interior_degrees(t):
    assert len(t.corners()) == sum(t.degree(v) for v in t.interior_vertices)
    assert len(t.faces) == len(t.leaves)


@settings(max_examples=40, deadline=None)
@given(TREES)
def test_face_walks_join_consecutive_leaves(t):
    order = t.leaves_ccw
    for i, f in enumerate(t.faces):
        w = t.face_walk(f)
        assert t.is_leaf(w[0]) and t.is_leaf(w[-1])
        assert w[-1] == order[i] == t.face_leaf(f)
        assert w[0] == order[i - 1]
        assert t.face_of_leaf(w[-1]) == f
        for x, v, y in zip(w, w[1:], w[2:]):
            assert y == t.succ(v, x)


@settings(max_examples=40, deadline=None)
@given(TREES)
def test_every_directed_edge_borders_one_face_on_each_side(t):
    seen = {}
    for f in t.faces:
        w = t.face_walk(f)
        for a, b in zip(w, w[1:]):
            assert (a, b) not in seen
            seen[(a, b)] = f
    assert len(seen) == 2 * len(t.edges)
    for (a, b), f in seen.items():
        assert t.face_right(a, b) == f == t.face_left(b, a)


@settings(max_examples=40, deadline=None)
@given(TREES, st.data())
def test_corner_steps_cycle_around_a_vertex(t, data):
    c = data.draw(st.sampled_from(t.corners()))
    assert corner_step(t, corner_step(t, c, "ccw"), "cw") == c
    c2 = c
    for _ in range(t.degree(c.vertex)):
        c2 = t.corner_step(c2, "ccw")
    assert c2 == c
    a, b = t.corner_edges(c)
    assert b == t.succ(c.vertex, a)
    assert c in t.corners_of_face(c.face)
    assert isinstance(c, Corner) and c in t.corners_at(c.vertex)


@settings(max_examples=40, deadline=None)
@given(TREES)
def test_paths_follow_edges(t):
    edges = set(t.edges)
    for u in t.leaves:
        for v in t.leaves:
            p = t.path(u, v)
            assert p[0] == u and p[-1] == v and len(set(p)) == len(p)
            assert all(edge_key(a, b) in edges for a, b in zip(p, p[1:]))
