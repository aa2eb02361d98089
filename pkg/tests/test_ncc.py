from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flipgraph.biclosed import eta, phi
from flipgraph.ncc import (
    BACKWARD,
    FORWARD,
    BoundaryArcNotFlippable,
    boundary_arcs,
    enumerate_facets,
    eta_from_segments,
    facet_size,
    flip,
    flip_direction,
    flip_lattice,
    is_facet,
    is_noncrossing,
    marked_arc,
    oriented_flip_graph,
    tree_arcs,
    tree_segments,
)
from flipgraph.seg_arc import Arc, Segment, arcs_cross
from oracles import brute_facets
from trees import exhaustive_trees

TREES = st.sampled_from(exhaustive_trees())


def test_star_has_one_facet_of_boundary_arcs(named):
    t = named("star")
    fs = enumerate_facets(t)
    assert len(fs) == 1
    assert fs[0].arcs == frozenset(boundary_arcs(t)) == frozenset(tree_arcs(t))
    assert is_facet(t, boundary_arcs(t))


def test_a1_two_facets_one_flip(named):
    t = named("a1")
    g = oriented_flip_graph(t)
    assert len(g.facets) == 2
    assert [(a, b, s) for a, b, s in g.edges] == [(0, 1, Segment((5, 6)))]
    for f in g.facets:
        assert is_facet(t, f.arcs)
        (p,) = f.nonboundary_arcs
        assert not is_facet(t, f.arcs - {p})
    src = g.facets[g.source()]
    (p,) = src.nonboundary_arcs
    g2, label = flip(src, p)
    assert g2 == g.facets[g.sink()] and label == Segment((5, 6))
    assert flip_direction(src, p) == FORWARD
    (q,) = g2.nonboundary_arcs
    assert flip_direction(g2, q) == BACKWARD


def test_a1_top_arc_marked_on_both_sides(named):
    t = named("a1")
    top = eta_from_segments(t, tree_segments(t))
    (p,) = top.nonboundary_arcs
    marked = top.marked_corners(p)
    assert sorted(c.vertex for c in marked) == [5, 6]
    assert marked[0].face != marked[1].face


def test_a2_pentagon(named):
    t = named("a2")
    g = oriented_flip_graph(t)
    assert len(g.facets) == 5 and len(g.edges) == 5
    L = flip_lattice(t)
    assert L.bottom == g.source() and L.top == g.sink()
    chains = sorted(len(L.interval(L.bottom, a)) for a in L.atoms())
    assert chains == [2, 2]


def test_arc_example_facets(named):
    t = named("arcex2")
    assert len(enumerate_facets(t)) == 12


def test_boundary_arc_is_not_flippable(named):
    t = named("a2")
    f = enumerate_facets(t)[0]
    with pytest.raises(BoundaryArcNotFlippable):
        flip(f, boundary_arcs(t)[0])


@pytest.mark.parametrize("t", exhaustive_trees(), ids=lambda t: str(sorted(t.rotation().items())))
def test_facets_match_clique_search(t):
    crosses = lambda p, q: arcs_cross(t, Arc(p), Arc(q))  # noqa: E731
    found = {frozenset(a.path for a in f.arcs) for f in enumerate_facets(t)}
    assert found == brute_facets(t, crosses)


@settings(max_examples=40, deadline=None)
@given(TREES)
def test_pure_and_thin(t):
    n = facet_size(t)
    assert 2 * n == len(t.corners()) - len(t.faces)
    ridges = Counter()
    for f in enumerate_facets(t):
        assert len(f.nonboundary_arcs) == n
        assert is_noncrossing(t, f.arcs)
        for p in f.nonboundary_arcs:
            ridges[f.arcs - {p}] += 1
    assert set(ridges.values()) <= {2}


@settings(max_examples=40, deadline=None)
@given(TREES)
def test_marks_cover_every_corner_once(t):
    for f in enumerate_facets(t):
        assert set(f.marks) == set(t.corners())
        for c in t.corners():
            p = marked_arc(f, c)
            assert p in f.arcs and c in f.marked_corners(p)
        for p in f.nonboundary_arcs:
            assert len(f.marked_corners(p)) == 2


@settings(max_examples=40, deadline=None)
@given(TREES)
def test_flip_is_an_involution_with_opposite_direction(t):
    for f in enumerate_facets(t):
        for p in f.nonboundary_arcs:
            g, label = flip(f, p)
            (q,) = g.arcs - f.arcs
            back, label2 = flip(g, q)
            assert back == f and label == label2
            assert {flip_direction(f, p), flip_direction(g, q)} == {FORWARD, BACKWARD}


@settings(max_examples=40, deadline=None)
@given(TREES)
def test_source_and_sink(t):
    g = oriented_flip_graph(t)
    assert g.facets[g.source()] == eta_from_segments(t, ())
    assert g.facets[g.sink()] == eta_from_segments(t, tree_segments(t))
    src = g.facets[g.source()]
    assert all(flip_direction(src, p) == FORWARD for p in src.nonboundary_arcs)


@settings(max_examples=40, deadline=None)
@given(TREES)
def test_edge_labels_drop_one_segment(t):
    g = oriented_flip_graph(t)
    for a, b, s in g.edges:
        X = phi(t, g.facets[b])
        assert s in X
        assert eta(t, X - {s}) == g.facets[a]
