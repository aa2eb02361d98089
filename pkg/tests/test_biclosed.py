from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flipgraph.biclosed import (
    PreconditionViolated,
    closure,
    enumerate_biclosed,
    eta,
    facial_interval,
    is_biclosed,
    join_by_formula,
    phi,
    pi_down,
    pi_up,
    theta_classes,
    theta_congruence,
)
from flipgraph.lattice import validate_congruence
from flipgraph.ncc import enumerate_facets, tree_segments
from flipgraph.seg_arc import Segment
from oracles import brute_biclosed
from trees import exhaustive_trees

TREES = st.sampled_from(exhaustive_trees())


def _a2(named):
    t = named("a2")
    return t, Segment((6, 7)), Segment((7, 8)), Segment((6, 7, 8))


def test_closure_examples(named):
    t, a, b, ab = _a2(named)
    assert closure(t, ()) == frozenset()
    assert closure(t, {a, b}) == {a, b, ab}
    assert closure(t, {a}) == {a}


def test_biclosed_examples(named):
    t, a, b, ab = _a2(named)
    assert is_biclosed(t, ()) and is_biclosed(t, {a, b, ab})
    assert not is_biclosed(t, {ab})
    assert not is_biclosed(t, {a, b})
    assert is_biclosed(t, {a})


def test_counts(named):
    assert enumerate_biclosed(named("a1")).n == 2
    # the six biclosed subsets of a three-segment composable triple
    assert enumerate_biclosed(named("a2")).n == 6
    assert enumerate_biclosed(named("bicfig")).n == 26


def test_theta_class_counts(named):
    assert [len(c) for c in theta_classes(named("a1"))] == [1, 1]
    assert len(theta_classes(named("a2"))) == 5


def test_facial_interval_examples(named):
    t, a, b, ab = _a2(named)
    single = facial_interval(t, (), [a])
    assert len(single.interval) == 2 and single.is_isomorphism()
    both = facial_interval(t, (), [a, b])
    assert len(both.blocks) == 1
    assert len(both.interval) == 6 and both.is_isomorphism()
    with pytest.raises(PreconditionViolated):
        facial_interval(t, (), [ab])


@pytest.mark.parametrize("t", exhaustive_trees(), ids=lambda t: str(sorted(t.rotation().items())))
def test_biclosed_sets_match_brute_force(t):
    found = {frozenset(s.path for s in X) for X in enumerate_biclosed(t).elements}
    assert found == brute_biclosed(t)


@settings(max_examples=40, deadline=None)
@given(TREES, st.data())
def test_closure_is_a_closure_operator(t, data):
    segs = list(tree_segments(t))
    X = frozenset(data.draw(st.sets(st.sampled_from(segs))) if segs else ())
    Y = frozenset(data.draw(st.sets(st.sampled_from(segs))) if segs else ())
    cX = closure(t, X)
    assert X <= cX and closure(t, cX) == cX
    assert closure(t, X | Y) >= cX


@settings(max_examples=40, deadline=None)
@given(TREES)
def test_graded_by_cardinality(t):
    L = enumerate_biclosed(t)
    for a, b in L.covers:
        X, Y = L.elements[a], L.elements[b]
        assert X < Y and Y - X == {L.labels[(a, b)]}
    assert L.elements[L.bottom] == frozenset() and L.elements[L.top] == frozenset(tree_segments(t))


@settings(max_examples=40, deadline=None)
@given(TREES)
def test_projections(t):
    L = enumerate_biclosed(t)
    segs = frozenset(tree_segments(t))
    assert pi_down(t, ()) == frozenset() and pi_up(t, segs) == segs
    for X in L.elements:
        lo, hi = pi_down(t, X), pi_up(t, X)
        assert lo <= X <= hi
        assert is_biclosed(t, lo) and is_biclosed(t, hi)
        assert pi_down(t, hi) == lo and pi_up(t, lo) == hi
        assert pi_down(t, lo) == lo


@settings(max_examples=40, deadline=None)
@given(TREES)
def test_theta_is_a_congruence_with_interval_classes(t):
    L = enumerate_biclosed(t)
    theta = theta_congruence(t, L)
    assert validate_congruence(L, theta)
    classes = theta_classes(t, L)
    assert len(classes) == len(enumerate_facets(t))
    for cls in classes:
        lo, hi = min(cls, key=len), max(cls, key=len)
        assert all(lo <= X <= hi for X in cls)
        assert all(pi_down(t, X) == lo and pi_up(t, X) == hi for X in cls)
        assert len({eta(t, X) for X in cls}) == 1


@settings(max_examples=40, deadline=None)
@given(TREES)
def test_eta_and_phi(t):
    for f in enumerate_facets(t):
        X = phi(t, f)
        assert is_biclosed(t, X) and pi_down(t, X) == X
        assert eta(t, X) == f
    for X in enumerate_biclosed(t).elements:
        assert phi(t, eta(t, X)) == pi_down(t, X)


@settings(max_examples=40, deadline=None)
@given(TREES)
def test_eta_is_order_preserving(t):
    from flipgraph.ncc import flip_lattice

    L = enumerate_biclosed(t)
    FG = flip_lattice(t)
    pos = {f: i for i, f in enumerate(FG.elements)}
    for a in range(L.n):
        for b in range(L.n):
            if L.leq(a, b):
                assert FG.leq(pos[eta(t, L.elements[a])], pos[eta(t, L.elements[b])])


@settings(max_examples=40, deadline=None)
@given(TREES)
def test_join_formula(t):
    L = enumerate_biclosed(t)
    for x in range(L.n):
        for y in range(L.n):
            X, Y = L.elements[x], L.elements[y]
            for w in range(L.n):
                W = L.elements[w]
                if W <= X & Y:
                    J = join_by_formula(t, W, X, Y)
                    assert is_biclosed(t, J)
            assert join_by_formula(t, frozenset(), X, Y) == L.elements[L.join(x, y)]


@settings(max_examples=30, deadline=None)
@given(TREES, st.data())
def test_facial_intervals_are_products(t, data):
    L = enumerate_biclosed(t)
    W = data.draw(st.sampled_from(L.elements))
    x = L.index(W)
    singles = [L.labels[(x, y)] for y in range(L.n) if (x, y) in L.labels]
    fi = facial_interval(t, W, singles)
    assert fi.is_isomorphism()
    for i, c in enumerate(fi.block_closures):
        assert not c & W
        for d in fi.block_closures[i + 1 :]:
            assert not c & d
