"""Noncrossing arc sets, marked corners, flips and the oriented flip graph."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from .embedded_tree import Corner, EmbeddedTree, VertexId
from .lattice import FiniteLattice
from .seg_arc import (
    Arc,
    Segment,
    arcs_cross,
    enumerate_arcs,
    enumerate_segments,
    is_boundary_arc,
    is_subsegment,
    regions,
    traversed_corners,
)

FORWARD = "forward"
BACKWARD = "backward"


class BoundaryArcNotFlippable(ValueError):
    pass


class InconsistentOrientation(AssertionError):
    pass


@lru_cache(maxsize=64)
def tree_arcs(t: EmbeddedTree) -> tuple:
    return tuple(enumerate_arcs(t))


@lru_cache(maxsize=64)
def tree_segments(t: EmbeddedTree) -> tuple:
    return tuple(enumerate_segments(t))


@lru_cache(maxsize=64)
def _arc_info(t: EmbeddedTree) -> dict:
    """Per arc: its two regions, traversed corners and boundary flag."""
    info = {}
    for p in tree_arcs(t):
        info[p] = (regions(t, p), traversed_corners(t, p.path), is_boundary_arc(t, p))
    return info


def arc_regions(t: EmbeddedTree, p: Arc) -> tuple:
    return _arc_info(t)[p][0]


def arc_corners(t: EmbeddedTree, p: Arc) -> tuple:
    return _arc_info(t)[p][1]


def arc_is_boundary(t: EmbeddedTree, p: Arc) -> bool:
    return _arc_info(t)[p][2]


def boundary_arcs(t: EmbeddedTree) -> tuple:
    return tuple(p for p in tree_arcs(t) if arc_is_boundary(t, p))


@lru_cache(maxsize=64)
def _crossing_table(t: EmbeddedTree) -> dict:
    arcs = tree_arcs(t)
    table = {p: set() for p in arcs}
    for i, p in enumerate(arcs):
        for q in arcs[i + 1 :]:
            if arcs_cross(t, p, q):
                table[p].add(q)
                table[q].add(p)
    return {p: frozenset(s) for p, s in table.items()}


def crossing_arcs(t: EmbeddedTree, p: Arc) -> frozenset:
    return _crossing_table(t)[p]


def _region_containing(t: EmbeddedTree, p: Arc, face: int) -> frozenset:
    r0, r1 = arc_regions(t, p)
    return r0 if face in r0 else r1


def compute_marks(t: EmbeddedTree, arcs: Iterable[Arc]) -> dict:
    """Map each covered corner to its maximal arc under region inclusion."""
    best: dict = {}
    for p in arcs:
        for c in arc_corners(t, p):
            size = len(_region_containing(t, p, c.face))
            cur = best.get(c)
            if cur is None or size > cur[0]:
                best[c] = (size, p)
    return {c: p for c, (_, p) in best.items()}


@dataclass(frozen=True)
class Facet:
    tree: EmbeddedTree = field(repr=False, compare=False, hash=False)
    arcs: frozenset
    marks: dict = field(repr=False, compare=False, hash=False)

    @property
    def nonboundary_arcs(self) -> tuple:
        return tuple(sorted(p for p in self.arcs if not arc_is_boundary(self.tree, p)))

    def marked_corners(self, p: Arc) -> tuple:
        return tuple(sorted(c for c, q in self.marks.items() if q == p))

    def __repr__(self) -> str:
        return "Facet{" + ", ".join(map(repr, self.nonboundary_arcs)) + "}"


def make_facet(t: EmbeddedTree, arcs: Iterable[Arc]) -> Facet:
    arcs = frozenset(arcs)
    return Facet(t, arcs, compute_marks(t, arcs))


def is_noncrossing(t: EmbeddedTree, arcs: Iterable[Arc]) -> bool:
    arcs = list(arcs)
    for i, p in enumerate(arcs):
        bad = crossing_arcs(t, p)
        if any(q in bad for q in arcs[i + 1 :]):
            return False
    return True


def is_facet(t: EmbeddedTree, arcs: Iterable[Arc]) -> bool:
    arcs = frozenset(arcs)
    if not is_noncrossing(t, arcs):
        return False
    for q in tree_arcs(t):
        if q not in arcs and not (crossing_arcs(t, q) & arcs):
            return False
    return True


def marked_arc(f: Facet, c: Corner) -> Arc | None:
    return f.marks.get(c)


def facet_size(t: EmbeddedTree) -> int:
    """Number of nonboundary arcs in every facet."""
    ncorners = sum(t.degree(v) for v in t.interior_vertices)
    return (ncorners - len(t.faces)) // 2


# eta: the facet attached to a set of segments


def eta_arc(t: EmbeddedTree, c: Corner, contains: Callable[[VertexId, VertexId], bool]) -> Arc:
    """Arc through corner ``c`` which, read away from ``c``'s vertex ``v``,
    turns left at ``u`` exactly when ``contains(v, u)`` holds."""
    v = c.vertex
    a, b = t.corner_edges(c)

    def run(first: VertexId) -> list:
        out = [first]
        w, u = v, first
        while not t.is_leaf(u):
            u, w = (t.pred(u, w) if contains(v, u) else t.succ(u, w)), u
            out.append(u)
        return out

    side_a, side_b = run(a), run(b)
    return Arc(tuple(side_a[::-1]) + (v,) + tuple(side_b))


def eta_from_segments(t: EmbeddedTree, segments: Iterable[Segment]) -> Facet:
    pairs = set()
    for s in segments:
        pairs.add(s.endpoints)
        pairs.add(s.endpoints[::-1])

    def contains(v, u):
        return (v, u) in pairs

    arcs = {eta_arc(t, c, contains) for c in t.corners()}
    arcs.update(boundary_arcs(t))
    return make_facet(t, arcs)


# flips


def flip_label(f: Facet, p: Arc) -> Segment:
    cs = f.marked_corners(p)
    if len(cs) != 2:
        raise BoundaryArcNotFlippable(f"arc {p} is marked at {len(cs)} corner(s)")
    v1, v2 = cs[0].vertex, cs[1].vertex
    path = p.path
    i, j = path.index(v1), path.index(v2)
    if i > j:
        i, j = j, i
    return Segment(path[i : j + 1])


def _other_corner(t: EmbeddedTree, c: Corner, towards: VertexId) -> Corner:
    """The corner at ``c.vertex`` sharing with ``c`` the edge towards ``towards``."""
    a, b = t.corner_edges(c)
    if towards == a:
        return t.corner_step(c, "cw")
    if towards == b:
        return t.corner_step(c, "ccw")
    raise ValueError(f"corner {c} does not contain the edge to {towards}")


def _tail(path: tuple, v: VertexId, avoid: VertexId) -> tuple:
    """Part of ``path`` beyond ``v``, on the side not containing ``avoid``."""
    i = path.index(v)
    if i + 1 < len(path) and path[i + 1] == avoid:
        return tuple(reversed(path[:i]))
    return tuple(path[i + 1 :])


def _flip_parts(f: Facet, p: Arc) -> tuple:
    t = f.tree
    if arc_is_boundary(t, p):
        raise BoundaryArcNotFlippable(f"{p} is a boundary arc")
    cs = f.marked_corners(p)
    if len(cs) != 2:
        raise BoundaryArcNotFlippable(f"arc {p} is marked at {len(cs)} corner(s)")
    c1, c2 = cs
    v1, v2 = c1.vertex, c2.vertex
    s = t.path(v1, v2)
    g1 = _other_corner(t, c1, s[1])
    g2 = _other_corner(t, c2, s[-2])
    rest = f.arcs - {p}
    marks = compute_marks(t, rest)
    p1, p2 = marks[g2], marks[g1]
    head = _tail(p2.path, v1, s[1])
    tail = _tail(p1.path, v2, s[-2])
    q = Arc(tuple(reversed(head)) + s + tail)
    return q, (c1, c2), (g1, g2), Segment(s)


def flip(f: Facet, p: Arc) -> tuple:
    """Exchange the nonboundary arc ``p``; returns the new facet and the label."""
    q, _, _, label = _flip_parts(f, p)
    return make_facet(f.tree, (f.arcs - {p}) | {q}), label


def flip_direction(f: Facet, p: Arc) -> str:
    t = f.tree
    q, old, new, _ = _flip_parts(f, p)
    g = make_facet(t, (f.arcs - {p}) | {q})
    new_marks = tuple(sorted(g.marked_corners(q)))
    if tuple(sorted(new)) != new_marks:
        raise InconsistentOrientation(f"flip of {p} does not mark the expected corners")
    steps = [t.corner_step(c, "cw") == n for c, n in zip(old, new)]
    if steps[0] != steps[1]:
        raise InconsistentOrientation(f"flip of {p} is clockwise at only one end")
    return FORWARD if steps[0] else BACKWARD


# the oriented flip graph


@dataclass(frozen=True)
class OrientedFlipGraph:
    tree: EmbeddedTree = field(repr=False)
    facets: tuple
    edges: tuple  # (source index, target index, Segment)

    def index(self, f: Facet) -> int:
        return self._index()[f.arcs]

    def _index(self) -> dict:
        cache = self.__dict__.get("_idx")
        if cache is None:
            cache = {f.arcs: i for i, f in enumerate(self.facets)}
            object.__setattr__(self, "_idx", cache)
        return cache

    def source(self) -> int:
        targets = {b for _, b, _ in self.edges}
        (src,) = [i for i in range(len(self.facets)) if i not in targets]
        return src

    def sink(self) -> int:
        sources = {a for a, _, _ in self.edges}
        (snk,) = [i for i in range(len(self.facets)) if i not in sources]
        return snk

    def lower_labels(self, i: int) -> frozenset:
        return frozenset(s for a, b, s in self.edges if b == i)

    def upper_labels(self, i: int) -> frozenset:
        return frozenset(s for a, b, s in self.edges if a == i)


def _facet_key(f: Facet) -> tuple:
    return tuple(p.sort_key() for p in f.nonboundary_arcs)


@lru_cache(maxsize=32)
def oriented_flip_graph(t: EmbeddedTree) -> OrientedFlipGraph:
    start = eta_from_segments(t, ())
    seen = {start.arcs: start}
    order = [start]
    raw_edges = []
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for p in f.nonboundary_arcs:
            g, label = flip(f, p)
            d = flip_direction(f, p)
            if g.arcs not in seen:
                seen[g.arcs] = g
                order.append(g)
                queue.append(g)
            if d == FORWARD:
                raw_edges.append((f.arcs, g.arcs, label))
    # number facets along a linear extension (by the number of forward steps
    # from the source), ties broken by the sorted arc list
    preds: dict = {a: [] for a in seen}
    succs: dict = {a: [] for a in seen}
    for a, b, _ in raw_edges:
        succs[a].append(b)
        preds[b].append(a)
    depth = {}
    indeg = {a: len(preds[a]) for a in seen}
    ready = [a for a in seen if indeg[a] == 0]
    for a in ready:
        depth[a] = 0
    topo = []
    while ready:
        a = ready.pop()
        topo.append(a)
        for b in succs[a]:
            depth[b] = max(depth.get(b, 0), depth[a] + 1)
            indeg[b] -= 1
            if indeg[b] == 0:
                ready.append(b)
    if len(topo) != len(seen):
        raise InconsistentOrientation("oriented flip graph has a cycle")
    facets = sorted(seen.values(), key=lambda f: (depth[f.arcs], _facet_key(f)))
    idx = {f.arcs: i for i, f in enumerate(facets)}
    edges = sorted(
        (idx[a], idx[b], s) for a, b, s in raw_edges
    )
    return OrientedFlipGraph(t, tuple(facets), tuple(edges))


@lru_cache(maxsize=32)
def flip_lattice(t: EmbeddedTree) -> FiniteLattice:
    """The oriented flip graph as a lattice with covers labeled by flipped segments."""
    g = oriented_flip_graph(t)
    return FiniteLattice(
        list(g.facets),
        [(a, b) for a, b, _ in g.edges],
        labels={(a, b): s for a, b, s in g.edges},
        label_leq=is_subsegment,
    )


def enumerate_facets(t: EmbeddedTree) -> list:
    return list(oriented_flip_graph(t).facets)
