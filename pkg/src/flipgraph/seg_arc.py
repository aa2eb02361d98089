"""Segments, arcs, turns and crossing predicates.

A path may pass through an interior vertex ``v`` only between two edges that
are consecutive in the rotation at ``v``.  Arriving at ``v`` from ``x`` and
leaving towards ``y``:

* ``y == succ_v(x)``: the path keeps the corner ``(v, x)`` on its right and
  turns **right**;
* ``y == pred_v(x)``: the corner ``(v, y)`` is on its left and it turns
  **left**.

At a degree-3 vertex both continuations are legal, so every path is allowed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .embedded_tree import Corner, EmbeddedTree, VertexId, edge_key, vkey

LEFT = "left"
RIGHT = "right"
RED = "red"
GREEN = "green"


class NotACorner(ValueError):
    """Two consecutive edges of a path do not bound a common corner."""


class NotASegment(ValueError):
    pass


def _canon(path: Sequence[VertexId]) -> tuple:
    path = tuple(path)
    if vkey(path[-1]) < vkey(path[0]):
        path = path[::-1]
    return path


@dataclass(frozen=True)
class Segment:
    """A path between interior vertices, stored with its smaller endpoint first."""

    path: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "path", _canon(self.path))

    @property
    def endpoints(self) -> tuple:
        return self.path[0], self.path[-1]

    @property
    def edges(self) -> tuple:
        return tuple(edge_key(a, b) for a, b in zip(self.path, self.path[1:]))

    def __len__(self) -> int:
        return len(self.path) - 1

    def sort_key(self) -> tuple:
        return (vkey(self.path[0]), vkey(self.path[-1]))

    def __lt__(self, other: "Segment") -> bool:
        return self.sort_key() < other.sort_key()

    def label(self) -> str:
        return f"{self.path[0]}-{self.path[-1]}"

    def __repr__(self) -> str:
        return f"[{','.join(map(str, self.path))}]"


@dataclass(frozen=True)
class Arc:
    """A path between two distinct leaves through interior vertices."""

    path: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "path", _canon(self.path))

    @property
    def endpoints(self) -> tuple:
        return self.path[0], self.path[-1]

    @property
    def edges(self) -> tuple:
        return tuple(edge_key(a, b) for a, b in zip(self.path, self.path[1:]))

    def sort_key(self) -> tuple:
        return tuple(vkey(v) for v in self.path)

    def __lt__(self, other: "Arc") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"({','.join(map(str, self.path))})"


@dataclass(frozen=True)
class ColoredSegment:
    segment: Segment
    color: str
    endpoints: tuple  # (corner at path[0], corner at path[-1])

    def __repr__(self) -> str:
        return f"{self.color}{self.segment!r}"


def is_subsegment(a: Segment, b: Segment) -> bool:
    """Subsegment order, used to order cover labels."""
    return set(a.path) <= set(b.path)


def colored(t: EmbeddedTree, s: Segment, color: str) -> ColoredSegment:
    """Attach endpoint corners to ``s`` by the flag rule for ``color``."""
    if color not in (RED, GREEN):
        raise ValueError(f"color must be 'red' or 'green', got {color!r}")
    p = s.path
    return ColoredSegment(s, color, (flag_corner(t, p[0], p[1], color), flag_corner(t, p[-1], p[-2], color)))


def flag_corner(t: EmbeddedTree, v: VertexId, n: VertexId, color: str) -> Corner:
    """Corner at endpoint ``v`` for a curve leaving along the edge towards ``n``.

    Green takes the face on the left of ``v -> n``, red the face on its right.
    """
    if color == GREEN:
        return t.corner(v, n)
    return t.corner(v, t.pred(v, n))


# paths


def step_ok(t: EmbeddedTree, x: VertexId, v: VertexId, y: VertexId) -> bool:
    return y == t.succ(v, x) or y == t.pred(v, x)


def is_admissible_path(t: EmbeddedTree, path: Sequence[VertexId]) -> bool:
    if len(path) < 2 or len(set(path)) != len(path):
        return False
    for a, b in zip(path, path[1:]):
        if not t.adjacent(a, b):
            return False
    for x, v, y in zip(path, path[1:], path[2:]):
        if t.is_leaf(v) or not step_ok(t, x, v, y):
            return False
    return True


def _extensions(t: EmbeddedTree, path: list) -> Iterable[list]:
    """All admissible one-step extensions of ``path`` beyond its last vertex."""
    x, v = path[-2], path[-1]
    nxt = {t.succ(v, x), t.pred(v, x)}
    for y in sorted(nxt, key=vkey):
        yield path + [y]


def enumerate_segments(t: EmbeddedTree) -> list:
    interior = set(t.interior_vertices)
    out: set = set()
    for u in t.interior_vertices:
        stack = [[u, n] for n in t.neighbors(u) if n in interior]
        while stack:
            p = stack.pop()
            out.add(Segment(tuple(p)))
            for q in _extensions(t, p):
                if q[-1] in interior:
                    stack.append(q)
    return sorted(out)


def enumerate_arcs(t: EmbeddedTree) -> list:
    out: set = set()
    for leaf in t.leaves:
        stack = [[leaf, t.neighbors(leaf)[0]]]
        while stack:
            p = stack.pop()
            if t.is_leaf(p[-1]):
                out.add(Arc(tuple(p)))
                continue
            stack.extend(_extensions(t, p))
    return sorted(out)


def segment(t: EmbeddedTree, u: VertexId, v: VertexId) -> Segment:
    """The segment with endpoints ``u`` and ``v``; raises if it is not admissible."""
    p = t.path(u, v)
    if len(p) < 2 or any(t.is_leaf(x) for x in p) or not is_admissible_path(t, p):
        raise NotASegment(f"[{u},{v}] is not a segment")
    return Segment(p)


def try_segment(t: EmbeddedTree, u: VertexId, v: VertexId) -> Segment | None:
    try:
        return segment(t, u, v)
    except NotASegment:
        return None


# turns


def turn(t: EmbeddedTree, path: Sequence[VertexId], i: int) -> str:
    if not 0 < i < len(path) - 1:
        raise IndexError("turns are only defined at inner vertices of a path")
    x, v, y = path[i - 1], path[i], path[i + 1]
    if y == t.succ(v, x):
        return RIGHT
    if y == t.pred(v, x):
        return LEFT
    raise NotACorner(f"edges {v}-{x} and {v}-{y} do not bound a corner")


def traversed_corner(t: EmbeddedTree, path: Sequence[VertexId], i: int) -> Corner:
    x, v, y = path[i - 1], path[i], path[i + 1]
    if y == t.succ(v, x):
        return t.corner(v, x)
    if y == t.pred(v, x):
        return t.corner(v, y)
    raise NotACorner(f"edges {v}-{x} and {v}-{y} do not bound a corner")


def traversed_corners(t: EmbeddedTree, path: Sequence[VertexId]) -> tuple:
    return tuple(traversed_corner(t, path, i) for i in range(1, len(path) - 1))


def compose(t: EmbeddedTree, s1: Segment, s2: Segment) -> Segment | None:
    a, b = s1.path, s2.path
    shared = set(a) & set(b)
    if len(shared) != 1:
        return None
    (m,) = shared
    if m not in (a[0], a[-1]) or m not in (b[0], b[-1]):
        return None
    if a[-1] != m:
        a = a[::-1]
    if b[0] != m:
        b = b[::-1]
    p = a + b[1:]
    if not is_admissible_path(t, p):
        return None
    return Segment(p)


def _turn_subsets(t: EmbeddedTree, path: Sequence[VertexId], lo: int, hi: int, start: str, end: str) -> set:
    """Subpaths ``path[i..j]`` (``lo <= i < j <= hi``) turning ``start`` at
    ``path[i]`` unless ``i == 0`` and ``end`` at ``path[j]`` unless ``j`` is last."""
    n = len(path) - 1
    turns = {i: turn(t, path, i) for i in range(1, n)}
    out = set()
    for i in range(lo, hi):
        if i > 0 and turns[i] != start:
            continue
        for j in range(i + 1, hi + 1):
            if j < n and turns[j] != end:
                continue
            out.add(Segment(tuple(path[i : j + 1])))
    return out


def cs_ks(t: EmbeddedTree, s: Segment) -> tuple:
    p = s.path
    n = len(p) - 1
    return (
        frozenset(_turn_subsets(t, p, 0, n, RIGHT, LEFT)),
        frozenset(_turn_subsets(t, p, 0, n, LEFT, RIGHT)),
    )


def cp_kp(t: EmbeddedTree, p: Arc, orientation: int = 1) -> tuple:
    """``C_p`` and ``K_p`` of an arc; ``orientation=-1`` reads the arc backwards."""
    path = p.path if orientation >= 0 else p.path[::-1]
    n = len(path) - 1
    return (
        frozenset(_turn_subsets(t, path, 1, n - 1, RIGHT, LEFT)),
        frozenset(_turn_subsets(t, path, 1, n - 1, LEFT, RIGHT)),
    )


# regions and arc crossings


def _face_components(t: EmbeddedTree, cut_edges: set) -> list:
    parent = {f: f for f in t.faces}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in t.edges:
        if (u, v) in cut_edges:
            continue
        a, b = find(t.face_left(u, v)), find(t.face_right(u, v))
        if a != b:
            parent[a] = b
    comps: dict = {}
    for f in t.faces:
        comps.setdefault(find(f), set()).add(f)
    return sorted((frozenset(c) for c in comps.values()), key=min)


def regions(t: EmbeddedTree, p: Arc) -> tuple:
    """The two blocks of faces on either side of ``p``, the one holding face 1 first."""
    comps = _face_components(t, set(p.edges))
    if len(comps) != 2:
        raise AssertionError(f"arc {p} cuts the faces into {len(comps)} parts")
    return tuple(comps)


def region_of(t: EmbeddedTree, p: Arc, f: int) -> frozenset:
    r0, r1 = regions(t, p)
    return r0 if f in r0 else r1


def is_boundary_arc(t: EmbeddedTree, p: Arc) -> bool:
    return min(len(r) for r in regions(t, p)) == 1


def arcs_cross(t: EmbeddedTree, p: Arc, q: Arc) -> bool:
    interior = set(t.interior_vertices)
    shared = set(p.edges) & set(q.edges)
    if not any(u in interior and v in interior for u, v in shared):
        return False
    rp, rq = regions(t, p), regions(t, q)
    return all(a & b for a, b in product(rp, rq))


# colored segments

# positions of a curve at the two ends of a common segment t = [a, b],
# oriented from a to b; the numbering is a cyclic order around t
# (a curve passing through a corner stays outside an endpoint in that corner)
_RA, _SR, _SL, _LA = 0, 1, 2, 3
_LB, _EL, _ER, _RB = 4, 5, 6, 7
_SHARED = {(_SL, _LA), (_RA, _SR), (_LB, _EL), (_ER, _RB)}


def _common_path(t: EmbeddedTree, p: tuple, q: tuple) -> tuple:
    """The common subpath of two tree paths, ordered along ``p``."""
    qs = set(q)
    return tuple(v for v in p if v in qs)


def _states(t: EmbeddedTree, cs: ColoredSegment, common: tuple) -> tuple:
    a, b = common[0], common[-1]
    p = cs.segment.path
    if p.index(a) > p.index(b):
        p = p[::-1]
    green = cs.color == GREEN
    i, j = p.index(a), p.index(b)
    if i == 0:
        sa = _SL if green else _SR
    else:
        sa = _LA if turn(t, p, i) == LEFT else _RA
    if j == len(p) - 1:
        sb = _ER if green else _EL
    else:
        sb = _LB if turn(t, p, j) == LEFT else _RB
    return sa, sb


def _chords_cross(p: tuple, q: tuple) -> bool:
    (pa, pb), (qa, qb) = p, q
    return (qa < pa and qb < pb) or (qa > pa and qb > pb)


def _noncrossing_case(g: tuple, h: tuple) -> bool:
    """The noncrossing cases of the case analysis for states ``g``, ``h``."""
    ga, gb = g
    ha, hb = h
    starts_g, starts_h = ga in (_SL, _SR), ha in (_SL, _SR)
    ends_g, ends_h = gb in (_ER, _EL), hb in (_ER, _EL)
    # both pass through the common segment and one turns the same way twice
    for x in (g, h):
        if x in ((_LA, _LB), (_RA, _RB)):
            return True
    # one starts at a, the other ends at b, with opposite turns
    for (xa, xb), (ya, yb), sx, ey in ((g, h, starts_g, ends_h), (h, g, starts_h, ends_g)):
        if sx and ey and ((xb == _LB and ya == _RA) or (xb == _RB and ya == _LA)):
            return True
    # both start at a; the one leaving to the left turns left or the other turns right
    if starts_g and starts_h:
        left, other = (g, h) if ga == _SL else (h, g)
        if left[0] == _SL and (left[1] == _LB or other[1] == _RB):
            return True
    return False


_REVERSE = {_SL: _ER, _SR: _EL, _LA: _RB, _RA: _LB, _ER: _SL, _EL: _SR, _LB: _RA, _RB: _LA}


def _reversed(x: tuple) -> tuple:
    return (_REVERSE[x[1]], _REVERSE[x[0]])


def colored_cross(t: EmbeddedTree, a: ColoredSegment, b: ColoredSegment) -> bool:
    if set(a.endpoints) & set(b.endpoints):
        return True
    common = _common_path(t, a.segment.path, b.segment.path)
    if len(common) < 2:
        # a single shared vertex: the curves can only meet if one of them
        # ends in the corner the other passes through
        if not common:
            return False
        v = common[0]
        for x, y in ((a, b), (b, a)):
            p = y.segment.path
            i = p.index(v)
            if 0 < i < len(p) - 1 and traversed_corner(t, p, i) in x.endpoints:
                return True
        return False
    g, h = _states(t, a, common), _states(t, b, common)
    shared = {(min(x, y), max(x, y)) for x, y in ((g[0], h[0]), (g[1], h[1]))} & _SHARED
    if shared:
        return _chords_cross(g, h)
    return not (_noncrossing_case(g, h) or _noncrossing_case(_reversed(g), _reversed(h)))


def segments_cross(t: EmbeddedTree, s1: Segment, c1: str, s2: Segment, c2: str) -> bool:
    return colored_cross(t, colored(t, s1, c1), colored(t, s2, c2))
