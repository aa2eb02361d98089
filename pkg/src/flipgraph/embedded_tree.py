"""Trees embedded in a disk, described by rotation systems.

Neighbor lists are read counterclockwise.  A *corner* at an interior vertex
``v`` is the wedge swept counterclockwise from a neighbor ``a`` to the next
neighbor ``succ_v(a)``; internally it is keyed by the pair ``(v, a)``.

Faces are traced by walking along the tree and always leaving a vertex along
the counterclockwise successor of the edge we arrived on.  Such a walk keeps
the face on its right, starts at one leaf and stops at the next leaf in
counterclockwise order around the boundary circle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

VertexId = Hashable
FaceId = int


class TreeError(ValueError):
    """Base class for invalid tree descriptions."""


class NotATree(TreeError):
    pass


class InteriorDegreeTooSmall(TreeError):
    pass


class NoInteriorVertex(TreeError):
    pass


def vkey(v: VertexId) -> tuple:
    """Sort key mixing integer and string vertex names (integers first)."""
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


@dataclass(frozen=True, order=True)
class Corner:
    vertex: VertexId = field(compare=False)
    face: FaceId = field(compare=False)
    _key: tuple = field(default=(), repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_key", (vkey(self.vertex), self.face))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Corner) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)


class EmbeddedTree:
    """An immutable tree with a counterclockwise rotation system."""

    def __init__(self, rotation: Mapping[VertexId, Sequence[VertexId]]):
        rot = _complete_rotation(rotation)
        self._rot: dict[VertexId, tuple] = rot
        self.vertices: tuple = tuple(sorted(rot, key=vkey))
        self.leaves: tuple = tuple(v for v in self.vertices if len(rot[v]) == 1)
        self.interior_vertices: tuple = tuple(v for v in self.vertices if len(rot[v]) > 1)
        self._pos = {v: {n: i for i, n in enumerate(rot[v])} for v in rot}
        edges = set()
        for v, nbrs in rot.items():
            for n in nbrs:
                edges.add(edge_key(v, n))
        self.edges: tuple = tuple(sorted(edges, key=lambda e: (vkey(e[0]), vkey(e[1]))))
        interior = set(self.interior_vertices)
        self.interior_edges: tuple = tuple(
            e for e in self.edges if e[0] in interior and e[1] in interior
        )
        _validate(self)
        self._trace_faces()

    # rotation queries
    def neighbors(self, v: VertexId) -> tuple:
        return self._rot[v]

    def degree(self, v: VertexId) -> int:
        return len(self._rot[v])

    def is_leaf(self, v: VertexId) -> bool:
        return len(self._rot[v]) == 1

    def succ(self, v: VertexId, a: VertexId) -> VertexId:
        """Counterclockwise successor of neighbor ``a`` around ``v``."""
        nbrs = self._rot[v]
        return nbrs[(self._pos[v][a] + 1) % len(nbrs)]

    def pred(self, v: VertexId, a: VertexId) -> VertexId:
        nbrs = self._rot[v]
        return nbrs[(self._pos[v][a] - 1) % len(nbrs)]

    def adjacent(self, u: VertexId, v: VertexId) -> bool:
        return v in self._pos[u]

    # faces and corners
    def _trace_faces(self) -> None:
        walks = []
        for leaf in self.leaves:
            prev, cur = leaf, self._rot[leaf][0]
            path = [leaf]
            while not self.is_leaf(cur):
                path.append(cur)
                prev, cur = cur, self.succ(cur, prev)
            path.append(cur)
            walks.append(path)
        # walk from leaf l ends at the next leaf counterclockwise; the face
        # between them is named by the end leaf (its counterclockwise-most leaf)
        nxt = {w[0]: w[-1] for w in walks}
        start = min(self.leaves, key=vkey)
        order = [start]
        while True:
            n = nxt[order[-1]]
            if n == start:
                break
            order.append(n)
        if len(order) != len(self.leaves):
            raise NotATree("face walk does not visit every leaf")
        self.leaves_ccw: tuple = tuple(order)
        by_end = {w[-1]: w for w in walks}
        self._face_walk: dict[FaceId, tuple] = {}
        self._face_leaf: dict[FaceId, VertexId] = {}
        self._dir_face: dict[tuple, FaceId] = {}
        self._corner_face: dict[tuple, FaceId] = {}
        for i, leaf in enumerate(order):
            fid = i + 1
            w = by_end[leaf]
            self._face_walk[fid] = tuple(w)
            self._face_leaf[fid] = leaf
            for a, b in zip(w, w[1:]):
                self._dir_face[(a, b)] = fid
            for a, v in zip(w, w[1:-1]):
                self._corner_face[(v, a)] = fid
        self.faces: tuple = tuple(range(1, len(order) + 1))
        self._corner_key = {(v, f): k for k, f in self._corner_face.items() for v in [k[0]]}
        cs = [Corner(v, f) for (v, f) in self._corner_key]
        self._corners: tuple = tuple(sorted(cs))

    def corners(self) -> tuple:
        return self._corners

    def face_walk(self, f: FaceId) -> tuple:
        """Vertex sequence of the tree path bounding face ``f`` (leaf to leaf)."""
        return self._face_walk[f]

    def face_leaf(self, f: FaceId) -> VertexId:
        """The counterclockwise-most leaf on face ``f``."""
        return self._face_leaf[f]

    def face_of_leaf(self, leaf: VertexId) -> FaceId:
        for f, l in self._face_leaf.items():
            if l == leaf:
                return f
        raise KeyError(leaf)

    def face_right(self, u: VertexId, v: VertexId) -> FaceId:
        """Face on the right of the directed edge ``u -> v``."""
        return self._dir_face[(u, v)]

    def face_left(self, u: VertexId, v: VertexId) -> FaceId:
        return self._dir_face[(v, u)]

    def corner(self, v: VertexId, a: VertexId) -> Corner:
        """Corner at ``v`` swept counterclockwise from neighbor ``a``."""
        return Corner(v, self._corner_face[(v, a)])

    def corner_start(self, c: Corner) -> VertexId:
        """Neighbor ``a`` such that ``c`` is the wedge from ``a`` to ``succ(a)``."""
        return self._corner_key[(c.vertex, c.face)][1]

    def corner_edges(self, c: Corner) -> tuple:
        a = self.corner_start(c)
        return a, self.succ(c.vertex, a)

    def corners_at(self, v: VertexId) -> tuple:
        return tuple(self.corner(v, a) for a in self._rot[v])

    def corners_of_face(self, f: FaceId) -> tuple:
        w = self._face_walk[f]
        return tuple(Corner(v, f) for v in w[1:-1])

    def corner_between(self, v: VertexId, x: VertexId, y: VertexId) -> Corner:
        """The corner at ``v`` bounded by the edges towards ``x`` and ``y``."""
        if self.succ(v, x) == y:
            return self.corner(v, x)
        if self.succ(v, y) == x:
            return self.corner(v, y)
        raise ValueError(f"edges {v}-{x} and {v}-{y} are not consecutive at {v}")

    def corner_step(self, c: Corner, direction: str) -> Corner:
        a = self.corner_start(c)
        if direction == "ccw":
            return self.corner(c.vertex, self.succ(c.vertex, a))
        if direction == "cw":
            return self.corner(c.vertex, self.pred(c.vertex, a))
        raise ValueError(f"direction must be 'cw' or 'ccw', got {direction!r}")

    # misc
    def path(self, u: VertexId, v: VertexId) -> tuple:
        """The unique vertex path from ``u`` to ``v``."""
        parent = {u: None}
        stack = [u]
        while stack:
            x = stack.pop()
            if x == v:
                break
            for n in self._rot[x]:
                if n not in parent:
                    parent[n] = x
                    stack.append(n)
        out = [v]
        while out[-1] != u:
            out.append(parent[out[-1]])
        return tuple(reversed(out))

    def rotation(self) -> dict:
        return {v: list(self._rot[v]) for v in self.vertices}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EmbeddedTree) and self._canon_rot() == other._canon_rot()

    def __hash__(self) -> int:
        return hash(self._canon_rot())

    def _canon_rot(self) -> tuple:
        cached = self.__dict__.get("_canon")
        if cached is not None:
            return cached
        out = []
        for v in self.vertices:
            nbrs = list(self._rot[v])
            i = min(range(len(nbrs)), key=lambda k: vkey(nbrs[k]))
            out.append((v, tuple(nbrs[i:] + nbrs[:i])))
        self._canon = tuple(out)
        return self._canon

    def __repr__(self) -> str:
        return (
            f"EmbeddedTree({len(self.interior_vertices)} interior, "
            f"{len(self.leaves)} leaves)"
        )


def edge_key(u: VertexId, v: VertexId) -> tuple:
    return (u, v) if vkey(u) <= vkey(v) else (v, u)


def _complete_rotation(rotation: Mapping[VertexId, Sequence[VertexId]]) -> dict:
    rot: dict[VertexId, tuple] = {}
    for v, nbrs in rotation.items():
        nbrs = tuple(nbrs)
        if len(set(nbrs)) != len(nbrs):
            raise NotATree(f"vertex {v} lists a neighbor twice")
        if v in nbrs:
            raise NotATree(f"vertex {v} is adjacent to itself")
        rot[v] = nbrs
    for v, nbrs in list(rot.items()):
        for n in nbrs:
            if n not in rot:
                rot[n] = (v,)
            elif v not in rot[n]:
                raise NotATree(f"edge {v}-{n} is listed at {v} but not at {n}")
    return rot


def _validate(t: EmbeddedTree) -> None:
    rot = t._rot
    if not rot:
        raise NoInteriorVertex("empty tree")
    if len(t.edges) != len(rot) - 1:
        raise NotATree(f"{len(rot)} vertices but {len(t.edges)} edges")
    seen = {t.vertices[0]}
    stack = [t.vertices[0]]
    while stack:
        x = stack.pop()
        for n in rot[x]:
            if n not in seen:
                seen.add(n)
                stack.append(n)
    if len(seen) != len(rot):
        raise NotATree("graph is disconnected")
    for v in t.vertices:
        if len(rot[v]) == 2:
            raise InteriorDegreeTooSmall(f"vertex {v} has degree 2")
    if not t.interior_vertices:
        raise NoInteriorVertex("tree has no interior vertex")


def load_tree(rotation: Mapping[VertexId, Sequence[VertexId]] | Iterable) -> EmbeddedTree:
    """Build an :class:`EmbeddedTree` from a ``{vertex: ccw neighbors}`` mapping."""
    if not isinstance(rotation, Mapping):
        rotation = dict(rotation)
    return EmbeddedTree(rotation)


def corners(t: EmbeddedTree) -> tuple:
    return t.corners()


def corner_step(t: EmbeddedTree, c: Corner, direction: str) -> Corner:
    return t.corner_step(c, direction)
