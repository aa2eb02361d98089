"""Tree files, JSON and DOT output, polygon duality and the tree corpus.

Tree text format: one line per vertex, ``v: n1 n2 ... nk``, neighbors listed
counterclockwise.  Leaves may be omitted.  ``#`` starts a comment.  The JSON
form is an object mapping vertex names to neighbor lists, optionally wrapped
as ``{"rotation": {...}}``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from importlib import resources
from itertools import permutations
from typing import Any, Iterable

import networkx as nx

from .embedded_tree import EmbeddedTree, TreeError, VertexId, vkey
from .lattice import FiniteLattice
from .ncc import Facet, arc_is_boundary
from .seg_arc import Arc, Segment


class TreeParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


# parsing and formatting


def _vertex(token: str) -> VertexId:
    token = token.strip()
    try:
        return int(token)
    except ValueError:
        return token


def parse_tree_text(text: str) -> EmbeddedTree:
    rot: dict = {}
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise TreeParseError("expected 'vertex: neighbors ...'", no)
        head, tail = line.split(":", 1)
        if not head.strip():
            raise TreeParseError("missing vertex name", no)
        v = _vertex(head)
        if v in rot:
            raise TreeParseError(f"vertex {v} listed twice", no)
        nbrs = [_vertex(x) for x in tail.replace(",", " ").split()]
        if not nbrs:
            raise TreeParseError(f"vertex {v} has no neighbors", no)
        rot[v] = nbrs
    if not rot:
        raise TreeParseError("no vertices")
    try:
        return EmbeddedTree(rot)
    except TreeError as exc:
        raise TreeParseError(str(exc)) from exc


def parse_tree_json(text: str) -> EmbeddedTree:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TreeParseError(exc.msg, exc.lineno) from exc
    if isinstance(data, dict) and "rotation" in data:
        data = data["rotation"]
    if not isinstance(data, dict):
        raise TreeParseError("expected an object mapping vertices to neighbor lists")
    rot = {_vertex(str(k)): [_vertex(str(x)) for x in v] for k, v in data.items()}
    try:
        return EmbeddedTree(rot)
    except TreeError as exc:
        raise TreeParseError(str(exc)) from exc


def read_tree(path: str, as_json: bool | None = None) -> EmbeddedTree:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if as_json is None:
        as_json = path.endswith(".json")
    return parse_tree_json(text) if as_json else parse_tree_text(text)


def format_tree(t: EmbeddedTree, comment: str | None = None) -> str:
    lines = [f"# {c}" for c in (comment or "").splitlines()]
    for v in t.interior_vertices:
        lines.append(f"{v}: " + " ".join(map(str, t.neighbors(v))))
    return "\n".join(lines) + "\n"


def tree_json(t: EmbeddedTree) -> dict:
    return {str(v): list(t.neighbors(v)) for v in t.interior_vertices}


# JSON values


def to_jsonable(x: Any) -> Any:
    """Plain data for segments, arcs, facets, partitions and collections."""
    from .ncp import TreePartition
    from .tiling import CMatrix, SmcCollection, StringModule

    if isinstance(x, Segment):
        return list(x.path)
    if isinstance(x, Arc):
        return list(x.path)
    if isinstance(x, Facet):
        return [list(p.path) for p in x.nonboundary_arcs]
    if isinstance(x, TreePartition):
        return [list(b) for b in x.blocks]
    if isinstance(x, StringModule):
        return list(x.segment.path)
    if isinstance(x, SmcCollection):
        return [{"segment": list(s.path), "degree": d} for s, d in x.objects]
    if isinstance(x, CMatrix):
        return x.as_lists()
    if isinstance(x, (frozenset, set)):
        items = [to_jsonable(y) for y in x]
        return sorted(items, key=_json_sort_key)
    if isinstance(x, (list, tuple)):
        return [to_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    return x


def _json_sort_key(x: Any) -> str:
    return json.dumps(x, sort_keys=True)


def dumps(x: Any) -> str:
    return json.dumps(to_jsonable(x), sort_keys=True, indent=2)


def lattice_json(L: FiniteLattice) -> dict:
    out = {"elements": [to_jsonable(e) for e in L.elements], "covers": [list(c) for c in L.covers]}
    if L.labels is not None:
        out["labels"] = [[a, b, to_jsonable(L.labels[(a, b)])] for a, b in L.covers]
    return out


# DOT


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dot_label(x: Any) -> str:
    if isinstance(x, Segment):
        return x.label()
    if isinstance(x, Facet):
        return " ".join("(" + ",".join(map(str, p.path)) + ")" for p in x.nonboundary_arcs) or "{}"
    return repr(x)


def lattice_dot(L: FiniteLattice, name: str = "G", node_label=None, edge_label=None) -> str:
    """Hasse diagram as a DOT digraph with nodes numbered in a linear extension."""
    node_label = node_label or _dot_label
    edge_label = edge_label or _dot_label
    lines = [f"digraph {name} {{"]
    for i, e in enumerate(L.elements):
        lines.append(f"  n{i} [label={_quote(node_label(e))}];")
    for a, b in L.covers:
        attr = ""
        if L.labels is not None and (a, b) in L.labels:
            attr = f" [label={_quote(edge_label(L.labels[(a, b)]))}]"
        lines.append(f"  n{a} -> n{b}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# polygonal subdivisions


def _pair(a, b) -> frozenset:
    return frozenset((a, b))


@dataclass(frozen=True)
class PolygonSubdivision:
    """A convex polygon with noncrossing diagonals.

    ``polygon_vertices`` lists the vertices in clockwise order.
    """

    polygon_vertices: tuple
    diagonals: frozenset  # of two-element frozensets

    @property
    def boundary_edges(self) -> frozenset:
        vs = self.polygon_vertices
        return frozenset(_pair(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def _position(self) -> dict:
        return {v: i for i, v in enumerate(self.polygon_vertices)}

    def is_valid(self) -> bool:
        pos = self._position()
        ds = list(self.diagonals)
        for d in ds:
            if len(d) != 2 or not d <= set(pos) or d in self.boundary_edges:
                return False
        for i, d in enumerate(ds):
            for e in ds[i + 1 :]:
                if diagonals_cross(pos, d, e):
                    return False
        return True

    def sorted_diagonals(self) -> list:
        return sorted(sorted(d, key=vkey) for d in self.diagonals)

    def cells(self) -> list:
        """Polygons of the subdivision, each as a counterclockwise vertex cycle."""
        ccw = list(reversed(self.polygon_vertices))
        k = len(ccw)
        pos = {v: i for i, v in enumerate(ccw)}
        nbrs: dict = {v: set() for v in ccw}
        for d in list(self.diagonals) + list(self.boundary_edges):
            a, b = tuple(d)
            nbrs[a].add(b)
            nbrs[b].add(a)
        darts = [(ccw[i], ccw[(i + 1) % k]) for i in range(k)]
        for d in self.diagonals:
            a, b = tuple(d)
            darts += [(a, b), (b, a)]
        used, cells = set(), []
        for dart in sorted(darts, key=lambda d: (pos[d[0]], pos[d[1]])):
            if dart in used:
                continue
            cyc = []
            a, b = dart
            while (a, b) not in used:
                used.add((a, b))
                cyc.append(a)
                off_a = (pos[a] - pos[b]) % k
                c = max((x for x in nbrs[b] if 0 < (pos[x] - pos[b]) % k < off_a), key=lambda x: (pos[x] - pos[b]) % k)
                a, b = b, c
            cells.append(tuple(cyc))
        return cells


def diagonals_cross(pos: dict, d: frozenset, e: frozenset) -> bool:
    """Interleaving test for chords of a convex polygon."""
    if d & e:
        return False
    a, b = sorted(pos[x] for x in d)
    c, f = (pos[x] for x in e)
    return (a < c < b) != (a < f < b)


def _tree_polygon_vertices(t: EmbeddedTree) -> tuple:
    """Faces in clockwise order starting from face 1."""
    fs = list(t.faces)
    return tuple([fs[0]] + fs[1:][::-1])


def tree_to_subdivision(t: EmbeddedTree) -> PolygonSubdivision:
    """One polygon vertex per face, one diagonal per interior edge."""
    diags = frozenset(_pair(t.face_left(u, v), t.face_right(u, v)) for u, v in t.interior_edges)
    return PolygonSubdivision(_tree_polygon_vertices(t), diags)


def facet_to_subdivision(t: EmbeddedTree, f: Facet) -> PolygonSubdivision:
    """Diagonals from the nonboundary arcs, each leaf standing for the face it is counterclockwise-most in."""
    diags = set()
    for p in f.arcs:
        if arc_is_boundary(t, p):
            continue
        a, b = p.endpoints
        diags.add(_pair(t.face_of_leaf(a), t.face_of_leaf(b)))
    return PolygonSubdivision(_tree_polygon_vertices(t), frozenset(diags))


def rotate(sub: PolygonSubdivision, steps: int = 1) -> PolygonSubdivision:
    """Move every diagonal endpoint ``steps`` vertices clockwise."""
    vs = sub.polygon_vertices
    k = len(vs)
    pos = {v: i for i, v in enumerate(vs)}
    shift = {v: vs[(pos[v] + steps) % k] for v in vs}
    return PolygonSubdivision(vs, frozenset(frozenset(shift[x] for x in d) for d in sub.diagonals))


def subdivision_to_tree(sub: PolygonSubdivision) -> EmbeddedTree:
    """Dual tree: a vertex per cell, a leaf per polygon side."""
    cells = sub.cells()
    names = {c: f"c{i}" for i, c in enumerate(cells)}
    side_of: dict = {}
    for c in cells:
        for i in range(len(c)):
            side_of.setdefault(_pair(c[i], c[(i + 1) % len(c)]), []).append(c)
    boundary = sub.boundary_edges
    leaf_names = {}
    for e in sorted(boundary, key=lambda e: sorted(map(str, e))):
        leaf_names[e] = f"l{len(leaf_names)}"
    rot: dict = {}
    for c in cells:
        nb = []
        for i in range(len(c)):
            e = _pair(c[i], c[(i + 1) % len(c)])
            if e in boundary:
                nb.append(leaf_names[e])
            else:
                (other,) = [d for d in side_of[e] if d != c]
                nb.append(names[other])
        rot[names[c]] = nb
    return EmbeddedTree(rot)


# canonical forms and the corpus


def canonical_form(t: EmbeddedTree) -> str:
    """Code of the tree up to orientation-preserving embedded isomorphism."""

    def code(x, parent) -> str:
        if t.is_leaf(x):
            return "()"
        parts, y = [], t.succ(x, parent)
        while y != parent:
            parts.append(code(y, x))
            y = t.succ(x, y)
        return "(" + "".join(parts) + ")"

    best = None
    for r in t.interior_vertices:
        for first in t.neighbors(r):
            parts, y = [], first
            for _ in range(t.degree(r)):
                parts.append(code(y, r))
                y = t.succ(r, y)
            c = "[" + "".join(parts) + "]"
            if best is None or c < best:
                best = c
    return best or "leafless"


def is_embedded_isomorphic(a: EmbeddedTree, b: EmbeddedTree) -> bool:
    return canonical_form(a) == canonical_form(b)


def relabel_tree(t: EmbeddedTree) -> EmbeddedTree:
    """Rename leaves 1..L in counterclockwise order and interior vertices L+1, ... ."""
    names = {leaf: i + 1 for i, leaf in enumerate(t.leaves_ccw)}
    L = len(names)
    order = sorted(t.interior_vertices, key=lambda v: min(names[l] for l in _leaves_near(t, v)))
    for i, v in enumerate(order):
        names[v] = L + 1 + i
    return EmbeddedTree({names[v]: [names[n] for n in t.neighbors(v)] for v in t.interior_vertices})


def _leaves_near(t: EmbeddedTree, v) -> list:
    return [t.face_leaf(c.face) for c in t.corners_at(v)]


def _embeddings(shape: nx.Graph, degrees: dict) -> Iterable[dict]:
    """Every rotation system on ``shape`` with the given total degrees."""
    nodes = sorted(shape.nodes)
    per_node = []
    for v in nodes:
        inner = sorted(shape.neighbors(v))
        slots = inner + ["*"] * (degrees[v] - len(inner))
        first, rest = slots[0], slots[1:]
        seen, options = set(), []
        for perm in permutations(rest):
            if perm not in seen:
                seen.add(perm)
                options.append([first] + list(perm))
        per_node.append(options)

    def rec(i: int, acc: dict):
        if i == len(nodes):
            yield dict(acc)
            return
        for opt in per_node[i]:
            acc[nodes[i]] = opt
            yield from rec(i + 1, acc)

    yield from rec(0, {})


def _materialize(rot: dict) -> EmbeddedTree:
    out, fresh = {}, 0
    for v, slots in rot.items():
        row = []
        for s in slots:
            if s == "*":
                fresh += 1
                row.append(f"x{fresh}")
            else:
                row.append(f"v{s}")
        out[f"v{v}"] = row
    return EmbeddedTree(out)


def _shapes(k: int) -> list:
    if k == 1:
        g = nx.Graph()
        g.add_node(0)
        return [g]
    return list(nx.nonisomorphic_trees(k))


def all_trees(max_interior: int, degrees: tuple = (3, 4)) -> list:
    """All embedded trees with 1..max_interior interior vertices of the given degrees."""
    found: dict = {}
    for k in range(1, max_interior + 1):
        for shape in _shapes(k):
            nodes = sorted(shape.nodes)
            choices = [[d for d in degrees if d >= shape.degree(v)] for v in nodes]
            for combo in _product(choices):
                degs = dict(zip(nodes, combo))
                for rot in _embeddings(shape, degs):
                    t = _materialize(rot)
                    found.setdefault(canonical_form(t), t)
    trees = [relabel_tree(t) for t in found.values()]
    return sorted(trees, key=lambda t: (len(t.interior_vertices), len(t.leaves), canonical_form(t)))


def _product(choices: list) -> Iterable[tuple]:
    if not choices:
        yield ()
        return
    for c in choices[0]:
        for rest in _product(choices[1:]):
            yield (c,) + rest


def random_tree(n_interior: int, rng: random.Random, degrees: tuple = (3, 4)) -> EmbeddedTree:
    """A random embedded tree with ``n_interior`` interior vertices."""
    max_deg = max(degrees)
    adj: dict = {0: []}
    for v in range(1, n_interior):
        parent = rng.choice([u for u in adj if len(adj[u]) < max_deg])
        adj[v] = [parent]
        adj[parent].append(v)
    rot = {}
    for v, inner in adj.items():
        d = rng.choice([d for d in degrees if d >= len(inner)])
        slots = list(inner) + ["*"] * (d - len(inner))
        rng.shuffle(slots)
        rot[v] = slots
    return relabel_tree(_materialize(rot))


def random_trees(count: int, seed: int, sizes: tuple = (5, 6)) -> list:
    rng = random.Random(seed)
    return [random_tree(rng.choice(sizes), rng) for _ in range(count)]


# bundled tree files


def corpus_names() -> list:
    files = resources.files("flipgraph") / "corpus"
    return sorted(p.name[: -len(".tree")] for p in files.iterdir() if p.name.endswith(".tree"))


def corpus_path(name: str) -> str:
    return str(resources.files("flipgraph") / "corpus" / f"{name}.tree")


def corpus_tree(name: str) -> EmbeddedTree:
    return read_tree(corpus_path(name), as_json=False)
