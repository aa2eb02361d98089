"""Noncrossing tree partitions, Kreweras complements and red-green trees."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .embedded_tree import EmbeddedTree, VertexId, vkey
from .lattice import FiniteLattice, kreweras_map
from .ncc import Facet, flip_lattice, oriented_flip_graph, tree_segments
from .seg_arc import GREEN, RED, Segment, colored, colored_cross, try_segment

ENUMERATION_LIMIT = 9


class NotNCP(ValueError):
    pass


class NotSegmentConnected(ValueError):
    pass


def _block_key(b: tuple) -> tuple:
    return tuple(vkey(v) for v in b)


@dataclass(frozen=True)
class TreePartition:
    blocks: tuple  # sorted tuple of sorted vertex tuples

    @classmethod
    def of(cls, blocks: Iterable[Iterable[VertexId]]) -> "TreePartition":
        bs = [tuple(sorted(set(b), key=vkey)) for b in blocks]
        bs = [b for b in bs if b]
        return cls(tuple(sorted(bs, key=_block_key)))

    @classmethod
    def singletons(cls, t: EmbeddedTree) -> "TreePartition":
        return cls.of([v] for v in t.interior_vertices)

    def block_of(self, v: VertexId) -> tuple:
        for b in self.blocks:
            if v in b:
                return b
        raise KeyError(v)

    def refines(self, other: "TreePartition") -> bool:
        return all(any(set(b) <= set(c) for c in other.blocks) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __repr__(self) -> str:
        return "(" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + ")"


@dataclass(frozen=True)
class RedGreenTree:
    red: frozenset
    green: frozenset

    def colored_segments(self, t: EmbeddedTree) -> list:
        return [colored(t, s, RED) for s in sorted(self.red)] + [colored(t, s, GREEN) for s in sorted(self.green)]


# blocks and their segments


def min_segments(t: EmbeddedTree, block: Iterable[VertexId]) -> frozenset:
    """Inclusion-minimal segments with both endpoints in ``block``."""
    B = set(block)
    out = set()
    for u, v in combinations(sorted(B, key=vkey), 2):
        s = try_segment(t, u, v)
        if s is not None and not any(w in B for w in s.path[1:-1]):
            out.add(s)
    return frozenset(out)


def partition_segments(t: EmbeddedTree, P: TreePartition) -> frozenset:
    out: set = set()
    for b in P.blocks:
        out |= min_segments(t, b)
    return frozenset(out)


def _components(vertices: Iterable[VertexId], segs: Iterable[Segment]) -> list:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in segs:
        a, b = s.endpoints
        parent[find(a)] = find(b)
    comps: dict = {}
    for v in parent:
        comps.setdefault(find(v), []).append(v)
    return list(comps.values())


def is_segment_connected(t: EmbeddedTree, block: Iterable[VertexId]) -> bool:
    B = list(block)
    return len(_components(B, min_segments(t, B))) <= 1


def partition_from_segments(t: EmbeddedTree, segs: Iterable[Segment]) -> TreePartition:
    """Blocks are the components of the interior vertices joined by ``segs``."""
    return TreePartition.of(_components(t.interior_vertices, segs))


def red_noncrossing(t: EmbeddedTree, segs: Iterable[Segment]) -> bool:
    cs = [colored(t, s, RED) for s in sorted(segs)]
    return not any(colored_cross(t, a, b) for a, b in combinations(cs, 2))


def is_ncp(t: EmbeddedTree, P: TreePartition) -> bool:
    flat = [v for b in P.blocks for v in b]
    if sorted(flat, key=vkey) != list(t.interior_vertices):
        return False
    if not all(is_segment_connected(t, b) for b in P.blocks):
        return False
    return red_noncrossing(t, partition_segments(t, P))


# enumeration


def set_partitions(items: list) -> Iterator[list]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def ncp_by_filter(t: EmbeddedTree) -> list:
    """All noncrossing tree partitions, by filtering every set partition."""
    out = []
    for part in set_partitions(list(t.interior_vertices)):
        P = TreePartition.of(part)
        if is_ncp(t, P):
            out.append(P)
    return sorted(out, key=lambda P: (len(t.interior_vertices) - len(P), P.blocks and [_block_key(b) for b in P.blocks]))


def ncp_by_rho(t: EmbeddedTree) -> list:
    g = oriented_flip_graph(t)
    return sorted({rho(t, f) for f in g.facets}, key=lambda P: (len(t.interior_vertices) - len(P), [_block_key(b) for b in P.blocks]))


@lru_cache(maxsize=32)
def enumerate_ncp(t: EmbeddedTree) -> FiniteLattice:
    """Noncrossing tree partitions ordered by refinement."""
    if len(t.interior_vertices) <= ENUMERATION_LIMIT:
        parts = ncp_by_filter(t)
    else:
        parts = ncp_by_rho(t)
    return FiniteLattice.from_order(parts, lambda a, b: a.refines(b))


# rho and Kreweras complements


def rho(t: EmbeddedTree, f: Facet) -> TreePartition:
    g = oriented_flip_graph(t)
    return partition_from_segments(t, g.lower_labels(g.index(f)))


def _flip_partner(t: EmbeddedTree, P: TreePartition) -> int:
    """Index in the flip lattice of the facet whose lower labels are ``Seg(P)``."""
    L = flip_lattice(t)
    segs = partition_segments(t, P)
    for x in range(L.n):
        if L.lower_labels(x) == segs:
            return x
    raise NotNCP(f"{P!r} is not a noncrossing tree partition")


def rho_inverse(t: EmbeddedTree, P: TreePartition) -> Facet:
    return flip_lattice(t).elements[_flip_partner(t, P)]


def red_green_complete(t: EmbeddedTree, red: Iterable[Segment]) -> RedGreenTree:
    """The red-green tree with the given red part.

    Green segments are chosen greedily among those joining two components and
    crossing nothing chosen so far; a dead end falls back to backtracking.
    """
    red = frozenset(red)
    reds = [colored(t, s, RED) for s in sorted(red)]
    if any(colored_cross(t, a, b) for a, b in combinations(reds, 2)):
        raise NotNCP("red segments cross")
    candidates = [colored(t, s, GREEN) for s in tree_segments(t)]
    candidates = [c for c in candidates if not any(colored_cross(t, c, r) for r in reds)]
    verts = list(t.interior_vertices)

    def search(chosen: list, start: int) -> list | None:
        comps = _components(verts, list(red) + [c.segment for c in chosen])
        if len(comps) == 1:
            return chosen
        comp_of = {v: i for i, c in enumerate(comps) for v in c}
        for i in range(start, len(candidates)):
            c = candidates[i]
            a, b = c.segment.endpoints
            if comp_of[a] == comp_of[b]:
                continue
            if any(colored_cross(t, c, d) for d in chosen):
                continue
            found = search(chosen + [c], i + 1)
            if found is not None:
                return found
        return None

    greens = search([], 0)
    if greens is None:
        raise NotNCP("red segments admit no red-green completion")
    return RedGreenTree(red, frozenset(c.segment for c in greens))


def kreweras_complement(t: EmbeddedTree, P: TreePartition) -> TreePartition:
    if not is_ncp(t, P):
        raise NotNCP(f"{P!r} is not a noncrossing tree partition")
    rg = red_green_complete(t, partition_segments(t, P))
    return partition_from_segments(t, rg.green)


def kreweras_by_lattice(t: EmbeddedTree, P: TreePartition) -> TreePartition:
    """Kreweras complement read off the labels of the flip lattice."""
    L = flip_lattice(t)
    x = _flip_partner(t, P)
    return partition_from_segments(t, L.lower_labels(kreweras_map(L, x)))


def is_red_green_tree(t: EmbeddedTree, rg: RedGreenTree) -> bool:
    cs = rg.colored_segments(t)
    if any(colored_cross(t, a, b) for a, b in combinations(cs, 2)):
        return False
    return len(_components(t.interior_vertices, list(rg.red) + list(rg.green))) == 1


# contracted trees


def contract_tree(t: EmbeddedTree, block: Iterable[VertexId]) -> EmbeddedTree:
    """Tree with interior vertices ``block`` and interior edges its minimal segments.

    An edge of the original tree leaving a block vertex ``u`` towards ``x``
    becomes an edge to the first block vertex in that direction when a minimal
    segment starts along it, and otherwise a boundary edge to a new leaf
    named ``"u>x"``.
    """
    B = sorted(set(block), key=vkey)
    segs = min_segments(t, B)
    if len(_components(B, segs)) > 1:
        raise NotSegmentConnected(f"block {B} is not segment-connected")
    if len(segs) != len(B) - 1:
        raise NotSegmentConnected(f"minimal segments of {B} do not form a tree")
    toward: dict = {}
    for s in segs:
        p = s.path
        for u, x, w in ((p[0], p[1], p[-1]), (p[-1], p[-2], p[0])):
            if (u, x) in toward:
                raise NotSegmentConnected(f"two minimal segments leave {u} towards {x}")
            toward[(u, x)] = w
    rot = {}
    for u in B:
        rot[u] = [toward.get((u, x), f"{u}>{x}") for x in t.neighbors(u)]
    return EmbeddedTree(rot)
