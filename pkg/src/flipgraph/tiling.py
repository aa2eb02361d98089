"""The tiling algebra of an embedded tree and its string modules.

Quiver vertices are the interior edges of the tree.  Every corner at an
interior vertex ``x`` bounded by two interior edges gives an arrow from the
edge towards ``a`` to the edge towards ``succ_x(a)``; two arrows composing
through the same tree vertex form a zero relation.  Indecomposable modules
are string modules, one per segment, with every vertex dimension at most 1,
so all Hom and Ext computations reduce to arrow directions along segments.

Simple-minded collections are stored as pairs ``(segment, degree)`` with
degree 0 or -1 and no complexes are ever built.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Union

from .biclosed import _bic_masks, _pi_down_mask, closure, phi, segment_index
from .embedded_tree import EmbeddedTree, VertexId, edge_key, vkey
from .lattice import FiniteLattice
from .ncc import Facet, tree_segments
from .ncp import (
    NotNCP,
    TreePartition,
    enumerate_ncp,
    is_ncp,
    kreweras_complement,
    partition_from_segments,
    partition_segments,
)
from .seg_arc import Segment, compose, try_segment

Edge = tuple
LEFT_MUTATION = "left"
RIGHT_MUTATION = "right"


class NoExtension(ValueError):
    pass


class WrongDegreeForDirection(ValueError):
    pass


class NotDegreeThree(ValueError):
    pass


class NotSMC(ValueError):
    pass


# bound quiver


@dataclass(frozen=True)
class Arrow:
    source: Edge
    target: Edge
    vertex: VertexId  # tree vertex whose corner defines the arrow

    def __repr__(self) -> str:
        return f"{self.source}->{self.target}@{self.vertex}"


@dataclass(frozen=True)
class BoundQuiver:
    vertices: tuple
    arrows: tuple
    relations: tuple  # (first, second): the path first then second is zero

    def arrows_from(self, e: Edge) -> list:
        return [a for a in self.arrows if a.source == e]

    def arrows_to(self, e: Edge) -> list:
        return [a for a in self.arrows if a.target == e]

    def is_zero(self, first: Arrow, second: Arrow) -> bool:
        return (first, second) in self._relation_set

    @property
    def _relation_set(self) -> frozenset:
        return frozenset(self.relations)

    def gentle_failures(self) -> list:
        """Violated gentle-algebra axioms, as short descriptions."""
        out = []
        for e in self.vertices:
            if len(self.arrows_from(e)) > 2 or len(self.arrows_to(e)) > 2:
                out.append(f"vertex {e} has more than two arrows in or out")
        for b in self.arrows:
            after = self.arrows_from(b.target)
            before = self.arrows_to(b.source)
            if sum(not self.is_zero(b, a) for a in after) > 1:
                out.append(f"{b} continues along two nonzero paths")
            if sum(not self.is_zero(g, b) for g in before) > 1:
                out.append(f"{b} is reached by two nonzero paths")
            if sum(self.is_zero(b, a) for a in after) > 1:
                out.append(f"{b} starts two zero relations")
            if sum(self.is_zero(g, b) for g in before) > 1:
                out.append(f"{b} ends two zero relations")
        for first, second in self.relations:
            if first.target != second.source:
                out.append(f"relation {first},{second} is not a path")
        return out

    def is_gentle(self) -> bool:
        return not self.gentle_failures()


@lru_cache(maxsize=64)
def build_quiver(t: EmbeddedTree) -> BoundQuiver:
    interior = set(t.interior_edges)
    arrows = []
    for x in t.interior_vertices:
        for a in t.neighbors(x):
            e1, e2 = edge_key(x, a), edge_key(x, t.succ(x, a))
            if e1 in interior and e2 in interior:
                arrows.append(Arrow(e1, e2, x))
    relations = [(p, q) for p in arrows for q in arrows if p.target == q.source and p.vertex == q.vertex]
    return BoundQuiver(tuple(t.interior_edges), tuple(arrows), tuple(relations))


def _arrow_between(t: EmbeddedTree, e1: Edge, e2: Edge) -> bool:
    """Whether the quiver has an arrow from edge ``e1`` to edge ``e2``."""
    common = set(e1) & set(e2)
    if len(common) != 1 or e1 == e2:
        return False
    (x,) = common
    a = e1[0] if e1[1] == x else e1[1]
    b = e2[0] if e2[1] == x else e2[1]
    return t.succ(x, a) == b


# string modules


@dataclass(frozen=True, order=True)
class StringModule:
    segment: Segment

    @property
    def support(self) -> frozenset:
        return frozenset(self.segment.edges)

    @property
    def edges(self) -> tuple:
        """Support edges in the order the segment visits them."""
        return self.segment.edges

    def dim_vector(self, t: EmbeddedTree) -> tuple:
        s = self.support
        return tuple(int(e in s) for e in t.interior_edges)

    @property
    def dimension(self) -> int:
        return len(self.segment)

    def __repr__(self) -> str:
        return f"M{self.segment!r}"


def string_module(t: EmbeddedTree, s: Segment | tuple) -> StringModule:
    if not isinstance(s, Segment):
        s = Segment(tuple(s))
    return StringModule(s)


@lru_cache(maxsize=64)
def indecomposables(t: EmbeddedTree) -> tuple:
    return tuple(StringModule(s) for s in tree_segments(t))


def string_word(t: EmbeddedTree, m: StringModule) -> str:
    """The string as text, e.g. ``(1,2)<-(2,3)->(3,4)``."""
    es = m.edges
    out = [str(es[0])]
    for a, b in zip(es, es[1:]):
        out.append("->" if _arrow_between(t, a, b) else "<-")
        out.append(str(b))
    return "".join(out)


def _as_module(x) -> StringModule:
    if isinstance(x, StringModule):
        return x
    if isinstance(x, Segment):
        return StringModule(x)
    return StringModule(Segment(tuple(x)))


def _segment_of_edges(t: EmbeddedTree, edges: Iterable[Edge]) -> Segment:
    edges = list(edges)
    count: dict = {}
    for e in edges:
        for x in e:
            count[x] = count.get(x, 0) + 1
    ends = [x for x, c in count.items() if c == 1]
    if len(ends) != 2:
        raise ValueError(f"edges {edges} do not form a path")
    s = try_segment(t, *ends)
    if s is None:
        raise ValueError(f"edges {edges} do not form a segment")
    return s


def _pieces(t: EmbeddedTree, m: StringModule, drop: frozenset) -> list:
    """Maximal runs of ``m``'s edges avoiding ``drop``, as string modules."""
    runs, cur = [], []
    for e in m.edges:
        if e in drop:
            if cur:
                runs.append(cur)
            cur = []
        else:
            cur.append(e)
    if cur:
        runs.append(cur)
    return [StringModule(_segment_of_edges(t, r)) for r in runs]


def _boundary_ok(t: EmbeddedTree, edges: tuple, i: int, j: int, outward: bool) -> bool:
    """Arrows joining ``edges[i..j]`` to the rest of the string all point out (or in)."""
    checks = []
    if i > 0:
        checks.append((edges[i], edges[i - 1]))
    if j < len(edges) - 1:
        checks.append((edges[j], edges[j + 1]))
    for inside, outside in checks:
        if _arrow_between(t, inside, outside) != outward:
            return False
    return True


def is_factor(t: EmbeddedTree, m: StringModule, sub: StringModule) -> bool:
    """Whether ``m`` surjects onto ``sub`` along a substring."""
    return _substring_test(t, m, sub, outward=True)


def is_submodule(t: EmbeddedTree, m: StringModule, sub: StringModule) -> bool:
    """Whether ``sub`` embeds into ``m`` along a substring."""
    return _substring_test(t, m, sub, outward=False)


def _substring_test(t: EmbeddedTree, m: StringModule, sub: StringModule, outward: bool) -> bool:
    es = m.edges
    target = sub.support
    idx = [k for k, e in enumerate(es) if e in target]
    if len(idx) != len(target) or not idx or idx[-1] - idx[0] != len(idx) - 1:
        return False
    return _boundary_ok(t, es, idx[0], idx[-1], outward)


def hom_dim(t: EmbeddedTree, u, v) -> int:
    """dim Hom(M(u), M(v)): substrings that are factors of u and submodules of v."""
    u, v = _as_module(u), _as_module(v)
    common = u.support & v.support
    if not common:
        return 0
    ue, ve = u.edges, v.edges
    vpos = {e: k for k, e in enumerate(ve)}
    count = 0
    for i in range(len(ue)):
        if ue[i] not in common:
            continue
        for j in range(i, len(ue)):
            if ue[j] not in common:
                break
            if not _boundary_ok(t, ue, i, j, outward=True):
                continue
            lo, hi = sorted((vpos[ue[i]], vpos[ue[j]]))
            if _boundary_ok(t, ve, lo, hi, outward=False):
                count += 1
    return count


def hom_image(t: EmbeddedTree, u, v) -> StringModule | None:
    """The image of the nonzero map M(u) -> M(v), if there is one."""
    u, v = _as_module(u), _as_module(v)
    common = u.support & v.support
    ue = u.edges
    vpos = {e: k for k, e in enumerate(v.edges)}
    for i in range(len(ue)):
        for j in range(i, len(ue)):
            if any(e not in common for e in ue[i : j + 1]):
                break
            lo, hi = sorted((vpos[ue[i]], vpos[ue[j]]))
            if _boundary_ok(t, ue, i, j, True) and _boundary_ok(t, v.edges, lo, hi, False):
                return StringModule(_segment_of_edges(t, ue[i : j + 1]))
    return None


def _shared_endpoints(a: Segment, b: Segment) -> set:
    return set(a.endpoints) & set(b.endpoints)


def _common_path(t: EmbeddedTree, a: Segment, b: Segment) -> tuple:
    """Common vertices of ``a`` and ``b`` in the order ``a`` visits them."""
    bs = set(b.path)
    return tuple(x for x in a.path if x in bs)


def _end_edge(s: Segment, x: VertexId) -> Edge:
    p = s.path
    return edge_key(p[0], p[1]) if p[0] == x else edge_key(p[-2], p[-1])


def ext_dim(t: EmbeddedTree, v, u) -> int:
    """dim Ext^1(M(v), M(u)), i.e. nonsplit extensions 0 -> M(u) -> X -> M(v) -> 0."""
    return int(_ext_case(t, _as_module(v), _as_module(u)) is not None)


def _ext_case(t: EmbeddedTree, v: StringModule, u: StringModule):
    su, sv = u.segment, v.segment
    if su == sv:
        return None
    common_v = _common_path(t, su, sv)
    common_e = u.support & v.support
    shared = _shared_endpoints(su, sv)
    if not common_e:
        if len(common_v) == 1 and shared == {common_v[0]}:
            x = common_v[0]
            if compose(t, su, sv) is not None and _arrow_between(t, _end_edge(sv, x), _end_edge(su, x)):
                return ("endpoint", x)
        return None
    if shared:
        return None
    w = common_v  # vertices of the common path, in u's order
    first, last = edge_key(w[0], w[1]), edge_key(w[-2], w[-1])
    for s, outward in ((su, True), (sv, False)):
        p = s.path
        for end_vertex, inner in ((w[0], first), (w[-1], last)):
            k = p.index(end_vertex)
            for nb in (k - 1, k + 1):
                if 0 <= nb < len(p) and p[nb] not in w:
                    outer = edge_key(end_vertex, p[nb])
                    if _arrow_between(t, inner, outer) != outward:
                        return None
    return ("crossing", w)


def _far_end(s: Segment, w: tuple, end_vertex: VertexId) -> VertexId:
    """Endpoint of ``s`` reached from ``end_vertex`` moving away from the common path."""
    p = list(s.path)
    k = p.index(end_vertex)
    if k + 1 < len(p) and p[k + 1] not in w:
        return p[-1]
    if k - 1 >= 0 and p[k - 1] not in w:
        return p[0]
    return end_vertex


def ext_middle(t: EmbeddedTree, v, u) -> list:
    """Summands of the middle term of the nonsplit extension of M(v) by M(u)."""
    v, u = _as_module(v), _as_module(u)
    case = _ext_case(t, v, u)
    if case is None:
        raise NoExtension(f"Ext^1({v!r}, {u!r}) = 0")
    if case[0] == "endpoint":
        return [StringModule(compose(t, u.segment, v.segment))]
    w = case[1]
    out = []
    for a_seg, b_seg in ((u.segment, v.segment), (v.segment, u.segment)):
        a = _far_end(a_seg, w, w[0])
        b = _far_end(b_seg, w, w[-1])
        out.append(StringModule(try_segment(t, a, b)))
    return sorted(out)


# torsion-free classes


def _modules_of(segs: Iterable[Segment]) -> frozenset:
    return frozenset(StringModule(s) for s in segs)


@lru_cache(maxsize=32)
def _hom_table(t: EmbeddedTree) -> dict:
    mods = indecomposables(t)
    return {(a, b): hom_dim(t, a, b) for a in mods for b in mods}


def right_perp(t: EmbeddedTree, mods: Iterable[StringModule]) -> frozenset:
    """Indecomposables receiving no nonzero map from ``mods``."""
    H = _hom_table(t)
    mods = list(mods)
    return frozenset(y for y in indecomposables(t) if all(H[(x, y)] == 0 for x in mods))


def left_perp(t: EmbeddedTree, mods: Iterable[StringModule]) -> frozenset:
    H = _hom_table(t)
    mods = list(mods)
    return frozenset(x for x in indecomposables(t) if all(H[(x, y)] == 0 for y in mods))


def torsion_free_closure(t: EmbeddedTree, mods: Iterable[StringModule]) -> frozenset:
    """Smallest torsion-free class containing ``mods``."""
    return right_perp(t, left_perp(t, mods))


def is_torsion_free(t: EmbeddedTree, mods: Iterable[StringModule]) -> bool:
    mods = frozenset(mods)
    return torsion_free_closure(t, mods) == mods


def zeta(t: EmbeddedTree, f: Facet) -> frozenset:
    """Torsion-free class of a facet: the modules of its biclosed set."""
    return _modules_of(phi(t, f))


@lru_cache(maxsize=32)
def torsion_free_classes(t: EmbeddedTree) -> FiniteLattice:
    """Torsion-free classes as images of biclosed sets under the down projection."""
    ix = segment_index(t)
    masks = sorted({_pi_down_mask(ix, m) for m in _bic_masks(t)[0]}, key=lambda m: (bin(m).count("1"), m))
    classes = [_modules_of(ix.unmask(m)) for m in masks]
    return FiniteLattice.from_order(classes, lambda a, b: a <= b)


def torsion_free_classes_by_closure(t: EmbeddedTree) -> list:
    """Every torsion-free class, found by closing under single additions."""
    start = torsion_free_closure(t, ())
    seen = {start}
    queue = deque([start])
    mods = indecomposables(t)
    while queue:
        F = queue.popleft()
        for m in mods:
            if m in F:
                continue
            G = torsion_free_closure(t, F | {m})
            if G not in seen:
                seen.add(G)
                queue.append(G)
    return sorted(seen, key=lambda F: (len(F), sorted(F)))


def is_submodule_closed(t: EmbeddedTree, mods: Iterable[StringModule]) -> bool:
    mods = frozenset(mods)
    return all(y in mods for x in mods for y in indecomposables(t) if is_submodule(t, x, y))


def is_extension_closed(t: EmbeddedTree, mods: Iterable[StringModule]) -> bool:
    mods = frozenset(mods)
    for x in mods:
        for y in mods:
            if ext_dim(t, x, y) and not all(z in mods for z in ext_middle(t, x, y)):
                return False
    return True


# wide subcategories


def wide_subcategory(t: EmbeddedTree, P: TreePartition) -> frozenset:
    return _modules_of(closure(t, partition_segments(t, P)))


@lru_cache(maxsize=32)
def wide_subcategories(t: EmbeddedTree) -> FiniteLattice:
    parts = enumerate_ncp(t).elements
    cats = [wide_subcategory(t, P) for P in parts]
    return FiniteLattice.from_order(cats, lambda a, b: a <= b)


def simple_objects(t: EmbeddedTree, mods: Iterable[StringModule]) -> frozenset:
    """Objects of a wide subcategory with no proper nonzero subobject inside it."""
    mods = frozenset(mods)
    return frozenset(x for x in mods if not any(y != x and is_submodule(t, x, y) for y in mods))


def is_wide(t: EmbeddedTree, mods: Iterable[StringModule]) -> bool:
    """Closed under kernels, cokernels and extensions of maps between indecomposables."""
    mods = frozenset(mods)
    for x in mods:
        for y in mods:
            w = hom_image(t, x, y)
            if w is not None and x != y:
                pieces = _pieces(t, x, w.support) + _pieces(t, y, w.support)
                if not all(p in mods for p in pieces):
                    return False
    return is_extension_closed(t, mods)


# simple-minded collections


Obj = tuple  # (Segment, degree)


@dataclass(frozen=True)
class SmcCollection:
    objects: tuple  # sorted (segment, degree) pairs

    @classmethod
    def of(cls, objs: Iterable[Obj]) -> "SmcCollection":
        return cls(tuple(sorted(set(objs), key=lambda o: (o[0].sort_key(), o[1]))))

    def degree(self, d: int) -> frozenset:
        return frozenset(s for s, k in self.objects if k == d)

    def __len__(self) -> int:
        return len(self.objects)

    def __repr__(self) -> str:
        return "{" + ", ".join(f"M{s!r}" + ("[1]" if d == -1 else "") for s, d in self.objects) + "}"


def theta_map(t: EmbeddedTree, P: TreePartition) -> SmcCollection:
    if not is_ncp(t, P):
        raise NotNCP(f"{P!r} is not a noncrossing tree partition")
    red = partition_segments(t, P)
    green = partition_segments(t, kreweras_complement(t, P))
    return SmcCollection.of([(s, -1) for s in red] + [(s, 0) for s in green])


def smc_partition(t: EmbeddedTree, X: SmcCollection) -> TreePartition:
    """The noncrossing tree partition spanned by the degree -1 segments."""
    return partition_from_segments(t, X.degree(-1))


def _pair_conditions(t: EmbeddedTree, X: SmcCollection) -> list:
    out = []
    for (a, da), (b, db) in combinations(X.objects, 2):
        for (x, dx), (y, dy) in (((a, da), (b, db)), ((b, db), (a, da))):
            if dx == dy:
                if hom_dim(t, x, y):
                    out.append(f"Hom(M{x!r}, M{y!r}) != 0 in equal degrees")
            elif dx == 0:
                if hom_dim(t, x, y) or ext_dim(t, x, y):
                    out.append(f"M{x!r} and M{y!r}[1] are not orthogonal")
    return out


def smc_failures(t: EmbeddedTree, X: SmcCollection) -> list:
    n = len(t.interior_edges)
    out = []
    if len(X) != n:
        out.append(f"{len(X)} objects, expected {n}")
    if len({s for s, _ in X.objects}) != len(X):
        out.append("a segment appears in both degrees")
    if any(d not in (0, -1) for _, d in X.objects):
        out.append("degree outside {0, -1}")
    if out:
        return out
    out += _pair_conditions(t, X)
    P = smc_partition(t, X)
    if not is_ncp(t, P) or partition_segments(t, P) != X.degree(-1):
        out.append("degree -1 segments are not the segments of a noncrossing partition")
    elif partition_segments(t, kreweras_complement(t, P)) != X.degree(0):
        out.append("degree 0 segments are not the Kreweras complement's segments")
    return out


def is_2term_smc(t: EmbeddedTree, X: SmcCollection) -> bool:
    return not smc_failures(t, X)


def _difference(t: EmbeddedTree, big: Segment, small: Segment) -> Segment:
    return _segment_of_edges(t, [e for e in big.edges if e not in set(small.edges)])


def _object_index(X: SmcCollection, k: Union[int, Obj]) -> int:
    if isinstance(k, int):
        return k
    return X.objects.index(tuple(k))


def mutate(t: EmbeddedTree, X: SmcCollection, k: Union[int, Obj], direction: str = LEFT_MUTATION) -> SmcCollection:
    """Left mutation at a degree-0 object or right mutation at a degree -1 object."""
    i = _object_index(X, k)
    sk, dk = X.objects[i]
    if direction == LEFT_MUTATION and dk != 0:
        raise WrongDegreeForDirection("left mutation needs an object in degree 0")
    if direction == RIGHT_MUTATION and dk != -1:
        raise WrongDegreeForDirection("right mutation needs an object in degree -1")
    if direction not in (LEFT_MUTATION, RIGHT_MUTATION):
        raise ValueError(f"unknown direction {direction!r}")
    mk = StringModule(sk)
    left = direction == LEFT_MUTATION
    same = 0 if left else -1
    out = [(sk, -1 if left else 0)]
    for j, (s, d) in enumerate(X.objects):
        if j == i:
            continue
        m = StringModule(s)
        if d == same:
            ext = ext_dim(t, m, mk) if left else ext_dim(t, mk, m)
            if ext and not (m.support & mk.support):
                joined = compose(t, sk, s)
                out.append((joined, d))
                continue
        else:
            hom = hom_dim(t, m, mk) if left else hom_dim(t, mk, m)
            if hom:
                if m.support < mk.support:
                    out.append((_difference(t, sk, s), same))
                elif mk.support < m.support:
                    out.append((_difference(t, s, sk), d))
                else:
                    raise NotSMC(f"{X!r} is not a simple-minded collection")
                continue
        out.append((s, d))
    return SmcCollection.of(out)


def simples_collection(t: EmbeddedTree, degree: int = 0) -> SmcCollection:
    return SmcCollection.of((Segment(e), degree) for e in t.interior_edges)


@lru_cache(maxsize=32)
def smc_collections(t: EmbeddedTree) -> tuple:
    return tuple(theta_map(t, P) for P in enumerate_ncp(t).elements)


@lru_cache(maxsize=32)
def smc_lattice(t: EmbeddedTree) -> FiniteLattice:
    """Collections reachable from the simples by left mutation, covers labeled by the mutated segment."""
    start = simples_collection(t)
    seen = {start: 0}
    order = [start]
    covers, labels = [], {}
    queue = deque([start])
    while queue:
        X = queue.popleft()
        for k, (s, d) in enumerate(X.objects):
            if d != 0:
                continue
            Y = mutate(t, X, k, LEFT_MUTATION)
            if Y not in seen:
                seen[Y] = len(order)
                order.append(Y)
                queue.append(Y)
            covers.append((seen[X], seen[Y]))
            labels[(seen[X], seen[Y])] = s
    return FiniteLattice(order, covers, labels=labels)


# c-matrices


@dataclass(frozen=True)
class CMatrix:
    rows: tuple  # sorted tuple of integer row tuples

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "CMatrix":
        return cls(tuple(sorted(tuple(r) for r in rows)))

    def is_sign_coherent(self) -> bool:
        return all(all(x >= 0 for x in r) or all(x <= 0 for x in r) for r in self.rows)

    def determinant(self) -> int:
        return _det(self.rows)

    def is_unimodular(self) -> bool:
        return abs(self.determinant()) == 1

    def as_lists(self) -> list:
        return [list(r) for r in self.rows]


def _det(rows) -> int:
    """Integer determinant by fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def dimension_vector(t: EmbeddedTree, s: Segment) -> tuple:
    edges = set(s.edges)
    return tuple(int(e in edges) for e in t.interior_edges)


def _require_degree_three(t: EmbeddedTree) -> None:
    bad = [v for v in t.interior_vertices if t.degree(v) != 3]
    if bad:
        raise NotDegreeThree(f"interior vertices {bad} do not have degree 3")


def c_matrix(t: EmbeddedTree, P: TreePartition) -> CMatrix:
    _require_degree_three(t)
    X = theta_map(t, P)
    rows = [tuple(-x for x in dimension_vector(t, s)) for s in X.degree(-1)]
    rows += [dimension_vector(t, s) for s in X.degree(0)]
    return CMatrix.of(rows)


def c_matrices(t: EmbeddedTree) -> list:
    _require_degree_three(t)
    return [c_matrix(t, P) for P in enumerate_ncp(t).elements]


# exchange matrices and quiver mutation


def exchange_matrix(q: BoundQuiver) -> list:
    """Skew-symmetric matrix counting arrows between quiver vertices."""
    pos = {e: i for i, e in enumerate(q.vertices)}
    n = len(q.vertices)
    B = [[0] * n for _ in range(n)]
    for a in q.arrows:
        B[pos[a.source]][pos[a.target]] += 1
        B[pos[a.target]][pos[a.source]] -= 1
    return B


def mutate_matrix(B: list, k: int) -> list:
    """Matrix mutation of an n x m exchange matrix at row ``k``."""
    out = []
    for i, row in enumerate(B):
        new = []
        for j, b in enumerate(row):
            if i == k or j == k:
                new.append(-b)
            else:
                bik, bkj = B[i][k], B[k][j]
                new.append(b + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        out.append(new)
    return out


def _seed_key(B: list) -> tuple:
    """Canonical form of a framed exchange matrix up to relabeling mutable vertices."""
    n = len(B)
    order = sorted(range(n), key=lambda i: tuple(B[i][n:]))
    return tuple(tuple(B[i][j] for j in order) + tuple(B[i][n:]) for i in order)


@dataclass(frozen=True)
class ExchangeGraph:
    c_matrices: tuple  # CMatrix per vertex
    edges: tuple  # (i, j, k): mutation at row k sends vertex i to j with c_k positive


def oriented_exchange_graph(t: EmbeddedTree, limit: int = 20000) -> ExchangeGraph:
    """Oriented exchange graph of the framed quiver of the tiling algebra."""
    B = exchange_matrix(build_quiver(t))
    n = len(B)
    framed = [row + [int(i == j) for j in range(n)] for i, row in enumerate(B)]
    keys = {_seed_key(framed): 0}
    mats = [framed]
    edges = set()
    queue = deque([0])
    while queue:
        i = queue.popleft()
        M = mats[i]
        for k in range(n):
            N = mutate_matrix(M, k)
            key = _seed_key(N)
            if key not in keys:
                if len(mats) >= limit:
                    raise RuntimeError("exchange graph exceeds the enumeration limit")
                keys[key] = len(mats)
                mats.append(N)
                queue.append(keys[key])
            j = keys[key]
            if any(x > 0 for x in M[k][n:]):
                edges.add((i, j, k))
    cms = tuple(CMatrix.of(row[n:] for row in M) for M in mats)
    return ExchangeGraph(cms, tuple(sorted(edges)))
