"""Finite lattices given by their cover relations.

Elements are stored along a linear extension, so an element's up-set and
down-set are integer bitmasks.  The join of ``x`` and ``y`` is then the lowest
bit of ``up[x] & up[y]`` and the meet the highest bit of ``down[x] & down[y]``.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Hashable, Iterable, Sequence

import networkx as nx

FULL_CHECK_LIMIT = 2500


class NotALattice(ValueError):
    pass


class NotAcyclic(ValueError):
    pass


class NotACongruence(ValueError):
    pass


class NotAnInterval(ValueError):
    pass


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _high(mask: int) -> int:
    return mask.bit_length() - 1


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FiniteLattice:
    """A finite lattice with optional cover labels and label order."""

    def __init__(
        self,
        elements: Sequence[Any],
        covers: Iterable[tuple],
        labels: dict | None = None,
        label_leq: Callable[[Any, Any], bool] | None = None,
        validate: bool = True,
    ):
        n = len(elements)
        covers = list(dict.fromkeys((int(a), int(b)) for a, b in covers))
        ups: list[list[int]] = [[] for _ in range(n)]
        indeg = [0] * n
        for a, b in covers:
            if a == b:
                raise NotAcyclic(f"cover ({a}, {a}) is a loop")
            ups[a].append(b)
            indeg[b] += 1
        # linear extension, ties broken by the given order

        heap = [i for i in range(n) if indeg[i] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            a = heapq.heappop(heap)
            order.append(a)
            for b in ups[a]:
                indeg[b] -= 1
                if indeg[b] == 0:
                    heapq.heappush(heap, b)
        if len(order) != n:
            raise NotAcyclic("cover relation has a cycle")
        new = {old: i for i, old in enumerate(order)}
        self.elements: list = [elements[i] for i in order]
        self.n = n
        self.covers: list = sorted((new[a], new[b]) for a, b in covers)
        self.up_covers: list = [[] for _ in range(n)]
        self.down_covers: list = [[] for _ in range(n)]
        for a, b in self.covers:
            self.up_covers[a].append(b)
            self.down_covers[b].append(a)
        self.labels: dict | None = None
        if labels is not None:
            self.labels = {(new[a], new[b]): lab for (a, b), lab in labels.items()}
        self.label_leq = label_leq
        self.up = [0] * n
        for x in reversed(range(n)):
            m = 1 << x
            for y in self.up_covers[x]:
                m |= self.up[y]
            self.up[x] = m
        self.down = [0] * n
        for x in range(n):
            m = 1 << x
            for y in self.down_covers[x]:
                m |= self.down[y]
            self.down[x] = m
        self._index = None
        if validate:
            self._validate()

    # construction helpers
    @classmethod
    def from_order(cls, elements: Sequence[Any], leq: Callable[[Any, Any], bool], **kw) -> "FiniteLattice":
        n = len(elements)
        strict_up = [0] * n
        for i in range(n):
            for j in range(n):
                if i != j and leq(elements[i], elements[j]):
                    strict_up[i] |= 1 << j
        strict_down = [0] * n
        for i in range(n):
            for j in _bits(strict_up[i]):
                strict_down[j] |= 1 << i
        covers = []
        for i in range(n):
            for j in _bits(strict_up[i]):
                if not (strict_up[i] & strict_down[j]):
                    covers.append((i, j))
        return cls(elements, covers, **kw)

    def _validate(self) -> None:
        n = self.n
        if n == 0:
            raise NotALattice("empty poset")
        mins = [x for x in range(n) if not self.down_covers[x]]
        maxs = [x for x in range(n) if not self.up_covers[x]]
        if len(mins) != 1 or len(maxs) != 1:
            raise NotALattice(f"{len(mins)} minimal and {len(maxs)} maximal elements")
        # a finite join-semilattice with a least element is a lattice
        pairs: Iterable = combinations(range(n), 2)
        if n > FULL_CHECK_LIMIT:
            pairs = ((x, y) for x in range(n) for y in self._siblings(x))
        for x, y in pairs:
            u = self.up[x] & self.up[y]
            j = _low(u)
            if self.up[j] != u:
                raise NotALattice(f"elements {x} and {y} have no least upper bound")

    def _siblings(self, x: int) -> list:
        # elements sharing a lower cover with x (used for the partial check)
        out = []
        for z in self.down_covers[x]:
            out.extend(y for y in self.up_covers[z] if y > x)
        return out

    # basic queries
    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.n - 1

    def __len__(self) -> int:
        return self.n

    def index(self, payload: Hashable) -> int:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.elements)}
        return self._index[payload]

    def leq(self, x: int, y: int) -> bool:
        return bool((self.up[x] >> y) & 1)

    def join(self, x: int, y: int) -> int:
        return _low(self.up[x] & self.up[y])

    def meet(self, x: int, y: int) -> int:
        return _high(self.down[x] & self.down[y])

    def join_all(self, xs: Iterable[int]) -> int:
        m = self.up[self.bottom]
        for x in xs:
            m &= self.up[x]
        return _low(m)

    def meet_all(self, xs: Iterable[int]) -> int:
        m = self.down[self.top]
        for x in xs:
            m &= self.down[x]
        return _high(m)

    def interval(self, x: int, y: int) -> list:
        return list(_bits(self.up[x] & self.down[y]))

    def label(self, x: int, y: int) -> Any:
        return self.labels[(x, y)]

    def lower_labels(self, x: int) -> frozenset:
        return frozenset(self.labels[(y, x)] for y in self.down_covers[x])

    def upper_labels(self, x: int) -> frozenset:
        return frozenset(self.labels[(x, y)] for y in self.up_covers[x])

    def join_irreducibles(self) -> list:
        return [x for x in range(self.n) if len(self.down_covers[x]) == 1]

    def meet_irreducibles(self) -> list:
        return [x for x in range(self.n) if len(self.up_covers[x]) == 1]

    def atoms(self) -> list:
        return list(self.up_covers[self.bottom])

    def dual(self) -> "FiniteLattice":
        labels = None
        if self.labels is not None:
            labels = {(b, a): lab for (a, b), lab in self.labels.items()}
        return FiniteLattice(
            list(self.elements),
            [(b, a) for a, b in self.covers],
            labels=labels,
            label_leq=self.label_leq,
            validate=False,
        )

    def hasse(self, with_labels: bool = True) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        for a, b in self.covers:
            if with_labels and self.labels is not None:
                g.add_edge(a, b, label=self.labels[(a, b)])
            else:
                g.add_edge(a, b)
        return g

    # semidistributivity
    def is_join_semidistributive(self) -> bool:
        for x in range(self.n):
            groups: dict = defaultdict(list)
            for y in range(self.n):
                groups[self.join(x, y)].append(y)
            for j, ys in groups.items():
                if self.join(x, self.meet_all(ys)) != j:
                    return False
        return True

    def is_meet_semidistributive(self) -> bool:
        for x in range(self.n):
            groups: dict = defaultdict(list)
            for y in range(self.n):
                groups[self.meet(x, y)].append(y)
            for m, ys in groups.items():
                if self.meet(x, self.join_all(ys)) != m:
                    return False
        return True

    def is_semidistributive(self) -> bool:
        return self.is_join_semidistributive() and self.is_meet_semidistributive()


# labeled checks


@dataclass
class LabelingReport:
    ok: bool = True
    failures: list = field(default_factory=list)

    def fail(self, axiom: str, witness: Any) -> None:
        self.ok = False
        self.failures.append((axiom, witness))

    def axioms_failed(self) -> set:
        return {a for a, _ in self.failures}


def _maximal_chains(L: FiniteLattice, lo: int, hi: int, limit: int = 10000) -> list:
    allowed = L.down[hi]
    out: list = []
    stack = [[lo]]
    while stack:
        chain = stack.pop()
        x = chain[-1]
        if x == hi:
            out.append(chain)
            if len(out) > limit:
                raise RuntimeError("too many maximal chains")
            continue
        for y in L.up_covers[x]:
            if (allowed >> y) & 1:
                stack.append(chain + [y])
    return out


def _check_cn_one_side(L: FiniteLattice, leq: Callable | None, report: LabelingReport, side: str) -> None:
    lab = L.labels
    for z in range(L.n):
        ups = L.up_covers[z]
        if len(ups) < 2:
            continue
        for x, y in combinations(ups, 2):
            top = L.join(x, y)
            outer = (lab[(z, x)], lab[(z, y)])
            for chain in _maximal_chains(L, z, top):
                first = chain[1]
                other = y if first == x else x
                if lab[(chain[-2], top)] != lab[(z, other)]:
                    report.fail("CN1", (side, z, x, y))
                chain_labels = [lab[(a, b)] for a, b in zip(chain, chain[1:])]
                if len(set(chain_labels)) != len(chain_labels):
                    report.fail("CN3", (side, z, x, y))
                for inner in chain_labels[1:-1]:
                    for o in outer:
                        # without a label order only distinctness is checked
                        if o == inner or (leq is not None and not leq(o, inner)):
                            report.fail("CN2", (side, z, x, y, inner))


def check_cn_labeling(L: FiniteLattice, label_leq: Callable | None = None) -> LabelingReport:
    leq = label_leq or L.label_leq
    report = LabelingReport()
    _check_cn_one_side(L, leq, report, "lattice")
    _check_cn_one_side(L.dual(), leq, report, "dual")
    return report


def check_cu_labeling(L: FiniteLattice, label_leq: Callable | None = None) -> LabelingReport:
    report = check_cn_labeling(L, label_leq)
    seen: dict = {}
    for j in L.join_irreducibles():
        lab = L.labels[(L.down_covers[j][0], j)]
        if lab in seen:
            report.fail("CU1", (seen[lab], j))
        seen[lab] = j
    seen = {}
    for m in L.meet_irreducibles():
        lab = L.labels[(m, L.up_covers[m][0])]
        if lab in seen:
            report.fail("CU2", (seen[lab], m))
        seen[lab] = m
    return report


# congruences


@dataclass(frozen=True)
class Congruence:
    class_of: tuple  # element index -> class index

    @property
    def classes(self) -> list:
        out: dict = defaultdict(list)
        for x, c in enumerate(self.class_of):
            out[c].append(x)
        return [out[c] for c in sorted(out)]


def congruence_from_key(L: FiniteLattice, key: Callable[[int], Hashable]) -> Congruence:
    ids: dict = {}
    cls = []
    for x in range(L.n):
        k = key(x)
        if k not in ids:
            ids[k] = len(ids)
        cls.append(ids[k])
    return Congruence(tuple(cls))


def validate_congruence(L: FiniteLattice, theta: Congruence) -> bool:
    """Classes are intervals and the class min/max maps are order preserving."""
    lo, hi = {}, {}
    for members in theta.classes:
        mask = 0
        for x in members:
            mask |= 1 << x
        a = L.meet_all(members)
        b = L.join_all(members)
        if (mask >> a) & 1 == 0 or (mask >> b) & 1 == 0:
            return False
        if L.up[a] & L.down[b] != mask:
            return False
        for x in members:
            lo[x], hi[x] = a, b
    for a, b in L.covers:
        if not (L.leq(lo[a], lo[b]) and L.leq(hi[a], hi[b])):
            return False
    return True


def quotient(L: FiniteLattice, theta: Congruence, validate: bool = True) -> FiniteLattice:
    if validate and not validate_congruence(L, theta):
        raise NotACongruence("classes are not intervals with monotone min/max maps")
    classes = theta.classes
    cls = theta.class_of
    covers = set()
    labels: dict = {}
    for a, b in L.covers:
        ca, cb = cls[a], cls[b]
        if ca == cb:
            continue
        covers.add((ca, cb))
        if L.labels is not None:
            lab = L.labels[(a, b)]
            if labels.setdefault((ca, cb), lab) != lab:
                raise NotACongruence(f"covers between classes {ca}, {cb} carry different labels")
    return FiniteLattice(
        [tuple(L.elements[x] for x in members) for members in classes],
        sorted(covers),
        labels=labels if L.labels is not None else None,
        label_leq=L.label_leq,
        validate=validate,
    )


def con(L: FiniteLattice, a: int, b: int, max_class: int | None = None) -> Congruence | None:
    """Finest congruence identifying ``a`` and ``b``.

    With ``max_class`` set, returns None as soon as a class grows larger.
    """
    parent = list(range(L.n))
    size = [1] * L.n

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    work: list = []

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return True
        if size[rx] < size[ry]:
            rx, ry = ry, rx
        parent[ry] = rx
        size[rx] += size[ry]
        work.append((x, y))
        return max_class is None or size[rx] <= max_class

    if not union(a, b):
        return None
    while work:
        x, y = work.pop()
        for z in range(L.n):
            if not union(L.join(x, z), L.join(y, z)):
                return None
            if not union(L.meet(x, z), L.meet(y, z)):
                return None
    return congruence_from_key(L, find)


# doublings


def doubling(L: FiniteLattice, lo: int, hi: int) -> FiniteLattice:
    """Double ``L`` at the closed interval ``[lo, hi]``.

    Elements of the result are pairs ``(x, bit)`` with ``x`` an element index
    of ``L``, ordered componentwise.
    """
    if not L.leq(lo, hi):
        raise NotAnInterval(f"{lo} is not below {hi}")
    interval = L.up[lo] & L.down[hi]
    below = L.down[hi]
    elems = [(x, 0) for x in range(L.n) if (below >> x) & 1]
    elems += [(x, 1) for x in range(L.n) if not (below >> x) & 1 or (interval >> x) & 1]
    return FiniteLattice.from_order(elems, lambda e, f: L.leq(e[0], f[0]) and e[1] <= f[1])


@dataclass(frozen=True)
class DoublingStep:
    before: FiniteLattice
    lo: int
    hi: int


def _doubling_witness(L: FiniteLattice, theta: Congruence, K: FiniteLattice) -> tuple | None:
    """If ``L`` is ``K`` doubled at an interval with ``theta`` collapsing the
    doubled pairs, return that interval."""
    cls = theta.class_of
    classes = theta.classes
    doubled = [c for c, members in enumerate(classes) if len(members) == 2]
    if not doubled:
        return None
    # K was built from classes in the given order; map class index to K index
    kidx = {members_tuple: i for i, members_tuple in enumerate(K.elements)}
    to_k = [kidx[tuple(L.elements[x] for x in members)] for members in classes]
    dmask = 0
    for c in doubled:
        dmask |= 1 << to_k[c]
    lo = K.meet_all(to_k[c] for c in doubled)
    hi = K.join_all(to_k[c] for c in doubled)
    if K.up[lo] & K.down[hi] != dmask:
        return None
    below = K.down[hi]
    bit = [0] * L.n
    for members in classes:
        if len(members) == 2:
            a, b = members if L.leq(members[0], members[1]) else members[::-1]
            bit[a], bit[b] = 0, 1
        else:
            (x,) = members
            bit[x] = 0 if (below >> to_k[cls[x]]) & 1 else 1
    # expected up-set of x: y with class(y) >= class(x) and bit(y) >= bit(x)
    members_of_k: dict = defaultdict(int)
    for y in range(L.n):
        members_of_k[to_k[cls[y]]] |= 1 << y
    bit1 = 0
    for y in range(L.n):
        if bit[y]:
            bit1 |= 1 << y
    for x in range(L.n):
        kx = to_k[cls[x]]
        exp = 0
        for kc in _bits(K.up[kx]):
            exp |= members_of_k[kc]
        if bit[x]:
            exp &= bit1
        if exp != L.up[x]:
            return None
    return lo, hi


def find_doubling_sequence(L: FiniteLattice) -> list | None:
    """Doubling steps building ``L`` from the one-element lattice, or None."""
    steps: list = []
    cur = L
    while cur.n > 1:
        found = None
        for j in reversed(cur.join_irreducibles()):
            theta = con(cur, cur.down_covers[j][0], j, max_class=2)
            if theta is None:
                continue
            K = quotient(cur, theta, validate=False)
            w = _doubling_witness(cur, theta, K)
            if w is not None:
                found = (K, w)
                break
        if found is None:
            return None
        K, (lo, hi) = found
        steps.append(DoublingStep(K, lo, hi))
        cur = K
    return steps[::-1]


# congruence-uniform tools


def canonical_join_rep(L: FiniteLattice, x: int) -> list:
    lows = L.lower_labels(x)
    return [j for j in L.join_irreducibles() if L.labels[(L.down_covers[j][0], j)] in lows]


def canonical_meet_rep(L: FiniteLattice, x: int) -> list:
    ups = L.upper_labels(x)
    return [m for m in L.meet_irreducibles() if L.labels[(m, L.up_covers[m][0])] in ups]


def kreweras_map(L: FiniteLattice, x: int) -> int:
    table = _lower_label_table(L)
    return table[L.upper_labels(x)]


def _lower_label_table(L: FiniteLattice) -> dict:
    table = L.__dict__.get("_krtab")
    if table is None:
        table = {}
        for y in range(L.n):
            key = L.lower_labels(y)
            if key in table:
                raise ValueError("two elements share their lower label sets")
            table[key] = y
        L.__dict__["_krtab"] = table
    return table


def psi(L: FiniteLattice, x: int) -> frozenset:
    lows = L.down_covers[x]
    if not lows:
        return frozenset()
    m = L.meet_all(lows)
    inside = L.up[m] & L.down[x]
    out = set()
    for w in _bits(inside):
        for z in L.up_covers[w]:
            if (inside >> z) & 1:
                out.add(L.labels[(w, z)])
    return frozenset(out)


@dataclass(frozen=True)
class ShardOrder:
    sets: tuple  # psi(x) for each element x of the lattice
    covers: tuple  # cover pairs of the inclusion order on element indices

    def is_lattice(self) -> bool:
        try:
            FiniteLattice(list(range(len(self.sets))), self.covers)
        except (NotALattice, NotAcyclic):
            return False
        return True

    def as_lattice(self) -> FiniteLattice:
        return FiniteLattice(list(self.sets), self.covers)


def shard_order(L: FiniteLattice) -> ShardOrder:
    sets = tuple(psi(L, x) for x in range(L.n))
    P = FiniteLattice.from_order(list(range(L.n)), lambda a, b: sets[a] <= sets[b], validate=False)
    covers = tuple(sorted((P.elements[a], P.elements[b]) for a, b in P.covers))
    return ShardOrder(sets, covers)


def are_associates(L: FiniteLattice, c1: tuple, c2: tuple) -> bool:
    (x, y), (w, z) = c1, c2
    return (L.meet(y, w) == x and L.join(y, w) == z) or (L.meet(x, z) == w and L.join(x, z) == y)


def check_facial_intervals(L: FiniteLattice) -> bool:
    """If ``y`` is the join of some upper covers of ``x``, lower covers of ``y``
    with matching labels meet to ``x``."""
    for x in range(L.n):
        ups = L.up_covers[x]
        for r in range(1, len(ups) + 1):
            for atoms in combinations(ups, r):
                y = L.join_all(atoms)
                want = {L.labels[(x, a)] for a in atoms}
                cs = [c for c in L.down_covers[y] if L.labels[(c, y)] in want]
                if {L.labels[(c, y)] for c in cs} != want:
                    return False
                if L.meet_all(cs) != x:
                    return False
    return True


# isomorphism


def isomorphic(L1: FiniteLattice, L2: FiniteLattice, match_labels: bool = False) -> bool:
    if L1.n != L2.n or len(L1.covers) != len(L2.covers):
        return False
    g1, g2 = L1.hasse(match_labels), L2.hasse(match_labels)
    if match_labels:
        return nx.is_isomorphic(g1, g2, edge_match=lambda a, b: a["label"] == b["label"])
    return nx.is_isomorphic(g1, g2)


def same_labeled_lattice(L1: FiniteLattice, L2: FiniteLattice, key1: Callable, key2: Callable) -> bool:
    """Equality of labeled Hasse diagrams after renaming elements by keys."""
    e1 = {(key1(a), key1(b), L1.labels[(a, b)]) for a, b in L1.covers}
    e2 = {(key2(a), key2(b), L2.labels[(a, b)]) for a, b in L2.covers}
    return e1 == e2 and {key1(x) for x in range(L1.n)} == {key2(x) for x in range(L2.n)}


def product(*lattices: FiniteLattice) -> FiniteLattice:
    """Componentwise-ordered product; elements are tuples of element indices."""
    from itertools import product as cartesian

    elems = list(cartesian(*[range(L.n) for L in lattices]))
    pos = {e: i for i, e in enumerate(elems)}
    covers = []
    for e in elems:
        for k, L in enumerate(lattices):
            for y in L.up_covers[e[k]]:
                covers.append((pos[e], pos[e[:k] + (y,) + e[k + 1 :]]))
    return FiniteLattice(elems, covers, validate=False)


def chain(n: int) -> FiniteLattice:
    return FiniteLattice(list(range(n)), [(i, i + 1) for i in range(n - 1)])


def boolean(k: int) -> FiniteLattice:
    elems = list(range(1 << k))
    covers = [(x, x | (1 << i)) for x in elems for i in range(k) if not x >> i & 1]
    return FiniteLattice(elems, covers)


def build(elements: Sequence[Any], covers: Iterable[tuple], **kw) -> FiniteLattice:
    return FiniteLattice(elements, covers, **kw)


def join_irreducibles(L: FiniteLattice) -> list:
    return L.join_irreducibles()


def meet_irreducibles(L: FiniteLattice) -> list:
    return L.meet_irreducibles()
