"""Biclosed sets of segments and their relation to facets.

A set of segments is closed when it contains every admissible concatenation
of two of its members, and biclosed when its complement is closed as well.
Sets are handled as bitmasks over the sorted segment list of the tree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .embedded_tree import EmbeddedTree
from .lattice import Congruence, FiniteLattice, congruence_from_key
from .ncc import Facet, eta_from_segments, tree_segments
from .seg_arc import Segment, compose, cp_kp, cs_ks, is_subsegment


class PreconditionViolated(ValueError):
    pass


@dataclass(frozen=True)
class SegmentIndex:
    segments: tuple
    index: dict
    triples: tuple  # (i, j, k) with segments[i] o segments[j] == segments[k], i < j
    by_part: tuple  # per segment: triples in which it is a factor
    by_whole: tuple  # per segment: triples in which it is the composite
    c_masks: tuple
    k_masks: tuple

    def mask(self, segs: Iterable[Segment]) -> int:
        m = 0
        for s in segs:
            m |= 1 << self.index[s]
        return m

    def unmask(self, m: int) -> frozenset:
        return frozenset(s for i, s in enumerate(self.segments) if (m >> i) & 1)

    @property
    def full(self) -> int:
        return (1 << len(self.segments)) - 1


@lru_cache(maxsize=64)
def segment_index(t: EmbeddedTree) -> SegmentIndex:
    segs = tree_segments(t)
    idx = {s: i for i, s in enumerate(segs)}
    triples = []
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            c = compose(t, segs[i], segs[j])
            if c is not None:
                triples.append((i, j, idx[c]))
    by_part: list = [[] for _ in segs]
    by_whole: list = [[] for _ in segs]
    for tr in triples:
        by_part[tr[0]].append(tr)
        by_part[tr[1]].append(tr)
        by_whole[tr[2]].append(tr)
    cm, km = [], []
    for s in segs:
        c, k = cs_ks(t, s)
        cm.append(sum(1 << idx[x] for x in c))
        km.append(sum(1 << idx[x] for x in k))
    return SegmentIndex(
        segs, idx, tuple(triples), tuple(map(tuple, by_part)), tuple(map(tuple, by_whole)), tuple(cm), tuple(km)
    )


def _closure_mask(ix: SegmentIndex, m: int, triples=None) -> int:
    triples = ix.triples if triples is None else triples
    changed = True
    while changed:
        changed = False
        for i, j, k in triples:
            if (m >> i) & 1 and (m >> j) & 1 and not (m >> k) & 1:
                m |= 1 << k
                changed = True
    return m


def _is_closed(m: int, triples) -> bool:
    for i, j, k in triples:
        if (m >> i) & 1 and (m >> j) & 1 and not (m >> k) & 1:
            return False
    return True


def _is_biclosed_mask(ix: SegmentIndex, m: int, triples=None, full: int | None = None) -> bool:
    triples = ix.triples if triples is None else triples
    full = ix.full if full is None else full
    return _is_closed(m, triples) and _is_closed(full & ~m, triples)


def closure(t: EmbeddedTree, X: Iterable[Segment]) -> frozenset:
    ix = segment_index(t)
    return ix.unmask(_closure_mask(ix, ix.mask(X)))


def is_biclosed(t: EmbeddedTree, X: Iterable[Segment]) -> bool:
    ix = segment_index(t)
    return _is_biclosed_mask(ix, ix.mask(X))


def _can_add(ix: SegmentIndex, m: int, s: int) -> bool:
    """Whether ``m | {s}`` stays biclosed, given that ``m`` is biclosed."""
    new = m | (1 << s)
    for i, j, k in ix.by_part[s]:
        if (new >> i) & 1 and (new >> j) & 1 and not (new >> k) & 1:
            return False
    for i, j, k in ix.by_whole[s]:
        if not (new >> i) & 1 and not (new >> j) & 1:
            return False
    return True


@lru_cache(maxsize=32)
def _bic_masks(t: EmbeddedTree) -> tuple:
    ix = segment_index(t)
    seen = {0}
    order = [0]
    covers = []
    queue = deque([0])
    while queue:
        m = queue.popleft()
        for s in range(len(ix.segments)):
            if (m >> s) & 1 or not _can_add(ix, m, s):
                continue
            n = m | (1 << s)
            covers.append((m, n, s))
            if n not in seen:
                seen.add(n)
                order.append(n)
                queue.append(n)
    return tuple(order), tuple(covers)


def enumerate_biclosed(t: EmbeddedTree) -> FiniteLattice:
    """All biclosed sets, covers by single additions labeled with the added segment."""
    ix = segment_index(t)
    masks, covers = _bic_masks(t)
    pos = {m: i for i, m in enumerate(masks)}
    return FiniteLattice(
        [ix.unmask(m) for m in masks],
        [(pos[a], pos[b]) for a, b, _ in covers],
        labels={(pos[a], pos[b]): ix.segments[s] for a, b, s in covers},
        label_leq=is_subsegment,
        validate=True,
    )


def biclosed_masks(t: EmbeddedTree) -> tuple:
    return _bic_masks(t)[0]


def pi_down(t: EmbeddedTree, X: Iterable[Segment]) -> frozenset:
    ix = segment_index(t)
    return ix.unmask(_pi_down_mask(ix, ix.mask(X)))


def pi_up(t: EmbeddedTree, X: Iterable[Segment]) -> frozenset:
    ix = segment_index(t)
    return ix.unmask(_pi_up_mask(ix, ix.mask(X)))


def _pi_down_mask(ix: SegmentIndex, m: int) -> int:
    out = 0
    for i in range(len(ix.segments)):
        if (m >> i) & 1 and ix.c_masks[i] & ~m == 0:
            out |= 1 << i
    return out


def _pi_up_mask(ix: SegmentIndex, m: int) -> int:
    out = 0
    for i in range(len(ix.segments)):
        if ix.k_masks[i] & m:
            out |= 1 << i
    return out


def theta_congruence(t: EmbeddedTree, L: FiniteLattice | None = None) -> Congruence:
    """Congruence on the biclosed lattice whose classes are the fibers of pi_down."""
    L = enumerate_biclosed(t) if L is None else L
    ix = segment_index(t)
    return congruence_from_key(L, lambda x: _pi_down_mask(ix, ix.mask(L.elements[x])))


def theta_classes(t: EmbeddedTree, L: FiniteLattice | None = None) -> list:
    L = enumerate_biclosed(t) if L is None else L
    return [[L.elements[x] for x in cls] for cls in theta_congruence(t, L).classes]


def eta(t: EmbeddedTree, X: Iterable[Segment]) -> Facet:
    return eta_from_segments(t, X)


def phi(t: EmbeddedTree, f: Facet) -> frozenset:
    parts: set = set()
    for p in f.arcs:
        parts |= cp_kp(t, p)[0]
    return closure(t, parts)


def c_set(t: EmbeddedTree, s: Segment) -> frozenset:
    return cs_ks(t, s)[0]


def join_by_formula(t: EmbeddedTree, W: Iterable[Segment], X: Iterable[Segment], Y: Iterable[Segment]) -> frozenset:
    """``W`` together with the closure of ``(X | Y) - W``."""
    W = frozenset(W)
    return W | closure(t, (frozenset(X) | frozenset(Y)) - W)


# facial intervals


@dataclass(frozen=True)
class FacialInterval:
    blocks: tuple  # partition of the given segments
    block_closures: tuple
    interval: tuple  # biclosed sets between W and W + closure(singles)
    factors: tuple  # per block, the biclosed subsets of its closure
    witness: dict  # interval element -> tuple of block components

    def is_isomorphism(self) -> bool:
        images = list(self.witness.values())
        if len(set(images)) != len(images):
            return False
        product_size = 1
        for f in self.factors:
            product_size *= len(f)
        if product_size != len(images):
            return False
        for comps in images:
            if any(c not in fac for c, fac in zip(comps, self.factors)):
                return False
        # inclusion is componentwise on both sides
        items = list(self.witness.items())
        for X, cx in items:
            for Y, cy in items:
                if (X <= Y) != all(a <= b for a, b in zip(cx, cy)):
                    return False
        return True


def _biclosed_subsets(t: EmbeddedTree, ground: frozenset) -> list:
    ix = segment_index(t)
    gmask = ix.mask(ground)
    triples = [tr for tr in ix.triples if all((gmask >> x) & 1 for x in tr)]
    members = [i for i in range(len(ix.segments)) if (gmask >> i) & 1]
    out = []
    for r in range(1 << len(members)):
        m = 0
        for b, i in enumerate(members):
            if (r >> b) & 1:
                m |= 1 << i
        if _is_biclosed_mask(ix, m, triples, gmask):
            out.append(ix.unmask(m))
    return out


def facial_interval(t: EmbeddedTree, W: Iterable[Segment], singles: Iterable[Segment]) -> FacialInterval:
    W = frozenset(W)
    singles = sorted(set(singles))
    for s in singles:
        if s in W or not is_biclosed(t, W | {s}):
            raise PreconditionViolated(f"W + {s!r} is not a biclosed set")
    if not is_biclosed(t, W):
        raise PreconditionViolated("W is not biclosed")
    parent = {s: s for s in singles}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for i, a in enumerate(singles):
        for b in singles[i + 1 :]:
            if compose(t, a, b) is not None:
                parent[find(a)] = find(b)
    groups: dict = {}
    for s in singles:
        groups.setdefault(find(s), []).append(s)
    blocks = tuple(sorted((tuple(sorted(g)) for g in groups.values()), key=lambda g: g[0].sort_key()))
    closures = tuple(closure(t, b) for b in blocks)
    top = W | closure(t, singles)
    L = enumerate_biclosed(t)
    interval = tuple(X for X in L.elements if W <= X <= top)
    witness = {X: tuple(X & c for c in closures) for X in interval}
    factors = tuple(tuple(_biclosed_subsets(t, c)) for c in closures)
    return FacialInterval(blocks, closures, interval, factors, witness)
