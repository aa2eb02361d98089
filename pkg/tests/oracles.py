"""Independent brute-force oracles used only by the test suite."""

from __future__ import annotations

from collections import deque
from itertools import product

from flipgraph.embedded_tree import EmbeddedTree, edge_key


def _face_route(t: EmbeddedTree, cs) -> list:
    """Faces and crossed edges of the reduced route of a colored curve."""
    c0, c1 = cs.endpoints
    adj: dict = {}
    for u, v in cs.segment.edges:
        a, b = t.face_left(u, v), t.face_right(u, v)
        adj.setdefault(a, []).append((b, (u, v)))
        adj.setdefault(b, []).append((a, (u, v)))
    prev = {c0.face: None}
    queue = deque([c0.face])
    while queue:
        f = queue.popleft()
        for g, e in adj.get(f, []):
            if g not in prev:
                prev[g] = (f, e)
                queue.append(g)
    steps = []
    f = c1.face
    while prev[f] is not None:
        g, e = prev[f]
        steps.append((g, e, f))
        f = g
    return steps[::-1]


def _chords(t: EmbeddedTree, cs, tag) -> dict:
    """Per face, the chords drawn by the curve as pairs of boundary tokens."""
    c0, c1 = cs.endpoints
    route = _face_route(t, cs)
    out: dict = {}
    cur_face, cur_tok = c0.face, ("z", c0.vertex)
    for f, e, g in route:
        tok = ("x", e, tag)
        out.setdefault(f, []).append((cur_tok, tok))
        cur_face, cur_tok = g, tok
    out.setdefault(cur_face, []).append((cur_tok, ("z", c1.vertex)))
    return out


def _face_order(t: EmbeddedTree, f, near_u: dict) -> dict:
    """Boundary position of every token of face ``f``.

    ``near_u[e]`` lists the curve tags crossing edge ``e`` ordered from the
    first endpoint of the canonical edge key.
    """
    w = t.face_walk(f)
    pos, k = {}, 0
    for a, b in zip(w, w[1:]):
        e = edge_key(a, b)
        tags = list(near_u.get(e, []))
        if e != (a, b):
            tags.reverse()
        for tag in tags:
            pos[("x", e, tag)] = k
            k += 1
        if not t.is_leaf(b):
            pos[("z", b)] = k
            k += 1
    return pos


def colored_cross_by_contour(t: EmbeddedTree, a, b) -> bool:
    if set(a.endpoints) & set(b.endpoints):
        return True
    ca, cb = _chords(t, a, "A"), _chords(t, b, "B")
    shared = sorted(set(a.segment.edges) & set(b.segment.edges))
    for bits in product((0, 1), repeat=len(shared)):
        near_u = {e: (["A", "B"] if bit else ["B", "A"]) for e, bit in zip(shared, bits)}
        for e in set(a.segment.edges) - set(shared):
            near_u[e] = ["A"]
        for e in set(b.segment.edges) - set(shared):
            near_u[e] = ["B"]
        ok = True
        for f in set(ca) & set(cb):
            pos = _face_order(t, f, near_u)
            for x1, x2 in ca[f]:
                lo, hi = sorted((pos[x1], pos[x2]))
                for y1, y2 in cb[f]:
                    inside = (lo < pos[y1] < hi) + (lo < pos[y2] < hi)
                    if inside == 1:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            return False
    return True


# linear algebra over a prime field for string modules

PRIME = 10007


def rank_mod_p(rows: list, ncols: int, p: int = PRIME) -> int:
    m = [[x % p for x in r] for r in rows]
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def tree_quiver(t: EmbeddedTree) -> tuple:
    """Arrows (source edge, target edge) and length-two relations of the tiling algebra."""
    interior = set(t.interior_edges)
    arrows = []
    for v in t.interior_vertices:
        for a in t.neighbors(v):
            b = t.succ(v, a)
            e1, e2 = edge_key(v, a), edge_key(v, b)
            if e1 in interior and e2 in interior:
                arrows.append((e1, e2, v))
    relations = [(x, y) for x in arrows for y in arrows if x[1] == y[0] and x[2] == y[2]]
    return arrows, relations


def string_representation(t: EmbeddedTree, seg) -> dict:
    """Dimension 1 on the edges of the segment, identity on arrows inside it."""
    support = set(seg.edges)
    arrows, _ = tree_quiver(t)
    dims = {e: int(e in support) for e in t.interior_edges}
    maps = {a: [[1]] if a[0] in support and a[1] in support else [[0] * dims[a[0]] for _ in range(dims[a[1]])] for a in arrows}
    return {"dims": dims, "maps": maps}


def _entry(mat, i, j):
    return mat[i][j] if mat and mat[0] else 0


def _delta_rows(t: EmbeddedTree, M: dict, N: dict) -> tuple:
    """Matrix of h -> (N_a h_s - h_t M_a) with columns indexed by the entries of h."""
    arrows, _ = tree_quiver(t)
    hcols = {}
    for e in t.interior_edges:
        for i in range(N["dims"][e]):
            for j in range(M["dims"][e]):
                hcols[(e, i, j)] = len(hcols)
    rows = []
    for a in arrows:
        s, tt, _ = a
        Na, Ma = N["maps"][a], M["maps"][a]
        for i in range(N["dims"][tt]):
            for j in range(M["dims"][s]):
                row = [0] * len(hcols)
                for k in range(N["dims"][s]):
                    row[hcols[(s, k, j)]] += _entry(Na, i, k)
                for k in range(M["dims"][tt]):
                    row[hcols[(tt, i, k)]] -= _entry(Ma, k, j)
                rows.append(row)
    return rows, len(hcols)


def hom_dim_linear(t: EmbeddedTree, M: dict, N: dict) -> int:
    rows, n = _delta_rows(t, M, N)
    return n - rank_mod_p(rows, n)


def ext_dim_linear(t: EmbeddedTree, M: dict, N: dict) -> int:
    """dim Ext^1(M, N): cocycles compatible with the relations modulo coboundaries."""
    arrows, relations = tree_quiver(t)
    dcols = {}
    for a in arrows:
        for i in range(N["dims"][a[1]]):
            for j in range(M["dims"][a[0]]):
                dcols[(a, i, j)] = len(dcols)
    rows = []
    for b, a in relations:  # b: e1 -> e2, a: e2 -> e3; the composite a.b must vanish
        e1, e3 = b[0], a[1]
        for i in range(N["dims"][e3]):
            for j in range(M["dims"][e1]):
                row = [0] * len(dcols)
                for k in range(N["dims"][b[1]]):
                    row[dcols[(b, k, j)]] += _entry(N["maps"][a], i, k)
                for k in range(M["dims"][a[0]]):
                    row[dcols[(a, i, k)]] += _entry(M["maps"][b], k, j)
                rows.append(row)
    cocycles = len(dcols) - rank_mod_p(rows, len(dcols))
    drows, hn = _delta_rows(t, M, N)
    coboundaries = rank_mod_p(drows, hn)
    return cocycles - coboundaries


# brute-force combinatorics


def _graph(t: EmbeddedTree):
    import networkx as nx

    return nx.Graph(list(t.edges))


def _bends_ok(t: EmbeddedTree, path) -> bool:
    for x, v, y in zip(path, path[1:], path[2:]):
        nb = list(t.neighbors(v))
        i = nb.index(x)
        if y not in (nb[(i + 1) % len(nb)], nb[(i - 1) % len(nb)]):
            return False
    return True


def brute_segments(t: EmbeddedTree) -> set:
    """Paths between interior vertices, as vertex tuples with the smaller end first."""
    import networkx as nx

    g = _graph(t)
    inner = set(t.interior_vertices)
    out = set()
    for u in inner:
        for v in inner:
            if u == v:
                continue
            p = nx.shortest_path(g, u, v)
            if set(p) <= inner and _bends_ok(t, p):
                out.add(min(tuple(p), tuple(reversed(p)), key=_endkey))
    return out


def brute_arcs(t: EmbeddedTree) -> set:
    import networkx as nx

    g = _graph(t)
    out = set()
    for u in t.leaves:
        for v in t.leaves:
            if u != v:
                p = nx.shortest_path(g, u, v)
                if _bends_ok(t, p):
                    out.add(min(tuple(p), tuple(reversed(p)), key=_pathkey))
    return out


def _endkey(p):
    from flipgraph.embedded_tree import vkey

    return (vkey(p[0]), vkey(p[-1]))


def _pathkey(p):
    from flipgraph.embedded_tree import vkey

    return tuple(vkey(v) for v in p)


def brute_facets(t: EmbeddedTree, crosses) -> set:
    """Maximal pairwise-noncrossing arc sets, as frozensets of vertex tuples.

    ``crosses(p, q)`` decides crossing; maximality is found by clique search.
    """
    import networkx as nx

    arcs = sorted(brute_arcs(t), key=_pathkey)
    g = nx.Graph()
    g.add_nodes_from(arcs)
    for i, p in enumerate(arcs):
        for q in arcs[i + 1 :]:
            if not crosses(p, q):
                g.add_edge(p, q)
    return {frozenset(c) for c in nx.find_cliques(g)}


def brute_compositions(t: EmbeddedTree, segs) -> dict:
    """(a, b) -> c whenever a and b meet end to end and their union is the segment c."""
    segs = set(segs)
    out = {}
    for a in segs:
        for b in segs:
            if a >= b:
                continue
            for pa in (a, a[::-1]):
                for pb in (b, b[::-1]):
                    if pa[-1] == pb[0] and not set(pa[:-1]) & set(pb):
                        joined = pa + pb[1:]
                        c = min(joined, joined[::-1], key=_endkey)
                        if c in segs:
                            out[(a, b)] = c
    return out


def brute_biclosed(t: EmbeddedTree) -> set:
    """Every subset of segments that is closed with a closed complement."""
    segs = sorted(brute_segments(t), key=_endkey)
    comp = brute_compositions(t, segs)
    out = set()
    for bits in product((0, 1), repeat=len(segs)):
        S = {s for s, b in zip(segs, bits) if b}
        ok = True
        for (a, b), c in comp.items():
            if (a in S and b in S and c not in S) or (a not in S and b not in S and c in S):
                ok = False
                break
        if ok:
            out.add(frozenset(S))
    return out


def noncrossing_set_partitions(n: int) -> list:
    """Noncrossing partitions of 1..n as tuples of tuples."""
    def parts(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for p in parts(rest):
            for i in range(len(p)):
                yield p[:i] + [[first] + p[i]] + p[i + 1 :]
            yield [[first]] + p

    def crossing(p):
        for A in p:
            for B in p:
                if A is B:
                    continue
                for a1 in A:
                    for a2 in A:
                        for b1 in B:
                            for b2 in B:
                                if a1 < b1 < a2 < b2:
                                    return True
        return False

    return [tuple(sorted(tuple(sorted(b)) for b in p)) for p in parts(list(range(1, n + 1))) if not crossing(p)]


# framed quiver mutation


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def fz_mutate(B: list, k: int) -> list:
    """Matrix mutation in the sign-max form b + sgn(b_ik) max(b_ik b_kj, 0)."""
    n = len(B)
    m = len(B[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            else:
                out[i][j] = B[i][j] + _sign(B[i][k]) * max(B[i][k] * B[k][j], 0)
    return out


def framed_c_matrices(n: int, arrows) -> tuple:
    """c-matrices (rows sorted) of the framed quiver and the oriented exchange graph.

    ``arrows`` are (source, target) pairs of indices in range(n). Edges of the
    graph go from a seed to its mutation at k when the k-th c-vector is positive.
    """
    import networkx as nx

    B = [[0] * (2 * n) for _ in range(n)]
    for s, d in arrows:
        B[s][d] += 1
        B[d][s] -= 1
    for i in range(n):
        B[i][n + i] = 1

    def key(M):
        return tuple(sorted(tuple(r[n:]) for r in M))

    start = key(B)
    seen = {start: B}
    queue = deque([B])
    g = nx.DiGraph()
    g.add_node(start)
    while queue:
        M = queue.popleft()
        for k in range(n):
            N = fz_mutate(M, k)
            kn = key(N)
            if kn not in seen:
                seen[kn] = N
                queue.append(N)
            if all(x >= 0 for x in M[k][n:]):
                g.add_edge(key(M), kn)
    return set(seen), g


# torsion-free classes from linear Hom


def torsion_free_by_perp(modules: list, hom) -> set:
    """All classes (perp-left of S) perp-right over subsets S, Hom given by ``hom(i, j)``."""
    n = len(modules)
    H = [[hom(i, j) for j in range(n)] for i in range(n)]
    out = set()
    for bits in product((0, 1), repeat=n):
        S = [i for i in range(n) if bits[i]]
        torsion = [i for i in range(n) if all(H[i][j] == 0 for j in S)]
        free = frozenset(modules[j] for j in range(n) if all(H[i][j] == 0 for i in torsion))
        out.add(free)
    return out
