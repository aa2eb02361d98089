"""Brute-force property suite for a single embedded tree.

Each check returns a list of failure messages; an empty list means it passed.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable

from .biclosed import enumerate_biclosed, eta, phi, pi_down, theta_congruence
from .embedded_tree import EmbeddedTree
from .lattice import (
    check_cn_labeling,
    check_cu_labeling,
    find_doubling_sequence,
    isomorphic,
    kreweras_map,
    quotient,
    shard_order,
    validate_congruence,
)
from .ncc import facet_size, flip_lattice, oriented_flip_graph
from .ncp import enumerate_ncp, kreweras_by_lattice, kreweras_complement, partition_from_segments, rho
from .polyio import facet_to_subdivision, rotate, tree_to_subdivision
from .tiling import (
    LEFT_MUTATION,
    RIGHT_MUTATION,
    NotSMC,
    c_matrices,
    is_2term_smc,
    is_extension_closed,
    is_submodule_closed,
    is_wide,
    mutate,
    oriented_exchange_graph,
    smc_collections,
    smc_lattice,
    torsion_free_classes,
    torsion_free_classes_by_closure,
    wide_subcategories,
    wide_subcategory,
    zeta,
)


def _degree_three(t: EmbeddedTree) -> bool:
    return all(t.degree(v) == 3 for v in t.interior_vertices)


def check_pure_thin(t: EmbeddedTree) -> list:
    g = oriented_flip_graph(t)
    n = facet_size(t)
    out = [f"facet {i} has {len(f.nonboundary_arcs)} arcs, expected {n}" for i, f in enumerate(g.facets) if len(f.nonboundary_arcs) != n]
    ridges = Counter()
    for f in g.facets:
        arcs = frozenset(f.nonboundary_arcs)
        for p in arcs:
            ridges[arcs - {p}] += 1
    out += [f"ridge {sorted(r)} lies in {c} facets" for r, c in ridges.items() if c != 2]
    if 2 * n != len(t.corners()) - len(t.faces):
        out.append("facet size differs from half of corners minus faces")
    return out


def check_eta_phi(t: EmbeddedTree) -> list:
    g = oriented_flip_graph(t)
    out = [f"eta(phi(F)) != F for facet {i}" for i, f in enumerate(g.facets) if eta(t, phi(t, f)).arcs != f.arcs]
    for X in enumerate_biclosed(t).elements:
        if phi(t, eta(t, X)) != pi_down(t, X):
            out.append(f"phi(eta(X)) != pi_down(X) for X = {sorted(X)}")
    return out


def check_theta_quotient(t: EmbeddedTree) -> list:
    B = enumerate_biclosed(t)
    theta = theta_congruence(t, B)
    if not validate_congruence(B, theta):
        return ["Theta is not a lattice congruence"]
    Q = quotient(B, theta)
    FG = flip_lattice(t)
    # each class is named by the facet its members map to
    name = {x: eta(t, Q.elements[x][0]).arcs for x in range(Q.n)}
    fg_name = {x: FG.elements[x].arcs for x in range(FG.n)}
    e1 = {(name[a], name[b], Q.labels[(a, b)]) for a, b in Q.covers}
    e2 = {(fg_name[a], fg_name[b], FG.labels[(a, b)]) for a, b in FG.covers}
    out = []
    if set(name.values()) != set(fg_name.values()):
        out.append("quotient classes do not match facets")
    if e1 != e2:
        out.append("labeled Hasse diagram of the quotient differs from the flip graph")
    return out


def check_flip_lattice_labeling(t: EmbeddedTree) -> list:
    FG = flip_lattice(t)
    out = [f"flip lattice {a}: {w}" for a, w in check_cu_labeling(FG).failures]
    if not FG.is_semidistributive():
        out.append("flip lattice is not semidistributive")
    if find_doubling_sequence(FG) is None:
        out.append("flip lattice has no doubling sequence")
    return out


def check_biclosed_labeling(t: EmbeddedTree) -> list:
    """Labels of biclosed covers by the added segment: CN axioms and semidistributivity."""
    B = enumerate_biclosed(t)
    out = [f"biclosed lattice {a}: {w}" for a, w in check_cn_labeling(B).failures]
    if not B.is_semidistributive():
        out.append("biclosed lattice is not semidistributive")
    if find_doubling_sequence(B) is None:
        out.append("biclosed lattice has no doubling sequence")
    return out


def check_biclosed_cu(t: EmbeddedTree) -> list:
    """Literal CU axioms for the added-segment labeling of the biclosed lattice."""
    B = enumerate_biclosed(t)
    return [f"biclosed lattice {a}: {w}" for a, w in check_cu_labeling(B).failures]


def check_shard_ncp(t: EmbeddedTree) -> list:
    FG = flip_lattice(t)
    S = shard_order(FG)
    parts = [rho(t, f) for f in FG.elements]
    out = []
    if len(set(parts)) != FG.n or set(parts) != set(enumerate_ncp(t).elements):
        return ["rho is not a bijection onto noncrossing tree partitions"]
    for x in range(FG.n):
        if partition_from_segments(t, S.sets[x]) != parts[x]:
            out.append(f"shard labels of facet {x} do not span the blocks of its partition")
        for y in range(FG.n):
            if (S.sets[x] <= S.sets[y]) != parts[x].refines(parts[y]):
                out.append(f"order mismatch between facets {x} and {y}")
        if parts[kreweras_map(FG, x)] != kreweras_complement(t, parts[x]):
            out.append(f"rho does not commute with Kreweras at facet {x}")
    return out


def check_kreweras_routes(t: EmbeddedTree) -> list:
    return [
        f"Kreweras routes disagree at {P!r}"
        for P in enumerate_ncp(t).elements
        if kreweras_by_lattice(t, P) != kreweras_complement(t, P)
    ]


def check_torsion_free(t: EmbeddedTree) -> list:
    FG = flip_lattice(t)
    TF = torsion_free_classes(t)
    images = [zeta(t, f) for f in FG.elements]
    out = []
    if set(images) != set(TF.elements) or len(set(images)) != FG.n:
        out.append("zeta is not a bijection onto torsion-free classes")
    if set(torsion_free_classes_by_closure(t)) != set(TF.elements):
        out.append("closure enumeration finds different torsion-free classes")
    for x in range(FG.n):
        for y in range(FG.n):
            if FG.leq(x, y) != (images[x] <= images[y]):
                out.append(f"zeta does not preserve order at facets {x}, {y}")
    for F in TF.elements:
        if not (is_submodule_closed(t, F) and is_extension_closed(t, F)):
            out.append(f"{sorted(F)} is not closed under submodules and extensions")
    if not isomorphic(TF, FG):
        out.append("torsion-free lattice is not isomorphic to the flip graph")
    return out


def check_wide(t: EmbeddedTree) -> list:
    N = enumerate_ncp(t)
    W = wide_subcategories(t)
    cats = [wide_subcategory(t, P) for P in N.elements]
    out = []
    if len(set(cats)) != N.n:
        out.append("wide subcategories of distinct partitions coincide")
    for i, P in enumerate(N.elements):
        if not is_wide(t, cats[i]):
            out.append(f"wide subcategory of {P!r} is not wide")
        for j, Q in enumerate(N.elements):
            if P.refines(Q) != (cats[i] <= cats[j]):
                out.append(f"inclusion does not match refinement for {P!r}, {Q!r}")
    if W.n != N.n:
        out.append(f"{W.n} wide subcategories, {N.n} partitions")
    return out


def check_smc(t: EmbeddedTree) -> list:
    colls = set(smc_collections(t))
    out = []
    if len(colls) != enumerate_ncp(t).n:
        out.append("theta_map is not injective")
    for X in colls:
        if not is_2term_smc(t, X):
            out.append(f"{X!r} fails the simple-minded collection test")
        for k, (_, d) in enumerate(X.objects):
            direction = LEFT_MUTATION if d == 0 else RIGHT_MUTATION
            back = RIGHT_MUTATION if d == 0 else LEFT_MUTATION
            try:
                Y = mutate(t, X, k, direction)
            except NotSMC as exc:
                out.append(str(exc))
                continue
            if Y not in colls:
                out.append(f"mutating {X!r} at {k} leaves the set")
                continue
            s = X.objects[k][0]
            if mutate(t, Y, (s, -1 - d), back) != X:
                out.append(f"mutation at {k} of {X!r} is not undone")
    L = smc_lattice(t)
    if set(L.elements) != colls:
        out.append("left mutation from the simples does not reach every collection")
    elif not isomorphic(L, flip_lattice(t), match_labels=True):
        out.append("mutation lattice is not isomorphic to the flip graph")
    return out


def check_c_matrices(t: EmbeddedTree) -> list:
    if not _degree_three(t):
        return []
    cms = c_matrices(t)
    out = []
    for C in cms:
        if not C.is_sign_coherent():
            out.append(f"{C.as_lists()} is not sign-coherent")
        if not C.is_unimodular():
            out.append(f"{C.as_lists()} is not unimodular")
    if len(set(cms)) != len(cms):
        out.append("c-matrices are not pairwise distinct")
    if len(cms) != enumerate_ncp(t).n:
        out.append("number of c-matrices differs from the number of partitions")
    if set(cms) != set(oriented_exchange_graph(t).c_matrices):
        out.append("c-matrices differ from those of the oriented exchange graph")
    return out


def check_polygon(t: EmbeddedTree) -> list:
    g = oriented_flip_graph(t)
    P = tree_to_subdivision(t)
    out = []
    subs = [facet_to_subdivision(t, f) for f in g.facets]
    if len(set(subs)) != len(subs):
        out.append("facet subdivisions are not distinct")
    if not all(s.is_valid() for s in subs):
        out.append("a facet subdivision has crossing diagonals")
    if subs[g.source()] != P:
        out.append("source facet does not give the subdivision of the tree")
    if subs[g.sink()] != rotate(P):
        out.append("sink facet does not give the rotated subdivision")
    return out


CHECKS: dict[str, Callable[[EmbeddedTree], list]] = {
    "pure-thin": check_pure_thin,
    "eta-phi": check_eta_phi,
    "theta-quotient": check_theta_quotient,
    "flip-labeling": check_flip_lattice_labeling,
    "biclosed-labeling": check_biclosed_labeling,
    "shard-ncp": check_shard_ncp,
    "kreweras": check_kreweras_routes,
    "torsion-free": check_torsion_free,
    "wide": check_wide,
    "smc": check_smc,
    "c-matrices": check_c_matrices,
    "polygon": check_polygon,
}


def run_checks(t: EmbeddedTree, names: list | None = None) -> dict:
    return {name: CHECKS[name](t) for name in (names or list(CHECKS))}


def summary(t: EmbeddedTree) -> str:
    nf = len(oriented_flip_graph(t).facets)
    nn = enumerate_ncp(t).n
    shape = "trivial lattice" if nf == 1 else f"{len(flip_lattice(t).covers)} covers"
    return f"{nf} facet{'s' if nf != 1 else ''}, {nn} ncp, {shape}"
