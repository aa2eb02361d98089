"""Acceptance criteria; each test prints one PASS/FAIL line."""

from __future__ import annotations

import networkx as nx
import pytest

from flipgraph.biclosed import enumerate_biclosed
from flipgraph.ncc import enumerate_facets, flip_lattice
from flipgraph.ncp import TreePartition, enumerate_ncp, is_ncp, kreweras_complement
from flipgraph.polyio import corpus_tree
from flipgraph.tiling import CMatrix, c_matrices, ext_dim, hom_dim, indecomposables, smc_collections, theta_map
from flipgraph.verify import CHECKS, check_biclosed_cu
from oracles import ext_dim_linear, framed_c_matrices, hom_dim_linear, string_representation
from trees import corpus, degree_three


@pytest.fixture
def report(capsys):
    def emit(criterion: str, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(f"\n[acceptance {criterion}] {'PASS' if ok else 'FAIL'} {detail}".rstrip())

    return emit


@pytest.fixture(scope="module")
def corpus_results():
    """Every property check on every corpus tree, computed once."""
    trees = corpus()
    return trees, [{name: fn(t) for name, fn in CHECKS.items()} for t in trees]


def _criterion(corpus_results, report, label, names, what):
    trees, results = corpus_results
    failures = [(i, n, msgs[:2]) for i, r in enumerate(results) for n in names for msgs in [r[n]] if msgs]
    report(label, not failures, f"{what} on {len(trees)} trees" + (f"; first failure {failures[0]}" if failures else ""))
    assert not failures


def test_corpus_size():
    trees = corpus()
    assert len(trees) >= 20
    assert {len(t.interior_vertices) for t in trees} >= {1, 2, 3, 4, 5, 6}


def test_1_a1(report):
    t = corpus_tree("a1")
    counts = (len(enumerate_facets(t)), enumerate_biclosed(t).n, enumerate_ncp(t).n)
    cms = set(c_matrices(t))
    ok = counts == (2, 2, 2) and cms == {CMatrix.of([[1]]), CMatrix.of([[-1]])}
    report("1", ok, f"facets/biclosed/ncp = {counts}, c-matrices {sorted(C.as_lists() for C in cms)}")
    assert ok


def test_2_a2(report):
    t = corpus_tree("a2")
    counts = (len(enumerate_facets(t)), enumerate_ncp(t).n, len(smc_collections(t)), len(c_matrices(t)))
    # quiver 2 <- 1: vertex 1 is the edge (7,8), vertex 2 is (6,7); columns follow t.interior_edges
    assert t.interior_edges == ((6, 7), (7, 8))
    expected, exchange = framed_c_matrices(2, [(1, 0)])
    cms = {C.rows for C in c_matrices(t)}
    fg = flip_lattice(t).hasse(with_labels=False)
    iso = nx.is_isomorphic(nx.DiGraph(fg.edges()), exchange)
    pentagon = exchange.number_of_nodes() == 5 and exchange.number_of_edges() == 5
    ok = counts == (5, 5, 5, 5) and cms == expected and iso and pentagon
    report("2", ok, f"counts {counts}, c-matrices match: {cms == expected}, flip graph ~ exchange pentagon: {iso}")
    assert ok


def test_3_biclosed_zonotope(report):
    n = enumerate_biclosed(corpus_tree("bicfig")).n
    report("3", n == 26, f"|Bic| = {n}")
    assert n == 26


def test_4_noncrossing_curves(report):
    t = corpus_tree("noncrossingcurves")
    B = TreePartition.of([[1, 3, 4], [2, 8], [5, 6, 7, 9], [10]])
    kr = kreweras_complement(t, B)
    X = theta_map(t, B)
    red = {(1, 3), (3, 4), (2, 8), (5, 6), (6, 7), (6, 9)}
    green = {(2, 4), (5, 8), (7, 10)}
    ok = (
        is_ncp(t, B)
        and kr == TreePartition.of([[1], [2, 4], [3], [5, 8], [6], [7, 10], [9]])
        and len(X) == 9
        and {s.endpoints for s in X.degree(-1)} == red
        and {s.endpoints for s in X.degree(0)} == green
    )
    report("4", ok, f"Kr(B) = {kr!r}, theta(B) = {X!r}")
    assert ok


def test_5a_pure_thin(corpus_results, report):
    _criterion(corpus_results, report, "5a", ["pure-thin"], "purity and thinness")


def test_5b_eta_phi(corpus_results, report):
    _criterion(corpus_results, report, "5b", ["eta-phi"], "eta(phi(F)) = F and phi(eta(X)) = pi_down(X)")


def test_5c_theta_quotient(corpus_results, report):
    _criterion(corpus_results, report, "5c", ["theta-quotient"], "Theta congruence and labeled quotient = flip graph")


def test_5d_labelings(corpus_results, report):
    _criterion(
        corpus_results,
        report,
        "5d",
        ["flip-labeling", "biclosed-labeling"],
        "CU axioms on FG, CN axioms on Bic, semidistributivity, doubling sequences",
    )


@pytest.mark.xfail(strict=True, reason="added-segment labels repeat on join-irreducibles of Bic(T)")
def test_5d_biclosed_cu_axioms(report):
    trees = corpus()
    bad = [i for i, t in enumerate(trees) if check_biclosed_cu(t)]
    report("5d-bic-cu", not bad, f"CU1-CU2 on Bic(T) fail on {len(bad)} of {len(trees)} trees (known: added-segment labels repeat)")
    assert not bad


def test_5e_shard_ncp(corpus_results, report):
    _criterion(corpus_results, report, "5e", ["shard-ncp"], "shard order = NCP, Kreweras-equivariant")


def test_5f_kreweras(corpus_results, report):
    _criterion(corpus_results, report, "5f", ["kreweras"], "lattice Kreweras = red-green Kreweras")


def test_5g_torsion_free(corpus_results, report):
    _criterion(corpus_results, report, "5g", ["torsion-free"], "torsf = FG with closure-filter enumeration")


def test_5h_wide(corpus_results, report):
    _criterion(corpus_results, report, "5h", ["wide"], "|wide| = |NCP| with inclusion = refinement")


def test_5i_smc(corpus_results, report):
    _criterion(corpus_results, report, "5i", ["smc"], "2-term smc, mutation closure, mu- mu+ = id, reachability")


def test_5j_c_matrices(corpus_results, report):
    trees, _ = corpus_results
    assert sum(degree_three(t) for t in trees) >= 5
    _criterion(corpus_results, report, "5j", ["c-matrices"], "sign-coherent distinct c-matrices, count = |NCP|")


def test_5k_polygon(corpus_results, report):
    _criterion(corpus_results, report, "5k", ["polygon"], "source -> P_T, sink -> rotated P_T")


def test_5l_linear_oracle(report):
    trees = [t for t in corpus() if len(t.interior_edges) <= 4]
    assert any(len(t.interior_edges) == 4 for t in trees)
    bad = []
    pairs = 0
    for t in trees:
        mods = indecomposables(t)
        reps = {m: string_representation(t, m.segment) for m in mods}
        for u in mods:
            for v in mods:
                pairs += 1
                if hom_dim(t, u, v) != hom_dim_linear(t, reps[u], reps[v]):
                    bad.append(("hom", u, v))
                if ext_dim(t, u, v) != ext_dim_linear(t, reps[u], reps[v]):
                    bad.append(("ext", u, v))
    report("5l", not bad, f"{pairs} module pairs on {len(trees)} trees" + (f"; first mismatch {bad[0]}" if bad else ""))
    assert not bad
