"""Command line interface: ``flipgraph COMMAND TREEFILE``."""

from __future__ import annotations

import json
import os
import sys

import click

from .biclosed import enumerate_biclosed
from .embedded_tree import EmbeddedTree
from .lattice import FiniteLattice, shard_order
from .ncc import flip_lattice, oriented_flip_graph
from .ncp import NotNCP, TreePartition, enumerate_ncp, kreweras_complement
from .polyio import (
    TreeParseError,
    _quote,
    lattice_dot,
    lattice_json,
    random_trees,
    read_tree,
    to_jsonable,
)
from .tiling import NotDegreeThree, c_matrices, smc_collections, torsion_free_classes, wide_subcategories
from .verify import CHECKS, check_biclosed_cu, run_checks, summary

EXTRA_CHECKS = {"biclosed-cu": check_biclosed_cu}
ALL_CHECKS = {**CHECKS, **EXTRA_CHECKS}


def _emit(data) -> None:
    click.echo(json.dumps(to_jsonable(data), sort_keys=True, indent=2))


def _load(path: str, as_json: bool) -> EmbeddedTree:
    try:
        return read_tree(path, as_json=as_json)
    except TreeParseError as exc:
        raise click.UsageError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise click.UsageError(f"{path}: {exc.strerror}") from exc


def _set_label(x) -> str:
    return "{" + ", ".join(s.label() for s in sorted(x)) + "}"


def _lattice_out(L: FiniteLattice, dot: bool, name: str, node_label=None) -> None:
    if dot:
        click.echo(lattice_dot(L, name, node_label=node_label), nl=False)
    else:
        _emit(lattice_json(L))


tree_arg = click.argument("tree", type=click.Path(dir_okay=False))
json_opt = click.option("--json", "as_json", is_flag=True, help="Read the tree file as JSON.")
dot_opt = click.option("--dot", is_flag=True, help="Print a DOT digraph instead of JSON.")


@click.group()
@click.version_option(package_name="artifact")
def main() -> None:
    """Noncrossing arcs, flip graphs and tiling algebras of embedded trees."""


@main.command()
@tree_arg
@json_opt
def facets(tree: str, as_json: bool) -> None:
    """Facets of the reduced noncrossing complex."""
    t = _load(tree, as_json)
    _emit([{"index": i, "arcs": f} for i, f in enumerate(oriented_flip_graph(t).facets)])


@main.command()
@tree_arg
@json_opt
@dot_opt
def flipgraph(tree: str, as_json: bool, dot: bool) -> None:
    """Oriented flip graph with flipped segments as edge labels."""
    t = _load(tree, as_json)
    _lattice_out(flip_lattice(t), dot, "flipgraph")


@main.command()
@tree_arg
@json_opt
@dot_opt
def biclosed(tree: str, as_json: bool, dot: bool) -> None:
    """Lattice of biclosed sets of segments."""
    t = _load(tree, as_json)
    _lattice_out(enumerate_biclosed(t), dot, "biclosed", node_label=_set_label)


@main.command()
@tree_arg
@json_opt
@dot_opt
def ncp(tree: str, as_json: bool, dot: bool) -> None:
    """Noncrossing tree partitions under refinement."""
    t = _load(tree, as_json)
    _lattice_out(enumerate_ncp(t), dot, "ncp")


def _parse_partition(text: str) -> TreePartition:
    blocks = []
    for chunk in text.split("|"):
        items = [x for x in chunk.replace(",", " ").split() if x]
        blocks.append([int(x) if x.lstrip("-").isdigit() else x for x in items])
    return TreePartition.of(blocks)


@main.command()
@tree_arg
@json_opt
@click.option("--partition", "-p", help="Blocks separated by '|', e.g. '1,3,4|2,8'.")
def kreweras(tree: str, as_json: bool, partition: str | None) -> None:
    """Kreweras complement of one partition, or of every partition."""
    t = _load(tree, as_json)
    if partition is not None:
        try:
            _emit(kreweras_complement(t, _parse_partition(partition)))
        except NotNCP as exc:
            raise click.UsageError(str(exc)) from exc
        return
    _emit([{"partition": P, "complement": kreweras_complement(t, P)} for P in enumerate_ncp(t).elements])


@main.command()
@tree_arg
@json_opt
@dot_opt
def shard(tree: str, as_json: bool, dot: bool) -> None:
    """Shard intersection order of the flip lattice."""
    t = _load(tree, as_json)
    S = shard_order(flip_lattice(t))
    if dot:
        lines = ["digraph shard {"]
        for i, s in enumerate(S.sets):
            lines.append(f"  n{i} [label={_quote(_set_label(s))}];")
        lines += [f"  n{a} -> n{b};" for a, b in S.covers]
        click.echo("\n".join(lines + ["}"]))
    else:
        _emit({"sets": [sorted(s) for s in S.sets], "covers": [list(c) for c in S.covers]})


@main.command()
@tree_arg
@json_opt
@dot_opt
def torsf(tree: str, as_json: bool, dot: bool) -> None:
    """Torsion-free classes of the tiling algebra."""
    t = _load(tree, as_json)
    _lattice_out(torsion_free_classes(t), dot, "torsf", node_label=lambda F: _set_label(m.segment for m in F))


@main.command()
@tree_arg
@json_opt
@dot_opt
def wide(tree: str, as_json: bool, dot: bool) -> None:
    """Wide subcategories of the tiling algebra."""
    t = _load(tree, as_json)
    _lattice_out(wide_subcategories(t), dot, "wide", node_label=lambda W: _set_label(m.segment for m in W))


@main.command()
@tree_arg
@json_opt
def smc(tree: str, as_json: bool) -> None:
    """Two-term simple-minded collections, one per noncrossing partition."""
    t = _load(tree, as_json)
    _emit(list(smc_collections(t)))


@main.command()
@tree_arg
@json_opt
def cmat(tree: str, as_json: bool) -> None:
    """c-matrices (trees whose interior vertices all have degree 3)."""
    t = _load(tree, as_json)
    try:
        mats = c_matrices(t)
    except NotDegreeThree as exc:
        raise click.UsageError(str(exc)) from exc
    _emit([{"columns": [list(e) for e in t.interior_edges], "rows": C} for C in mats])


def _report(label: str, t: EmbeddedTree, names: list) -> bool:
    results = run_checks_all(t, names)
    bad = {k: v for k, v in results.items() if v}
    click.echo(f"{label}: {summary(t)}")
    for name, msgs in results.items():
        click.echo(f"  {'FAIL' if msgs else 'ok  '} {name}")
        for m in msgs[:5]:
            click.echo(f"       {m}")
    return not bad


def run_checks_all(t: EmbeddedTree, names: list) -> dict:
    plain = [n for n in names if n in CHECKS]
    out = run_checks(t, plain) if plain else {}
    for n in names:
        if n in EXTRA_CHECKS:
            out[n] = EXTRA_CHECKS[n](t)
    return {n: out[n] for n in names}


@main.command()
@click.argument("tree", type=click.Path(dir_okay=False), required=False)
@json_opt
@click.option("--random", "use_random", is_flag=True, help="Check random trees; seed from FLIPGRAPH_SEED.")
@click.option("--count", default=5, show_default=True, help="Number of random trees.")
@click.option("--check", "checks", multiple=True, type=click.Choice(sorted(ALL_CHECKS)), help="Run only these checks.")
def verify(tree: str | None, as_json: bool, use_random: bool, count: int, checks: tuple) -> None:
    """Run the property suite; exit status 1 if any check fails."""
    names = list(checks) or list(CHECKS)
    if use_random == (tree is not None):
        raise click.UsageError("give either a tree file or --random")
    if tree is not None:
        ok = _report(tree, _load(tree, as_json), names)
    else:
        raw = os.environ.get("FLIPGRAPH_SEED", "0")
        try:
            seed = int(raw)
        except ValueError as exc:
            raise click.UsageError(f"FLIPGRAPH_SEED must be an integer, got {raw!r}") from exc
        ok = True
        for i, t in enumerate(random_trees(count, seed)):
            ok = _report(f"random tree {i} (seed {seed})", t, names) and ok
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
