"""Shared fixtures and independent brute-force oracles.

The canonical small instances used throughout: a two-vertex zero cycle,
a four-vertex graph with two attracting two-cycles, the same with both
ring orientations, a three-vertex reversible chain, and a zero
Hamiltonian three-ring. The oracles here recompute quantities by direct
exhaustion, independent of the library's optimized algorithms.
"""

from __future__ import annotations

import itertools
import random

import pytest

from dhj.graph import Edge, Graph


def make_g2() -> Graph:
    return Graph(("a", "b"), (Edge("a", "b", 0.0), Edge("b", "a", 0.0)))


def make_g4() -> Graph:
    return Graph(
        ("1", "2", "3", "4"),
        (
            Edge("1", "2", 0.0),
            Edge("2", "1", 0.0),
            Edge("3", "4", 0.0),
            Edge("4", "3", 0.0),
            Edge("2", "3", 1.0),
            Edge("4", "1", 2.0),
        ),
    )


def make_r4() -> Graph:
    return Graph(
        ("1", "2", "3", "4"),
        (
            Edge("1", "2", 0.0),
            Edge("2", "1", 0.0),
            Edge("3", "4", 0.0),
            Edge("4", "3", 0.0),
            Edge("2", "3", 1.0),
            Edge("3", "2", 0.7),
            Edge("4", "1", 2.0),
            Edge("1", "4", 0.4),
        ),
    )


def make_rev3() -> Graph:
    return Graph(
        ("1", "2", "3"),
        (
            Edge("1", "2", 0.0),
            Edge("2", "1", 0.0),
            Edge("2", "3", 1.0),
            Edge("3", "2", 0.0),
        ),
    )


def make_g3c() -> Graph:
    return Graph(
        ("1", "2", "3"),
        (
            Edge("1", "2", 0.0),
            Edge("2", "3", 0.0),
            Edge("3", "1", 0.0),
            Edge("2", "1", 0.5),
            Edge("3", "2", 0.5),
            Edge("1", "3", 0.5),
        ),
    )


@pytest.fixture
def g2():
    return make_g2()


@pytest.fixture
def g4():
    return make_g4()


@pytest.fixture
def r4():
    return make_r4()


@pytest.fixture
def rev3():
    return make_rev3()


@pytest.fixture
def g3c():
    return make_g3c()


def oracle_arborescences(g: Graph, root: str) -> list[frozenset]:
    """All arborescences toward root by raw cartesian product over
    per-vertex out-edge choices; no pruning, so keep |V| small."""
    others = [v for v in g.vertices if v != root]
    found = []
    for combo in itertools.product(*(g.out_edges[v] for v in others)):
        nxt = {e.src: e.dst for e in combo}
        ok = True
        for v in others:
            seen = set()
            u = v
            while u != root:
                if u in seen:
                    ok = False
                    break
                seen.add(u)
                u = nxt[u]
            if not ok:
                break
        if ok:
            found.append(frozenset((e.src, e.dst) for e in combo))
    return found


def oracle_distance(g: Graph, x: str, y: str) -> float:
    """Minimal delta-sum over simple paths plus one optional revisit of
    intermediate vertices is unnecessary with nonnegative weights, so a
    simple-path exhaustion suffices."""
    if x == y:
        return 0.0
    best = float("inf")

    def walk(u: str, cost: float, seen: frozenset):
        nonlocal best
        if cost >= best:
            return
        for e in g.out_edges[u]:
            if e.dst == y:
                best = min(best, cost + e.delta)
            elif e.dst not in seen:
                walk(e.dst, cost + e.delta, seen | {e.dst})

    walk(x, 0.0, frozenset({x}))
    return best


@pytest.fixture(scope="session")
def random_pool():
    """A fixed pool of generated valid instances reused across tests so
    the suite stays fast and reproducible."""
    from dhj.random_instances import random_instance

    rng = random.Random(20240817)
    return [random_instance(rng) for _ in range(120)]
