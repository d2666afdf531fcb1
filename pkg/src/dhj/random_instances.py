"""Random test-instance generators.

All generators return graphs that satisfy the structural assumptions
(strong connectivity, exactly one zero out-edge per vertex). Weights can
be drawn on a dyadic grid so that sums are exact in double precision,
which lets oracle comparisons assert exact equality.
"""

from __future__ import annotations

import random
from typing import Sequence

from .graph import Edge, Graph, validate
from .quasimetric import Quasimetric, set_distance
from .special_cases import RingSpec
from .zero_structure import ZeroStructure

_GRID = 64  # dyadic denominator for exact float sums


def _positive_weight(rng: random.Random, dyadic: bool) -> float:
    if dyadic:
        return rng.randint(1, 4 * _GRID) / _GRID
    return rng.uniform(0.05, 4.0)


def random_instance(
    rng: random.Random,
    n_min: int = 2,
    n_max: int = 7,
    extra_edge_prob: float = 0.35,
    dyadic: bool = True,
) -> Graph:
    """Strongly connected digraph with one zero out-edge per vertex.

    Built from a random loop-free map (the zero edges), random positive
    extra edges, and a positive-delta closing cycle that guarantees strong
    connectivity.
    """
    n = rng.randint(n_min, n_max)
    names = [str(i + 1) for i in range(n)]
    succ = {}
    for v in names:
        succ[v] = rng.choice([w for w in names if w != v])
    pairs = {(v, succ[v]) for v in names}
    # closing Hamiltonian cycle over a random order keeps it connected
    order = names[:]
    rng.shuffle(order)
    for a, b in zip(order, order[1:] + order[:1]):
        if a != b:
            pairs.add((a, b))
    for a in names:
        for b in names:
            if a != b and rng.random() < extra_edge_prob:
                pairs.add((a, b))
    edges = []
    for a, b in sorted(pairs, key=lambda p: (names.index(p[0]), names.index(p[1]))):
        delta = 0.0 if b == succ[a] else _positive_weight(rng, dyadic)
        edges.append(Edge(a, b, delta))
    g = Graph(tuple(names), tuple(edges))
    report = validate(g)
    assert report.strongly_connected and report.assumption_2_3_holds
    return g


def random_reversible_instance(
    rng: random.Random, n_min: int = 3, n_max: int = 6, dyadic: bool = True
) -> Graph:
    """Gradient instance: a vertex potential, at least one equal-level
    pair forming the zero two-cycle, downhill deltas from the positive
    part of the potential difference, and symmetric padding on any edge
    that would create a second zero out-edge."""
    while True:
        n = rng.randint(n_min, n_max)
        names = [str(i + 1) for i in range(n)]
        levels = {}
        taken = set()
        for v in names:
            while True:
                u = rng.randint(1, 40 * _GRID) / _GRID if dyadic else rng.uniform(0, 40)
                if u not in taken:
                    break
            taken.add(u)
            levels[v] = u
        order = sorted(names, key=levels.__getitem__)
        # equal-level pairs; the global minimum is always paired so every
        # vertex has a downhill or level neighbor
        paired = {}
        candidates = order[:]
        a = candidates.pop(0)
        b = candidates.pop(rng.randrange(len(candidates)))
        levels[b] = levels[a]
        paired[a], paired[b] = b, a
        for _ in range(rng.randint(0, (n - 2) // 2)):
            if len(candidates) < 2:
                break
            c = candidates.pop(rng.randrange(len(candidates)))
            d = candidates.pop(rng.randrange(len(candidates)))
            levels[d] = levels[c]
            paired[c], paired[d] = d, c

        neighbors = {v: set() for v in names}
        for v, w in paired.items():
            neighbors[v].add(w)
        order = sorted(names, key=levels.__getitem__)
        for k, v in enumerate(order):
            lower = [w for w in order[:k] if levels[w] < levels[v]]
            if v not in paired and lower:
                neighbors[v].add(rng.choice(lower))
        for v in names:
            for w in names:
                if v != w and rng.random() < 0.3:
                    neighbors[v].add(w)
        # symmetrize
        for v in names:
            for w in list(neighbors[v]):
                neighbors[w].add(v)

        pad = {}
        for v in names:
            down = sorted(
                (w for w in neighbors[v] if levels[w] <= levels[v] and w != v),
                key=lambda w: (levels[w], names.index(w)),
            )
            if not down:
                break
            keep = paired.get(v) if paired.get(v) in down else down[0]
            for w in down:
                if w != keep:
                    key = tuple(sorted((v, w), key=names.index))
                    pad[key] = _positive_weight(rng, dyadic) / 8
        else:
            edges = []
            for v in names:
                for w in sorted(neighbors[v], key=names.index):
                    if v == w:
                        continue
                    delta = max(levels[w] - levels[v], 0.0)
                    key = tuple(sorted((v, w), key=names.index))
                    delta += pad.get(key, 0.0)
                    edges.append(Edge(v, w, delta))
            edges.sort(key=lambda e: (names.index(e.src), names.index(e.dst)))
            g = Graph(tuple(names), tuple(edges))
            report = validate(g)
            if report.strongly_connected and report.assumption_2_3_holds:
                return g


def random_ring(rng: random.Random, k_min: int = 3, k_max: int = 8) -> RingSpec:
    """Ring whose per-vertex zero out-edge direction is chosen at random;
    every other slot gets a positive dyadic weight."""
    k = rng.randint(k_min, k_max)
    forward: list[float | None] = [None] * k
    backward: list[float | None] = [None] * k
    for x in range(1, k + 1):
        if rng.random() < 0.5:
            forward[x - 1] = 0.0  # zero edge (x, x+1)
        else:
            # zero edge (x, x-1): stored as backward delta of edge (x-1, x)
            prev = x - 1 if x > 1 else k
            backward[prev - 1] = 0.0
    for i in range(k):
        if forward[i] is None:
            forward[i] = rng.randint(1, 4 * _GRID) / _GRID
        if backward[i] is None:
            backward[i] = rng.randint(1, 4 * _GRID) / _GRID
    return RingSpec(k=k, forward=tuple(forward), backward=tuple(backward))


def random_feasible_lambda(
    rng: random.Random, q: Quasimetric, zs: ZeroStructure
) -> tuple[float, ...]:
    """A point of the cycle-level polyhedron, built as the lower envelope
    of random offsets against the cycle-to-cycle distances (always
    feasible by the triangle inequality)."""
    k = len(zs.cycles)
    mu = [rng.uniform(0.0, 3.0) for _ in range(k)]
    d = [
        [
            0.0 if i == j else set_distance(q, zs.cycles[j], zs.cycles[i])[0]
            for i in range(k)
        ]
        for j in range(k)
    ]
    return tuple(min(mu[j] + d[j][i] for j in range(k)) for i in range(k))
