"""Pseudo-quasimetric induced by the edge weights.

``d(x, y)`` is the infimum of summed deltas over directed paths from x to
y; ``d(x, x) = 0`` by definition. The metric may be asymmetric and
non-separating (distinct vertices at distance zero).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptySetError, NotStronglyConnectedError
from .graph import Graph, is_strongly_connected


@dataclass(frozen=True)
class Quasimetric:
    graph: Graph
    matrix: np.ndarray  # dist[i][j], indexed by canonical vertex order
    pred: dict[str, dict[str, str]]  # pred[source][v] = predecessor on a geodesic

    def d(self, x: str, y: str) -> float:
        idx = self.graph.index
        return float(self.matrix[idx[x], idx[y]])

    def path(self, x: str, y: str) -> list[str]:
        """One geodesic from x to y (deterministic under the canonical
        tie-break). For x == y returns [x]."""
        if x == y:
            return [x]
        chain = [y]
        p = self.pred[x]
        while chain[-1] != x:
            chain.append(p[chain[-1]])
        chain.reverse()
        return chain

    def to_json_dict(self) -> dict:
        vs = self.graph.vertices
        return {
            x: {y: self.d(x, y) for y in vs}
            for x in vs
        }


def _dijkstra(g: Graph, sources: Sequence[str]) -> tuple[dict[str, float], dict[str, str]]:
    """Label-setting shortest paths from a set of sources (all at cost 0).

    Among equal-cost predecessors the vertex earliest in canonical order
    wins; the heap is keyed by (dist, vertex index) so the scan order is
    deterministic as well.
    """
    idx = g.index
    dist: dict[str, float] = {}
    pred: dict[str, str] = {}
    heap: list[tuple[float, int, str]] = []
    for s in sources:
        dist[s] = 0.0
        heapq.heappush(heap, (0.0, idx[s], s))
    done: set[str] = set()
    while heap:
        du, _, u = heapq.heappop(heap)
        if u in done or du > dist[u]:
            continue
        done.add(u)
        for e in g.out_edges[u]:
            v = e.dst
            nd = du + e.delta
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                pred[v] = u
                heapq.heappush(heap, (nd, idx[v], v))
            elif nd == dist[v] and v not in done:
                if v in pred and idx[u] < idx[pred[v]]:
                    pred[v] = u
    return dist, pred


def all_pairs_distances(g: Graph) -> Quasimetric:
    """Compute d and one geodesic tree per source vertex.

    Requires strong connectivity; d(x, x) is set to zero by definition,
    not via cycles through x.
    """
    if not is_strongly_connected(g):
        raise NotStronglyConnectedError("all_pairs_distances needs a strongly connected graph")
    n = len(g.vertices)
    matrix = np.zeros((n, n))
    pred: dict[str, dict[str, str]] = {}
    for i, s in enumerate(g.vertices):
        dist, p = _dijkstra(g, [s])
        for j, v in enumerate(g.vertices):
            matrix[i, j] = dist[v] if v != s else 0.0
        pred[s] = p
    matrix.setflags(write=False)
    return Quasimetric(graph=g, matrix=matrix, pred=pred)


def set_distance(
    q: Quasimetric, U: Iterable[str], S: Iterable[str]
) -> tuple[float, list[str]]:
    """min over x in U, y in S of d(x, y), with a realizing geodesic.

    Ties are broken by canonical order on the pair (x, y).
    """
    g = q.graph
    idx = g.index
    U = sorted(set(U), key=idx.__getitem__)
    S = sorted(set(S), key=idx.__getitem__)
    if not U or not S:
        raise EmptySetError("set_distance requires nonempty vertex sets")
    best: tuple[float, int, int] | None = None
    for x in U:
        for y in S:
            key = (q.d(x, y), idx[x], idx[y])
            if best is None or key < best:
                best = key
    value, ix, iy = best
    return value, q.path(g.vertices[ix], g.vertices[iy])
