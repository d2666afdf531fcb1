"""Arborescences directed toward a root: enumeration, minimum weight,
the matrix-tree invariant measure, and the lifted chain on arborescence
space.

Orientation convention: an arborescence toward x gives every vertex
except x exactly one out-edge, with all paths leading to x. The classical
contraction algorithm grows out-arborescences from a root, so the
minimum-weight computation runs on the edge-reversed graph and maps the
result back; getting this backwards is the main failure mode here.
"""

from __future__ import annotations

import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import NotStronglyConnectedError, SizeCapExceededError
from .graph import Edge, Graph, is_strongly_connected

ENUMERATION_CAP = 10
LIFTED_CHAIN_CAP = 6


@dataclass(frozen=True)
class Arborescence:
    root: str
    edges: tuple[Edge, ...]  # sorted by canonical edge order
    weight_sum: float

    def log_weight(self, N: float) -> float:
        """Sum of log prefactor - N*delta over the edges."""
        return sum(math.log(e.prefactor) - N * e.delta for e in self.edges)

    @property
    def edge_pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset((e.src, e.dst) for e in self.edges)

    def to_json_dict(self) -> dict:
        return {
            "root": self.root,
            "edges": [[e.src, e.dst] for e in self.edges],
            "weight_sum": self.weight_sum,
        }


def _canonical_edges(g: Graph, edges) -> tuple[Edge, ...]:
    idx = g.index
    return tuple(sorted(edges, key=lambda e: (idx[e.src], idx[e.dst])))


def enumerate_arborescences(
    g: Graph, root: str, max_size: int = ENUMERATION_CAP
) -> list[Arborescence]:
    """Exhaustive list of arborescences toward ``root``.

    Backtracking over per-vertex out-edge choices with incremental cycle
    rejection; order is deterministic (vertex order outer, edge order
    inner). Intended as a brute-force oracle at desk scale.
    """
    if len(g.vertices) > max_size:
        raise SizeCapExceededError(
            f"enumeration capped at {max_size} vertices, got {len(g.vertices)}"
        )
    if not is_strongly_connected(g):
        raise NotStronglyConnectedError("enumeration needs a strongly connected graph")
    others = [v for v in g.vertices if v != root]
    chosen: dict[str, Edge] = {}
    result: list[Arborescence] = []

    def creates_cycle(v: str, w: str) -> bool:
        u = w
        while u in chosen:
            u = chosen[u].dst
            if u == v:
                return True
        return False

    def rec(k: int):
        if k == len(others):
            edges = _canonical_edges(g, chosen.values())
            result.append(
                Arborescence(
                    root=root,
                    edges=edges,
                    weight_sum=sum(e.delta for e in edges),
                )
            )
            return
        v = others[k]
        for e in g.out_edges[v]:
            if not creates_cycle(v, e.dst):
                chosen[v] = e
                rec(k + 1)
                del chosen[v]

    rec(0)
    return result


_Rec = namedtuple("_Rec", "tail head w base")


def _edmonds(nodes: list, records: list, root) -> list:
    """Minimum out-arborescence from ``root`` by cycle contraction.

    ``records`` carry (tail, head, weight, base) where ``base`` links back
    one contraction level (an edge index at the bottom). Ties go to the
    earliest record, which preserves canonical edge order.
    """
    best: dict = {}
    for r in records:
        if r.head == root or r.tail == r.head:
            continue
        cur = best.get(r.head)
        if cur is None or r.w < cur.w:
            best[r.head] = r

    # cycle detection on the chosen in-edges
    state = {n: 0 for n in nodes}
    state[root] = 2
    cycle = None
    for n in nodes:
        if state[n] != 0:
            continue
        path = []
        u = n
        while u is not None and state[u] == 0:
            state[u] = 1
            path.append(u)
            u = best[u].tail if u in best else None
        if u is not None and state[u] == 1:
            cycle = path[path.index(u):]
        for p in path:
            state[p] = 2
        if cycle:
            break

    if cycle is None:
        return [best[n] for n in nodes if n != root]

    cyc = set(cycle)
    super_node = ("super", id(records), len(nodes))
    new_nodes = [n for n in nodes if n not in cyc] + [super_node]
    new_records = []
    for r in records:
        t_in, h_in = r.tail in cyc, r.head in cyc
        if t_in and h_in:
            continue
        if h_in:
            new_records.append(_Rec(r.tail, super_node, r.w - best[r.head].w, r))
        elif t_in:
            new_records.append(_Rec(super_node, r.head, r.w, r))
        else:
            new_records.append(_Rec(r.tail, r.head, r.w, r))

    upper = _edmonds(new_nodes, new_records, root)
    chosen = []
    entry = None
    for rec in upper:
        chosen.append(rec.base)
        if rec.head == super_node:
            entry = rec.base.head
    chosen.extend(best[v] for v in cycle if v != entry)
    return chosen


def min_arborescence(g: Graph, root: str) -> Arborescence:
    """A minimum-delta arborescence toward ``root``.

    Runs the contraction algorithm on the reversed graph and re-reverses
    the result. Only the weight is contractual; the edge set is the
    deterministic canonical-tie-break representative.
    """
    if not is_strongly_connected(g):
        raise NotStronglyConnectedError("min_arborescence needs a strongly connected graph")
    records = [
        _Rec(e.dst, e.src, e.delta, i) for i, e in enumerate(g.edges)
    ]
    chosen = _edmonds(list(g.vertices), records, root)
    edges = _canonical_edges(g, (g.edges[r.base] for r in chosen))
    return Arborescence(
        root=root, edges=edges, weight_sum=sum(e.delta for e in edges)
    )


def fw_solution(g: Graph) -> dict[str, float]:
    """Large-deviations rate of the invariant measure: per-vertex minimal
    arborescence weight, shifted so the minimum is exactly zero."""
    weights = {x: min_arborescence(g, x).weight_sum for x in g.vertices}
    low = min(weights.values())
    return {x: w - low for x, w in weights.items()}


def log_matrix_tree_measure(
    g: Graph, N: float, max_size: int = ENUMERATION_CAP
) -> dict[str, float]:
    """log pi_N(x) from the arborescence sums, entirely in log-space."""
    per_root = {}
    for x in g.vertices:
        arbs = enumerate_arborescences(g, x, max_size=max_size)
        per_root[x] = logsumexp([tau.log_weight(N) for tau in arbs])
    log_z = logsumexp(list(per_root.values()))
    return {x: per_root[x] - log_z for x in g.vertices}


def matrix_tree_measure(
    g: Graph, N: float, max_size: int = ENUMERATION_CAP
) -> dict[str, float]:
    """Invariant measure via the matrix-tree representation, normalized to
    sum one. Uses log-sum-exp throughout; direct products would underflow
    for large N."""
    log_pi = log_matrix_tree_measure(g, N, max_size=max_size)
    return {x: math.exp(v) for x, v in log_pi.items()}


def arborescence_counts(g: Graph, max_size: int = ENUMERATION_CAP) -> dict[str, int]:
    return {
        x: len(enumerate_arborescences(g, x, max_size=max_size)) for x in g.vertices
    }


@dataclass(frozen=True)
class LiftedChain:
    """Markov chain on arborescence space whose stationary law projects to
    the original invariant measure (the matrix-tree proof device)."""

    graph: Graph
    N: float
    nodes: tuple[Arborescence, ...]
    edges: tuple[tuple[int, int, float, tuple[str, str]], ...]
    stationary: np.ndarray
    in_degree: tuple[int, ...]
    out_degree: tuple[int, ...]
    stationarity_residual: float
    strongly_connected: bool
    marginal: dict[str, float]

    def to_json_dict(self) -> dict:
        return {
            "N": self.N,
            "node_count": len(self.nodes),
            "edge_count": len(self.edges),
            "in_degree": list(self.in_degree),
            "out_degree": list(self.out_degree),
            "stationarity_residual": self.stationarity_residual,
            "strongly_connected": self.strongly_connected,
            "marginal": dict(self.marginal),
            "stationary": [float(p) for p in self.stationary],
            "nodes": [tau.to_json_dict() for tau in self.nodes],
        }


def build_lifted_chain(
    g: Graph, N: float, max_size: int = LIFTED_CHAIN_CAP
) -> LiftedChain:
    """Construct the lifted chain: nodes are all arborescences, a move
    adds the root's outgoing edge and drops the new root's old one, rates
    are those of the projected edge."""
    if len(g.vertices) > max_size:
        raise SizeCapExceededError(
            f"lifted chain capped at {max_size} vertices, got {len(g.vertices)}"
        )
    nodes: list[Arborescence] = []
    for x in g.vertices:
        nodes.extend(enumerate_arborescences(g, x))
    key = {(tau.root, tau.edge_pairs): i for i, tau in enumerate(nodes)}

    edges: list[tuple[int, int, float, tuple[str, str]]] = []
    for i, tau in enumerate(nodes):
        x = tau.root
        out_of = {e.src: e for e in tau.edges}
        for e in g.out_edges[x]:
            y = e.dst
            dropped = out_of[y]
            pairs = (tau.edge_pairs | {(x, y)}) - {(dropped.src, dropped.dst)}
            j = key[(y, frozenset(pairs))]
            rate = e.prefactor * math.exp(-N * e.delta)
            edges.append((i, j, rate, (x, y)))

    n = len(nodes)
    indeg = [0] * n
    outdeg = [0] * n
    for i, j, _, _ in edges:
        outdeg[i] += 1
        indeg[j] += 1

    log_p = np.array([tau.log_weight(N) for tau in nodes])
    log_p -= logsumexp(log_p)
    stationary = np.exp(log_p)

    residual = np.zeros(n)
    for i, j, rate, _ in edges:
        residual[j] += stationary[i] * rate
        residual[i] -= stationary[i] * rate
    residual_norm = float(np.max(np.abs(residual)))

    # strong connectivity of the lifted graph by forward/backward reach
    fwd: dict[int, list[int]] = {i: [] for i in range(n)}
    bwd: dict[int, list[int]] = {i: [] for i in range(n)}
    for i, j, _, _ in edges:
        fwd[i].append(j)
        bwd[j].append(i)

    def reach(adj):
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen)

    sc = n > 0 and reach(fwd) == n and reach(bwd) == n

    marginal = {x: 0.0 for x in g.vertices}
    for tau, p in zip(nodes, stationary):
        marginal[tau.root] += float(p)

    stationary.setflags(write=False)
    return LiftedChain(
        graph=g,
        N=N,
        nodes=tuple(nodes),
        edges=tuple(edges),
        stationary=stationary,
        in_degree=tuple(indeg),
        out_degree=tuple(outdeg),
        stationarity_residual=residual_norm,
        strongly_connected=sc,
        marginal=marginal,
    )
