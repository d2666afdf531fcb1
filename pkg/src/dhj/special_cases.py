"""Reversible-case machinery and the closed-form ring solution.

A reversible edge set carries the antisymmetric field
delta(x, y) - delta(y, x); when its circulation vanishes on every cycle
(the gradient condition) the stationary solution is a path sum of the
field, and the minimal arborescences across roots share one unoriented
support.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arborescence import enumerate_arborescences, fw_solution
from .errors import (
    AssumptionViolatedError,
    GradientConditionError,
    NonReversibleEdgeSetError,
)
from .graph import DEFAULT_TOL, Edge, Graph, normalize, validate
from .hj import check_solution
from .quasimetric import all_pairs_distances
from .zero_structure import zero_structure


@dataclass(frozen=True)
class ReversibleData:
    delta_field: dict[tuple[str, str], float]  # antisymmetric on the edge set
    is_gradient: bool
    base_vertex: str
    # potential built by spanning-tree integration of the field; only
    # meaningful when is_gradient holds
    tree_potential: dict[str, float]


def gradient_condition(g: Graph, tol: float = DEFAULT_TOL) -> ReversibleData:
    """Decide the gradient condition on a reversible edge set.

    Integrates the field along a spanning tree and checks consistency on
    every remaining edge; this is the fundamental-cycle test, since the
    circulation is linear over the cycle space.
    """
    for e in g.edges:
        if not g.has_edge(e.dst, e.src):
            raise NonReversibleEdgeSetError(
                f"edge ({e.src!r}, {e.dst!r}) has no reverse edge"
            )
    field = {
        (e.src, e.dst): e.delta - g.delta(e.dst, e.src) for e in g.edges
    }
    base = g.vertices[0]
    potential = {base: 0.0}
    queue = [base]
    while queue:
        u = queue.pop(0)
        for e in g.out_edges[u]:
            if e.dst not in potential:
                potential[e.dst] = potential[u] + field[(u, e.dst)]
                queue.append(e.dst)
    is_gradient = len(potential) == len(g.vertices) and all(
        abs(potential[e.dst] - potential[e.src] - field[(e.src, e.dst)]) <= tol
        for e in g.edges
    )
    return ReversibleData(
        delta_field=field,
        is_gradient=is_gradient,
        base_vertex=base,
        tree_potential=potential,
    )


def reversible_fw(g: Graph, rd: ReversibleData) -> dict[str, float]:
    """Path-sum solution: sum the field from the base vertex along any
    path (path-independent under the gradient condition), shifted to
    minimum zero. Agrees with the arborescence construction."""
    if not rd.is_gradient:
        raise GradientConditionError("path sums are only defined on gradient instances")
    return normalize(rd.tree_potential)


def _reverse_path_bijection(tau, target: str):
    """Map an arborescence toward its image under reversal of the unique
    path from ``target`` to the root. Returns the new (src, dst) pair set
    and the traversed path."""
    out_of = {e.src: e for e in tau.edges}
    path = [target]
    while path[-1] != tau.root:
        path.append(out_of[path[-1]].dst)
    pairs = set((e.src, e.dst) for e in tau.edges)
    for a, b in zip(path, path[1:]):
        pairs.remove((a, b))
        pairs.add((b, a))
    return pairs, path


def reversible_structure_checks(
    g: Graph, rd: ReversibleData, tol: float = DEFAULT_TOL
) -> dict:
    """Structural facts of gradient instances: two-cycles only, skeleton
    equal to the reversed zero map, and the weight identity along the
    path-reversal bijection between arborescence families."""
    if not rd.is_gradient:
        raise GradientConditionError("structure checks assume the gradient condition")
    q = all_pairs_distances(g)
    zs = zero_structure(g, q, tol)
    cycles_len_two = all(len(c) == 2 for c in zs.cycles)

    fw = fw_solution(g)
    report = check_solution(g, q, zs, fw, tol)
    reversed_zero = sorted(
        ((b, a) for a, b in zs.zero_edges),
        key=lambda e: (g.index[e[0]], g.index[e[1]]),
    )
    skeleton_is_reversed_map = list(report.skeleton) == reversed_zero

    bijection_ok = True
    checked_pairs = 0
    arbs = {x: enumerate_arborescences(g, x) for x in g.vertices}
    for x in g.vertices:
        for y in g.vertices:
            if x == y:
                continue
            images = set()
            for tau in arbs[x]:
                pairs, _ = _reverse_path_bijection(tau, y)
                weight = sum(g.delta(a, b) for a, b in pairs)
                gap = weight - tau.weight_sum
                if abs(gap - (fw[y] - fw[x])) > tol:
                    bijection_ok = False
                images.add(frozenset(pairs))
            targets = {t.edge_pairs for t in arbs[y]}
            if images != targets:
                bijection_ok = False
            checked_pairs += 1
    return {
        "cycles_length_two": cycles_len_two,
        "skeleton_is_reversed_zero_map": skeleton_is_reversed_map,
        "bijection_weight_identity": bijection_ok,
        "checked_pairs": checked_pairs,
    }


@dataclass(frozen=True)
class RingSpec:
    """Ring on 1..k with both orientations; indices are 1-based mod k."""

    k: int
    forward: tuple[float, ...]  # forward[x-1] = delta(x, x+1)
    backward: tuple[float, ...]  # backward[x-1] = delta(x+1, x)

    def __post_init__(self):
        if self.k < 3 or len(self.forward) != self.k or len(self.backward) != self.k:
            raise AssumptionViolatedError("ring needs k >= 3 and k deltas per direction")

    def field(self, x: int) -> float:
        # delta(x, x+1) - delta(x+1, x), x in 1..k
        return self.forward[x - 1] - self.backward[x - 1]

    def cumulative(self, x: int) -> float:
        """S(x) = sum_{y=1}^{x-1} of the field, indices reduced mod k."""
        total = 0.0
        for y in range(1, x):
            total += self.field((y - 1) % self.k + 1)
        return total

    def to_graph(self) -> Graph:
        names = tuple(str(i) for i in range(1, self.k + 1))
        edges = []
        for x in range(1, self.k + 1):
            nxt = x % self.k + 1
            edges.append(Edge(str(x), str(nxt), self.forward[x - 1]))
            edges.append(Edge(str(nxt), str(x), self.backward[x - 1]))
        return Graph(names, tuple(edges))


def ring_fw(rs: RingSpec, tol: float = DEFAULT_TOL) -> dict[str, float]:
    """Closed-form ring solution:
    min over one period of S(x) - S(y) - delta(y, y+1), shifted to
    minimum zero; equals the arborescence construction on the induced
    graph."""
    g = rs.to_graph()
    report = validate(g, tol)
    if not report.assumption_2_3_holds:
        raise AssumptionViolatedError(
            "induced ring graph violates the one-zero-out-edge assumption"
        )
    S = {x: rs.cumulative(x) for x in range(1, 2 * rs.k + 1)}
    values = {}
    for x in range(1, rs.k + 1):
        best = min(
            S[x] - S[y] - rs.forward[(y - 1) % rs.k]
            for y in range(x, x + rs.k)
        )
        values[str(x)] = best
    return normalize(values)
