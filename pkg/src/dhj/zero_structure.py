"""The zero-weight map, its cycles and basins, and out-unicyclic components.

Under the one-zero-out-edge assumption the zero edges form a map: every
vertex has exactly one outgoing zero edge. Following the map decomposes
the graph into in-unicyclic basins around a set of disjoint cycles; those
cycles organize the whole solution theory.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AssumptionViolatedError, InvalidCycleIndexError
from .graph import DEFAULT_TOL, Graph
from .quasimetric import Quasimetric, _dijkstra


@dataclass(frozen=True)
class ZeroStructure:
    zero_edges: tuple[tuple[str, str], ...]  # one out-edge per vertex, vertex order
    cycles: tuple[tuple[str, ...], ...]  # each starts at its smallest vertex
    basin_of: dict[str, int]
    exiting_basin_of: dict[str, int]

    def cycle_of_vertex(self, v: str) -> int | None:
        for i, c in enumerate(self.cycles):
            if v in c:
                return i
        return None

    @property
    def cycle_vertices(self) -> set[str]:
        return {v for c in self.cycles for v in c}

    def to_json_dict(self) -> dict:
        return {
            "zero_edges": [list(e) for e in self.zero_edges],
            "cycles": [list(c) for c in self.cycles],
            "basin_of": dict(self.basin_of),
            "exiting_basin_of": dict(self.exiting_basin_of),
        }


@dataclass(frozen=True)
class OutUnicyclicComponent:
    cycle_index: int
    edges: tuple[tuple[str, str], ...]
    omega: dict[str, float]

    def to_json_dict(self) -> dict:
        return {
            "cycle_index": self.cycle_index,
            "edges": [list(e) for e in self.edges],
            "omega": dict(self.omega),
        }


def zero_structure(g: Graph, q: Quasimetric, tol: float = DEFAULT_TOL) -> ZeroStructure:
    """Extract the zero map, its cycles (sorted by smallest member), the
    in-unicyclic basins, and the exiting basins argmin_i d(C_i, x)."""
    idx = g.index
    succ: dict[str, str] = {}
    for v in g.vertices:
        zeros = [e.dst for e in g.out_edges[v] if abs(e.delta) <= tol]
        if len(zeros) != 1:
            raise AssumptionViolatedError(
                f"vertex {v!r} has {len(zeros)} zero-delta out-edges (want exactly 1)"
            )
        succ[v] = zeros[0]

    # Cycles of the map: iterate the successor function until repetition.
    visited: set[str] = set()
    cycles: list[tuple[str, ...]] = []
    for start in g.vertices:
        seen: dict[str, int] = {}
        u = start
        while u not in seen and u not in visited:
            seen[u] = len(seen)
            u = succ[u]
        if u in seen:  # fresh cycle discovered
            chain = list(seen)
            members = chain[seen[u]:]
            smallest = min(members, key=idx.__getitem__)
            k = members.index(smallest)
            cycles.append(tuple(members[k:] + members[:k]))
        visited.update(seen)
    cycles.sort(key=lambda c: idx[c[0]])
    on_cycle: dict[str, int] = {}
    for i, c in enumerate(cycles):
        for v in c:
            on_cycle[v] = i

    basin_of: dict[str, int] = {}
    for v in g.vertices:
        u = v
        while u not in on_cycle:
            u = succ[u]
        basin_of[v] = on_cycle[u]

    exiting: dict[str, int] = {}
    for v in g.vertices:
        best = None
        for i, c in enumerate(cycles):
            dist = min(q.d(x, v) for x in c)
            if best is None or dist < best[0]:
                best = (dist, i)
        exiting[v] = best[1]

    return ZeroStructure(
        zero_edges=tuple((v, succ[v]) for v in g.vertices),
        cycles=tuple(cycles),
        basin_of=basin_of,
        exiting_basin_of=exiting,
    )


def geodetic_out_component(
    g: Graph, q: Quasimetric, zs: ZeroStructure, cycle_index: int
) -> OutUnicyclicComponent:
    """Spanning out-unicyclic graph around cycle C_i built from geodesics.

    Each vertex off the cycle keeps exactly one entering edge lying on a
    geodesic from the cycle (earliest predecessor wins); omega equals the
    distance d(C_i, .).
    """
    if not 0 <= cycle_index < len(zs.cycles):
        raise InvalidCycleIndexError(f"no cycle with index {cycle_index}")
    cycle = zs.cycles[cycle_index]
    dist, _ = _dijkstra(g, sorted(cycle, key=g.index.__getitem__))
    edges: list[tuple[str, str]] = []
    for i, v in enumerate(cycle):
        edges.append((v, cycle[(i + 1) % len(cycle)]))
    for v in g.vertices:
        if v in cycle:
            continue
        entering = None
        for e in sorted(g.in_edges[v], key=lambda e: g.index[e.src]):
            if dist[e.src] + e.delta == dist[v]:
                entering = (e.src, v)
                break
        if entering is None:  # unreachable on strongly connected input
            raise InvalidCycleIndexError(f"no geodesic entering edge for {v!r}")
        edges.append(entering)
    omega = {v: dist[v] for v in g.vertices}
    return OutUnicyclicComponent(
        cycle_index=cycle_index, edges=tuple(edges), omega=omega
    )
