"""Graph data model, JSON parsing, and structural validation.

Vertices are opaque strings; the order in which they appear in the input
file is the canonical total order used for every deterministic tie-break
downstream. Edge weights ``delta`` are nonnegative reals; ``prefactor``
is the subexponential factor of the jump rates (defaults to 1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import IO, Mapping

from .errors import (
    DuplicateEdgeError,
    MalformedJsonError,
    NegativeDeltaError,
    NonpositivePrefactorError,
    SelfLoopError,
    UnknownVertexError,
)

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    delta: float
    prefactor: float = 1.0


@dataclass(frozen=True)
class Graph:
    """Finite directed graph with nonnegative edge weights, no loops,
    no parallel edges. Immutable after construction."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        seen_v = set()
        for v in self.vertices:
            if v in seen_v:
                raise DuplicateEdgeError(f"duplicate vertex {v!r}")
            seen_v.add(v)
        seen_e = set()
        for e in self.edges:
            if e.src == e.dst:
                raise SelfLoopError(f"self-loop on vertex {e.src!r}")
            if (e.src, e.dst) in seen_e:
                raise DuplicateEdgeError(f"duplicate edge ({e.src!r}, {e.dst!r})")
            seen_e.add((e.src, e.dst))
            if e.src not in seen_v or e.dst not in seen_v:
                raise UnknownVertexError(
                    f"edge ({e.src!r}, {e.dst!r}) references unknown vertex"
                )
            if e.delta < 0:
                raise NegativeDeltaError(
                    f"edge ({e.src!r}, {e.dst!r}) has delta {e.delta} < 0"
                )
            if e.prefactor <= 0:
                raise NonpositivePrefactorError(
                    f"edge ({e.src!r}, {e.dst!r}) has prefactor {e.prefactor} <= 0"
                )

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def out_edges(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.src].append(e)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def in_edges(self) -> dict[str, tuple[Edge, ...]]:
        inc: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.dst].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    @cached_property
    def edge_map(self) -> dict[tuple[str, str], Edge]:
        return {(e.src, e.dst): e for e in self.edges}

    def delta(self, src: str, dst: str) -> float:
        return self.edge_map[(src, dst)].delta

    def has_edge(self, src: str, dst: str) -> bool:
        return (src, dst) in self.edge_map

    def reversed(self) -> "Graph":
        return Graph(
            self.vertices,
            tuple(Edge(e.dst, e.src, e.delta, e.prefactor) for e in self.edges),
        )

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [
                {
                    "from": e.src,
                    "to": e.dst,
                    "delta": e.delta,
                    "prefactor": e.prefactor,
                }
                for e in self.edges
            ],
        }


@dataclass(frozen=True)
class ValidationReport:
    strongly_connected: bool
    has_self_loop: bool
    zero_out_degree: Mapping[str, int]
    assumption_2_3_holds: bool
    violations: tuple[str, ...] = field(default_factory=tuple)

    def to_json_dict(self) -> dict:
        return {
            "strongly_connected": self.strongly_connected,
            "has_self_loop": self.has_self_loop,
            "zero_out_degree": dict(self.zero_out_degree),
            "assumption_2_3_holds": self.assumption_2_3_holds,
            "violations": list(self.violations),
        }


def graph_from_dict(data: dict) -> Graph:
    if not isinstance(data, dict):
        raise MalformedJsonError("top-level JSON value must be an object")
    try:
        vertices = tuple(str(v) for v in data["vertices"])
        raw_edges = data["edges"]
    except (KeyError, TypeError) as exc:
        raise MalformedJsonError(f"missing field: {exc}") from exc
    edges = []
    for item in raw_edges:
        try:
            edges.append(
                Edge(
                    src=str(item["from"]),
                    dst=str(item["to"]),
                    delta=float(item["delta"]),
                    prefactor=float(item.get("prefactor", 1.0)),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedJsonError(f"bad edge record {item!r}: {exc}") from exc
    return Graph(vertices, tuple(edges))


def parse_graph(source: bytes | str | IO) -> Graph:
    """Parse a graph from the JSON wire format.

    ``source`` may be bytes, a string, or a readable file object. Vertex
    order in the file is preserved (it is the canonical tie-break order).
    """
    if hasattr(source, "read"):
        source = source.read()
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise MalformedJsonError(str(exc)) from exc
    return graph_from_dict(data)


def serialize_graph(g: Graph) -> str:
    return json.dumps(g.to_json_dict(), sort_keys=True)


def _reachable(g: Graph, start: str, forward: bool) -> set[str]:
    adj = g.out_edges if forward else g.in_edges
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for e in adj[u]:
            w = e.dst if forward else e.src
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def is_strongly_connected(g: Graph) -> bool:
    if not g.vertices:
        return False
    if len(g.vertices) == 1:
        return True
    root = g.vertices[0]
    n = len(g.vertices)
    return len(_reachable(g, root, True)) == n and len(_reachable(g, root, False)) == n


def validate(g: Graph, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check strong connectivity and the one-zero-out-edge assumption.

    Zero detection uses ``|delta| <= tol``. Findings are reported, never
    raised.
    """
    violations: list[str] = []
    sc = is_strongly_connected(g)
    if not sc:
        violations.append("graph is not strongly connected")
    zero_out = {
        v: sum(1 for e in g.out_edges[v] if abs(e.delta) <= tol) for v in g.vertices
    }
    assumption = all(count == 1 for count in zero_out.values())
    for v, count in zero_out.items():
        if count != 1:
            violations.append(f"vertex {v!r} has {count} zero-delta out-edges (want 1)")
    return ValidationReport(
        strongly_connected=sc,
        has_self_loop=False,  # construction rejects loops
        zero_out_degree=zero_out,
        assumption_2_3_holds=assumption,
        violations=tuple(violations),
    )


def potential_from_dict(g: Graph, data: Mapping[str, float]) -> dict[str, float]:
    """Read a potential (vertex -> real) and check totality over g."""
    from .errors import VertexMissingError

    values = {}
    for v in g.vertices:
        if v not in data:
            raise VertexMissingError(f"potential missing vertex {v!r}")
        values[v] = float(data[v])
    return values


def normalize(values: Mapping[str, float]) -> dict[str, float]:
    """Shift a potential so that its minimum is exactly zero."""
    low = min(values.values())
    return {v: values[v] - low for v in values}
