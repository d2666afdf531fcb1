"""The discrete stationary Hamilton-Jacobi equation.

Residuals, subsolution/supersolution verification with skeleton
extraction, cycle quasipotentials, the complete solution family indexed
by feasible cycle levels, and the meta-graph representation of the
Freidlin-Wentzell solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .arborescence import fw_solution
from .errors import (
    InfeasibleLambdaError,
    InvalidCycleIndexError,
    NotConstantOnCycleError,
    VertexMissingError,
)
from .graph import DEFAULT_TOL, Edge, Graph
from .quasimetric import Quasimetric, set_distance
from .zero_structure import ZeroStructure


@dataclass(frozen=True)
class SolutionReport:
    is_subsolution: bool
    subsolution_violations: tuple[str, ...]
    is_supersolution: bool
    supersolution_witness: dict[str, tuple[str, str] | None]
    skeleton: tuple[tuple[str, str], ...]
    is_solution: bool
    lam: tuple[float, ...] | None  # W read off the cycles, when constant there
    face: str  # "maximal" | "minimal" | "other"

    def to_json_dict(self) -> dict:
        return {
            "is_subsolution": self.is_subsolution,
            "subsolution_violations": list(self.subsolution_violations),
            "is_supersolution": self.is_supersolution,
            "supersolution_witness": {
                v: list(e) if e else None for v, e in self.supersolution_witness.items()
            },
            "skeleton": [list(e) for e in self.skeleton],
            "is_solution": self.is_solution,
            "lambda": list(self.lam) if self.lam is not None else None,
            "face": self.face,
        }


def _require_total(g: Graph, W: Mapping[str, float]):
    for v in g.vertices:
        if v not in W:
            raise VertexMissingError(f"potential missing vertex {v!r}")


def hj_residual(g: Graph, W: Mapping[str, float]) -> dict[str, float]:
    """Per-vertex defect of the stationary equation:
    [W(x) + min_out delta] - [min over in-edges of W(y) + delta(y, x)].
    Zero everywhere iff W solves the equation."""
    _require_total(g, W)
    out = {}
    for x in g.vertices:
        min_out = min(e.delta for e in g.out_edges[x])
        min_in = min(W[e.src] + e.delta for e in g.in_edges[x])
        out[x] = (W[x] + min_out) - min_in
    return out


def _spanning_geodetic_family_in_skeleton(
    g: Graph,
    q: Quasimetric,
    zs: ZeroStructure,
    W: Mapping[str, float],
    skeleton: set[tuple[str, str]],
    tol: float,
) -> bool:
    """Greedy search for a spanning geodetic out-unicyclic family inside
    the skeleton: grow components outward from the cycles, attaching a
    vertex when some skeleton in-edge extends a geodesic from the parent
    component's cycle."""
    comp: dict[str, int] = {}
    for i, c in enumerate(zs.cycles):
        lam = [W[v] for v in c]
        if max(lam) - min(lam) > tol:
            return False
        for v in c:
            comp[v] = i
    # the skeleton must contain every cycle edge
    for i, c in enumerate(zs.cycles):
        for k, v in enumerate(c):
            if (v, c[(k + 1) % len(c)]) not in skeleton:
                return False
    changed = True
    while changed and len(comp) < len(g.vertices):
        changed = False
        for v in g.vertices:
            if v in comp:
                continue
            for e in g.in_edges[v]:
                y = e.src
                if (y, v) not in skeleton or y not in comp:
                    continue
                i = comp[y]
                dci_y = min(q.d(c, y) for c in zs.cycles[i])
                dci_v = min(q.d(c, v) for c in zs.cycles[i])
                if abs(dci_y + e.delta - dci_v) <= tol:
                    comp[v] = i
                    changed = True
                    break
    return len(comp) == len(g.vertices)


def check_solution(
    g: Graph,
    q: Quasimetric,
    zs: ZeroStructure,
    W: Mapping[str, float],
    tol: float = DEFAULT_TOL,
) -> SolutionReport:
    """Verify the edgewise subsolution inequality, the existence of an
    equality in-edge per vertex, extract the skeleton, read the cycle
    levels, and classify the face of the Lipschitz polyhedron."""
    _require_total(g, W)
    violations = []
    for e in g.edges:
        # inequality W(x) - W(y) <= delta(y, x) over directed edges (y, x)
        if W[e.dst] - W[e.src] > e.delta + tol:
            violations.append(
                f"edge ({e.src!r}, {e.dst!r}): "
                f"W({e.dst!r}) - W({e.src!r}) = {W[e.dst] - W[e.src]} > delta = {e.delta}"
            )
    is_sub = not violations

    skeleton: set[tuple[str, str]] = set()
    witness: dict[str, tuple[str, str] | None] = {}
    for x in g.vertices:
        witness[x] = None
        for e in sorted(g.in_edges[x], key=lambda e: g.index[e.src]):
            if abs(W[x] - W[e.src] - e.delta) <= tol:
                skeleton.add((e.src, x))
                if witness[x] is None:
                    witness[x] = (e.src, x)
    is_super = all(w is not None for w in witness.values())

    lam: tuple[float, ...] | None = None
    if all(max(W[v] for v in c) - min(W[v] for v in c) <= tol for c in zs.cycles):
        lam = tuple(W[c[0]] for c in zs.cycles)

    face = "other"
    if is_sub and _spanning_geodetic_family_in_skeleton(g, q, zs, W, skeleton, tol):
        face = "maximal"
    elif is_sub and all(
        max(W[v] for v in g.vertices if zs.basin_of[v] == i)
        - min(W[v] for v in g.vertices if zs.basin_of[v] == i)
        <= tol
        for i in range(len(zs.cycles))
    ):
        face = "minimal"

    idx = g.index
    return SolutionReport(
        is_subsolution=is_sub,
        subsolution_violations=tuple(violations),
        is_supersolution=is_super,
        supersolution_witness=witness,
        skeleton=tuple(sorted(skeleton, key=lambda e: (idx[e[0]], idx[e[1]]))),
        is_solution=is_sub and is_super,
        lam=lam,
        face=face,
    )


def quasipotential(
    g: Graph, q: Quasimetric, zs: ZeroStructure, cycle_index: int
) -> dict[str, float]:
    """W_C(x) = d(C, x): zero exactly on the cycle, positive off it."""
    if not 0 <= cycle_index < len(zs.cycles):
        raise InvalidCycleIndexError(f"no cycle with index {cycle_index}")
    cycle = zs.cycles[cycle_index]
    return {x: min(q.d(c, x) for c in cycle) for x in g.vertices}


def check_lambda_feasible(
    q: Quasimetric, zs: ZeroStructure, lam: Sequence[float], tol: float = DEFAULT_TOL
):
    """Raise unless lambda_i - lambda_j <= d(C_j, C_i) for all pairs."""
    if len(lam) != len(zs.cycles):
        raise InvalidCycleIndexError(
            f"lambda has {len(lam)} entries for {len(zs.cycles)} cycles"
        )
    for i in range(len(zs.cycles)):
        for j in range(len(zs.cycles)):
            if i == j:
                continue
            bound, _ = set_distance(q, zs.cycles[j], zs.cycles[i])
            slack = lam[i] - lam[j] - bound
            if slack > tol:
                raise InfeasibleLambdaError(i, j, slack)


def solution_from_lambda(
    g: Graph,
    q: Quasimetric,
    zs: ZeroStructure,
    lam: Sequence[float],
    tol: float = DEFAULT_TOL,
) -> dict[str, float]:
    """W_lambda = pointwise min over cycles of (quasipotential + level)."""
    check_lambda_feasible(q, zs, lam, tol)
    quasis = [quasipotential(g, q, zs, i) for i in range(len(zs.cycles))]
    return {
        x: min(quasis[i][x] + lam[i] for i in range(len(zs.cycles)))
        for x in g.vertices
    }


def lambda_from_solution(
    g: Graph, zs: ZeroStructure, W: Mapping[str, float], tol: float = DEFAULT_TOL
) -> tuple[float, ...]:
    """Read the cycle levels off a potential that is constant on each
    cycle (solutions always are)."""
    _require_total(g, W)
    lam = []
    for i, c in enumerate(zs.cycles):
        vals = [W[v] for v in c]
        if max(vals) - min(vals) > tol:
            raise NotConstantOnCycleError(
                f"potential not constant on cycle {i}: spread {max(vals) - min(vals)}"
            )
        lam.append(W[c[0]])
    return tuple(lam)


def minimal_solution(g: Graph, q: Quasimetric, zs: ZeroStructure) -> dict[str, float]:
    """The minimal normalized solution: x -> min_i d(C_i, x), i.e. the
    solution family member with all cycle levels at zero."""
    quasis = [quasipotential(g, q, zs, i) for i in range(len(zs.cycles))]
    return {x: min(qp[x] for qp in quasis) for x in g.vertices}


def meta_fw(g: Graph, q: Quasimetric, zs: ZeroStructure) -> tuple[float, ...]:
    """Cycle levels of the FW solution, computed on the meta-graph: the
    complete digraph on cycles with weights d(C_j, C_i), via minimal
    arborescences per root, normalized to minimum zero."""
    k = len(zs.cycles)
    if k == 1:
        return (0.0,)
    names = tuple(str(i) for i in range(k))
    edges = []
    for j in range(k):
        for i in range(k):
            if i == j:
                continue
            dist, _ = set_distance(q, zs.cycles[j], zs.cycles[i])
            edges.append(Edge(names[j], names[i], dist))
    meta = Graph(names, tuple(edges))
    levels = fw_solution(meta)
    return tuple(levels[names[i]] for i in range(k))
