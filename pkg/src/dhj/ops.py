"""Command payload builders shared by the CLI and the HTTP service.

Each operation takes parsed inputs and returns a JSON-ready dict; domain
failures surface as DhjError subclasses. Neither front end implements
any numerics of its own.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from . import arborescence as arb
from . import hj, numerics, semigroup, special_cases
from .errors import AssumptionViolatedError, NotStronglyConnectedError
from .graph import DEFAULT_TOL, Graph, potential_from_dict, validate
from .quasimetric import all_pairs_distances
from .zero_structure import geodetic_out_component, zero_structure


def _context(g: Graph, tol: float):
    q = all_pairs_distances(g)
    zs = zero_structure(g, q, tol)
    return q, zs


def validate_op(g: Graph, tol: float = DEFAULT_TOL, strict: bool = False) -> dict:
    report = validate(g, tol)
    if strict:
        if not report.strongly_connected:
            raise NotStronglyConnectedError("; ".join(report.violations))
        if not report.assumption_2_3_holds:
            raise AssumptionViolatedError("; ".join(report.violations))
    return report.to_json_dict()


def distances_op(g: Graph) -> dict:
    return {"distances": all_pairs_distances(g).to_json_dict()}


def zero_map_op(g: Graph, tol: float = DEFAULT_TOL) -> dict:
    q, zs = _context(g, tol)
    payload = zs.to_json_dict()
    payload["geodetic_components"] = [
        geodetic_out_component(g, q, zs, i).to_json_dict()
        for i in range(len(zs.cycles))
    ]
    return payload


def arborescences_op(
    g: Graph, root: str, enumerate_all: bool = False, max_size: int | None = None
) -> dict:
    cap = max_size if max_size is not None else arb.ENUMERATION_CAP
    best = arb.min_arborescence(g, root)
    payload = {"root": root, "minimum": best.to_json_dict()}
    if enumerate_all:
        taus = arb.enumerate_arborescences(g, root, max_size=cap)
        payload["all"] = [t.to_json_dict() for t in taus]
        payload["count"] = len(taus)
    return payload


def fw_op(g: Graph) -> dict:
    return {"potential": arb.fw_solution(g)}


def meta_fw_op(g: Graph, tol: float = DEFAULT_TOL) -> dict:
    q, zs = _context(g, tol)
    lam = hj.meta_fw(g, q, zs)
    return {"lambda": list(lam), "cycles": [list(c) for c in zs.cycles]}


def quasipotential_op(g: Graph, cycle_index: int, tol: float = DEFAULT_TOL) -> dict:
    q, zs = _context(g, tol)
    return {
        "cycle_index": cycle_index,
        "potential": hj.quasipotential(g, q, zs, cycle_index),
    }


def solve_op(g: Graph, lam: Sequence[float], tol: float = DEFAULT_TOL) -> dict:
    q, zs = _context(g, tol)
    return {"lambda": list(lam), "potential": hj.solution_from_lambda(g, q, zs, lam, tol)}


def check_op(g: Graph, potential: Mapping[str, float], tol: float = DEFAULT_TOL) -> dict:
    q, zs = _context(g, tol)
    W = potential_from_dict(g, potential)
    return hj.check_solution(g, q, zs, W, tol).to_json_dict()


def minimal_op(g: Graph, tol: float = DEFAULT_TOL) -> dict:
    q, zs = _context(g, tol)
    return {"potential": hj.minimal_solution(g, q, zs)}


def lax_oleinik_op(
    g: Graph,
    v0: Mapping[str, float] | None,
    max_steps: int,
    tol: float = DEFAULT_TOL,
) -> dict:
    start = (
        {v: 0.0 for v in g.vertices}
        if v0 is None
        else potential_from_dict(g, v0)
    )
    result, steps, converged = semigroup.iterate_to_fixed_point(g, start, max_steps, tol)
    return {"potential": result, "steps": steps, "converged": converged}


def stationary_op(g: Graph, N: float) -> dict:
    return numerics.stationary_measure(g, N).to_json_dict()


def viscosity_op(g: Graph, N_list: Sequence[float], max_size: int | None = None) -> dict:
    cap = max_size if max_size is not None else arb.ENUMERATION_CAP
    rows = numerics.viscosity_sweep(g, list(N_list), max_size=cap)
    return {
        "rows": [r.to_json_dict() for r in rows],
        "fw": arb.fw_solution(g),
    }


def lift_op(g: Graph, N: float, max_size: int | None = None) -> dict:
    cap = max_size if max_size is not None else arb.LIFTED_CHAIN_CAP
    return arb.build_lifted_chain(g, N, max_size=cap).to_json_dict()


def reversible_op(g: Graph, tol: float = DEFAULT_TOL) -> dict:
    rd = special_cases.gradient_condition(g, tol)
    payload = {
        "is_gradient": rd.is_gradient,
        "base_vertex": rd.base_vertex,
        "delta_field": {f"{a}->{b}": v for (a, b), v in sorted(rd.delta_field.items())},
    }
    if rd.is_gradient:
        payload["potential"] = special_cases.reversible_fw(g, rd)
        payload["checks"] = special_cases.reversible_structure_checks(g, rd, tol)
    return payload


def ring_op(spec: dict, tol: float = DEFAULT_TOL) -> dict:
    rs = special_cases.RingSpec(
        k=int(spec["k"]),
        forward=tuple(float(v) for v in spec["forward"]),
        backward=tuple(float(v) for v in spec["backward"]),
    )
    return {"k": rs.k, "potential": special_cases.ring_fw(rs, tol)}
