"""Finite-N stationary measures and the vanishing-viscosity sweep.

The stationary measure is obtained by dense linear algebra on the
generator; for large N, where elimination can no longer resolve the
exponentially small components, the sweep switches to the log-space
matrix-tree evaluation, which is exact at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arborescence import (
    ENUMERATION_CAP,
    arborescence_counts,
    fw_solution,
    log_matrix_tree_measure,
    min_arborescence,
)
from .errors import (
    NotStronglyConnectedError,
    SizeCapExceededError,
    UnderflowRegimeError,
)
from .graph import Graph, is_strongly_connected, normalize

RATE_UNDERFLOW = 1e-300
# dense elimination resolves components down to ~1e-12 of the largest
_SOLVE_RANGE_LOG = math.log(1e12)


@dataclass(frozen=True)
class RateModel:
    N: float
    rates: dict[tuple[str, str], float]  # prefactor * exp(-N * delta) per edge
    exit_rate: dict[str, float]

    @classmethod
    def build(cls, g: Graph, N: float) -> "RateModel":
        rates = {
            (e.src, e.dst): e.prefactor * math.exp(-N * e.delta) for e in g.edges
        }
        exit_rate = {
            v: sum(rates[(e.src, e.dst)] for e in g.out_edges[v]) for v in g.vertices
        }
        return cls(N=N, rates=rates, exit_rate=exit_rate)


@dataclass(frozen=True)
class StationaryResult:
    N: float
    pi: dict[str, float]
    residual: float  # max-norm of pi Q

    def to_json_dict(self) -> dict:
        return {"N": self.N, "pi": dict(self.pi), "residual": self.residual}


def generator_matrix(g: Graph, model: RateModel) -> np.ndarray:
    """Q[x][y] = rate(x, y) off-diagonal, Q[x][x] = -exit rate; stationarity
    is the row-vector equation pi Q = 0."""
    n = len(g.vertices)
    idx = g.index
    Q = np.zeros((n, n))
    for (x, y), r in model.rates.items():
        Q[idx[x], idx[y]] = r
    for v in g.vertices:
        Q[idx[v], idx[v]] = -model.exit_rate[v]
    return Q


def stationary_measure(g: Graph, N: float) -> StationaryResult:
    """Solve pi Q = 0, sum(pi) = 1 by dense elimination with the last
    stationarity row replaced by the normalization row."""
    if not is_strongly_connected(g):
        raise NotStronglyConnectedError("stationary_measure needs a strongly connected graph")
    model = RateModel.build(g, N)
    if min(model.rates.values()) < RATE_UNDERFLOW:
        raise UnderflowRegimeError(
            "rates underflow at this N; use matrix_tree_measure instead"
        )
    Q = generator_matrix(g, model)
    n = len(g.vertices)
    A = Q.T.copy()
    A[n - 1, :] = 1.0
    b = np.zeros(n)
    b[n - 1] = 1.0
    pi = np.linalg.solve(A, b)
    residual = float(np.max(np.abs(pi @ Q)))
    return StationaryResult(
        N=N, pi={v: float(pi[i]) for i, v in enumerate(g.vertices)}, residual=residual
    )


def solver_in_range(g: Graph, N: float) -> bool:
    """Whether the linear solve can resolve every component of pi_N.

    Requires rates above the underflow floor and the spread of minimal
    arborescence weights small enough that no component falls below the
    elimination noise floor relative to the largest one.
    """
    model = RateModel.build(g, N)
    if min(model.rates.values()) < RATE_UNDERFLOW:
        return False
    weights = [min_arborescence(g, x).weight_sum for x in g.vertices]
    return N * (max(weights) - min(weights)) <= _SOLVE_RANGE_LOG


def rate_potential(g: Graph, N: float, max_size: int = ENUMERATION_CAP) -> dict[str, float]:
    """W_N = -(1/N) log pi_N, shifted to minimum zero; the linear solve is
    used while in range, the log-space matrix-tree evaluation otherwise
    (the two representations agree, so the switch preserves semantics)."""
    if solver_in_range(g, N):
        pi = stationary_measure(g, N).pi
        w = {x: -math.log(pi[x]) / N for x in g.vertices}
    else:
        log_pi = log_matrix_tree_measure(g, N, max_size=max_size)
        w = {x: -log_pi[x] / N for x in g.vertices}
    return normalize(w)


@dataclass(frozen=True)
class SweepRow:
    N: float
    error: float  # max-norm gap between normalized W_N and FW
    envelope: float | None  # ln(max_x |T_x|)/N, when enumeration is feasible
    method: str  # "linear-solve" | "matrix-tree"

    def to_json_dict(self) -> dict:
        return {
            "N": self.N,
            "error": self.error,
            "envelope": self.envelope,
            "method": self.method,
        }


def viscosity_sweep(
    g: Graph, N_list: list[float], max_size: int = ENUMERATION_CAP
) -> list[SweepRow]:
    """Convergence table of the finite-N rate toward the FW solution."""
    fw = fw_solution(g)
    try:
        max_count = max(arborescence_counts(g, max_size=max_size).values())
        envelope_scale = math.log(max_count)
    except SizeCapExceededError:
        envelope_scale = None
    rows = []
    for N in N_list:
        method = "linear-solve" if solver_in_range(g, N) else "matrix-tree"
        w = rate_potential(g, N, max_size=max_size)
        err = max(abs(w[x] - fw[x]) for x in g.vertices)
        env = envelope_scale / N if envelope_scale is not None else None
        rows.append(SweepRow(N=N, error=err, envelope=env, method=method))
    return rows
