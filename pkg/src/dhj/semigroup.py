"""Path action and the discrete Lax-Oleinik semigroup.

The action of a jump trajectory is the sum of deltas over its transitions
and does not depend on jump times; the induced one-step operator takes a
minimum over in-neighbors, and its fixed points are exactly the solutions
of the stationary equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import NonEdgeTransitionError, VertexMissingError
from .graph import DEFAULT_TOL, Graph


@dataclass(frozen=True)
class Trajectory:
    states: tuple[str, ...]
    jump_times: tuple[float, ...] | None = None  # optional, ignored by the action

    def __post_init__(self):
        if self.jump_times is not None:
            n = len(self.states) - 1
            if len(self.jump_times) != n:
                raise NonEdgeTransitionError(
                    f"expected {n} jump times, got {len(self.jump_times)}"
                )
            if any(b <= a for a, b in zip(self.jump_times, self.jump_times[1:])):
                raise NonEdgeTransitionError("jump times must be strictly increasing")


def path_action(g: Graph, traj: Trajectory) -> float:
    """Sum of deltas over consecutive transitions."""
    total = 0.0
    for a, b in zip(traj.states, traj.states[1:]):
        if not g.has_edge(a, b):
            raise NonEdgeTransitionError(f"({a!r}, {b!r}) is not an edge")
        total += g.delta(a, b)
    return total


def lax_oleinik_step(g: Graph, V: Mapping[str, float]) -> dict[str, float]:
    """(LV)(x) = min over in-edges (y, x) of V(y) + delta(y, x)."""
    for v in g.vertices:
        if v not in V:
            raise VertexMissingError(f"potential missing vertex {v!r}")
    return {
        x: min(V[e.src] + e.delta for e in g.in_edges[x]) for x in g.vertices
    }


def iterate_to_fixed_point(
    g: Graph,
    V0: Mapping[str, float],
    max_steps: int,
    tol: float = DEFAULT_TOL,
) -> tuple[dict[str, float], int, bool]:
    """Apply the operator until successive iterates agree within tol.

    Returns (final iterate, steps applied, converged flag). Starting from
    the zero potential the iterates are nondecreasing and converge to the
    minimal normalized solution; non-convergence within max_steps is
    reported, never raised.
    """
    cur = {v: float(V0[v]) for v in g.vertices}
    for step in range(1, max_steps + 1):
        nxt = lax_oleinik_step(g, cur)
        if all(abs(nxt[v] - cur[v]) <= tol for v in g.vertices):
            return nxt, step, True
        cur = nxt
    return cur, max_steps, False
