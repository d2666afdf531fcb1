"""Discrete Hamilton-Jacobi equations on strongly connected digraphs.

Core objects: the weighted graph model, the induced pseudo-quasimetric,
the zero-map structure, arborescence optimization (the Freidlin-Wentzell
solution), the complete solution family, the Lax-Oleinik semigroup, and
finite-N stationary numerics.
"""

from .arborescence import (
    Arborescence,
    LiftedChain,
    build_lifted_chain,
    enumerate_arborescences,
    fw_solution,
    matrix_tree_measure,
    min_arborescence,
)
from .errors import DhjError
from .graph import Edge, Graph, ValidationReport, parse_graph, validate
from .hj import (
    SolutionReport,
    check_solution,
    hj_residual,
    lambda_from_solution,
    meta_fw,
    minimal_solution,
    quasipotential,
    solution_from_lambda,
)
from .quasimetric import Quasimetric, all_pairs_distances, set_distance
from .semigroup import Trajectory, iterate_to_fixed_point, lax_oleinik_step, path_action
from .numerics import stationary_measure, viscosity_sweep
from .special_cases import (
    RingSpec,
    gradient_condition,
    reversible_fw,
    reversible_structure_checks,
    ring_fw,
)
from .zero_structure import ZeroStructure, geodetic_out_component, zero_structure

__all__ = [
    "Arborescence",
    "DhjError",
    "Edge",
    "Graph",
    "LiftedChain",
    "Quasimetric",
    "RingSpec",
    "SolutionReport",
    "Trajectory",
    "ValidationReport",
    "ZeroStructure",
    "all_pairs_distances",
    "build_lifted_chain",
    "check_solution",
    "enumerate_arborescences",
    "fw_solution",
    "geodetic_out_component",
    "gradient_condition",
    "hj_residual",
    "iterate_to_fixed_point",
    "lambda_from_solution",
    "lax_oleinik_step",
    "matrix_tree_measure",
    "meta_fw",
    "min_arborescence",
    "minimal_solution",
    "parse_graph",
    "path_action",
    "quasipotential",
    "reversible_fw",
    "reversible_structure_checks",
    "ring_fw",
    "set_distance",
    "solution_from_lambda",
    "stationary_measure",
    "validate",
    "viscosity_sweep",
    "zero_structure",
]
