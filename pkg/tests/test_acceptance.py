"""End-to-end acceptance gate.

Each test is one pass/fail criterion; together they pin the whole
contract: the worked four-vertex example, oracle equality for the
optimizer, the two equivalent constructions of the stationary rate, the
verification closure of the solution family, measure cross-checks, the
finite-size convergence envelope, semigroup convergence, the lifted
chain, the reversible machinery, the ring closed form, and the property
batteries.
"""

from __future__ import annotations

import math
import random

import pytest

from dhj.arborescence import (
    arborescence_counts,
    build_lifted_chain,
    enumerate_arborescences,
    fw_solution,
    matrix_tree_measure,
    min_arborescence,
)
from dhj.errors import InfeasibleLambdaError
from dhj.hj import (
    check_solution,
    lambda_from_solution,
    meta_fw,
    minimal_solution,
    solution_from_lambda,
)
from dhj.numerics import RateModel, rate_potential, stationary_measure
from dhj.quasimetric import all_pairs_distances
from dhj.random_instances import (
    random_feasible_lambda,
    random_instance,
    random_reversible_instance,
    random_ring,
)
from dhj.semigroup import iterate_to_fixed_point, lax_oleinik_step
from dhj.special_cases import (
    RingSpec,
    gradient_condition,
    reversible_fw,
    reversible_structure_checks,
    ring_fw,
)
from dhj.zero_structure import zero_structure
from tests.conftest import make_g4, make_rev3


def _ctx(g):
    q = all_pairs_distances(g)
    return q, zero_structure(g, q)


@pytest.fixture(scope="module")
def pool_200():
    rng = random.Random(424242)
    return [random_instance(rng) for _ in range(200)]


def test_worked_four_vertex_example(pool_200):
    g = make_g4()
    q, zs = _ctx(g)
    fw = fw_solution(g)
    assert fw == {"1": 1.0, "2": 1.0, "3": 0.0, "4": 0.0}
    assert lambda_from_solution(g, zs, fw) == (1.0, 0.0)
    assert solution_from_lambda(g, q, zs, (1.0, 0.0)) == fw
    with pytest.raises(InfeasibleLambdaError):
        solution_from_lambda(g, q, zs, (3.0, 0.0), tol=1e-12)


def test_optimizer_matches_enumeration_oracle(pool_200):
    for g in pool_200:
        for root in g.vertices:
            taus = enumerate_arborescences(g, root)
            best = min(t.weight_sum for t in taus)
            assert min_arborescence(g, root).weight_sum == best


def test_two_constructions_of_the_stationary_rate_agree(pool_200):
    for g in pool_200[:100]:
        q, zs = _ctx(g)
        lam = meta_fw(g, q, zs)
        composed = solution_from_lambda(g, q, zs, lam)
        fw = fw_solution(g)
        assert max(abs(composed[v] - fw[v]) for v in g.vertices) <= 1e-9


def test_solution_family_verification_closure(pool_200):
    rng = random.Random(4242)
    for g in pool_200[:60]:
        q, zs = _ctx(g)
        for W in (fw_solution(g), minimal_solution(g, q, zs)):
            report = check_solution(g, q, zs, W)
            assert report.is_subsolution and report.is_supersolution
        lam1 = random_feasible_lambda(rng, q, zs)
        lam2 = random_feasible_lambda(rng, q, zs)
        W1 = solution_from_lambda(g, q, zs, lam1)
        W2 = solution_from_lambda(g, q, zs, lam2)
        pointwise_min = {v: min(W1[v], W2[v]) for v in g.vertices}
        assert check_solution(g, q, zs, pointwise_min).is_solution


def test_tree_sum_measure_matches_linear_solve(pool_200):
    small = [g for g in pool_200 if len(g.vertices) <= 6][:40]
    for g in small:
        for N in (1.0, 5.0, 20.0):
            pi = stationary_measure(g, N).pi
            tree = matrix_tree_measure(g, N)
            tv = 0.5 * sum(abs(pi[x] - tree[x]) for x in g.vertices)
            assert tv <= 1e-10


def test_finite_size_rate_convergence_envelope(pool_200):
    for g in pool_200[:25]:
        fw = fw_solution(g)
        scale = math.log(max(arborescence_counts(g).values()))
        errors = {}
        for N in (5.0, 10.0, 20.0, 40.0):
            w = rate_potential(g, N)
            errors[N] = max(abs(w[x] - fw[x]) for x in g.vertices)
            assert errors[N] <= scale / N + 1e-9
        assert errors[40.0] <= errors[5.0] + 1e-12
    g4 = make_g4()
    fw = fw_solution(g4)
    w = rate_potential(g4, 10.0)
    assert max(abs(w[x] - fw[x]) for x in g4.vertices) <= math.log(2) / 10.0


def test_semigroup_fixed_point_and_convergence(pool_200):
    for g in pool_200[:100]:
        fw = fw_solution(g)
        assert lax_oleinik_step(g, fw) == fw
        q, zs = _ctx(g)
        n = len(g.vertices)
        result, steps, converged = iterate_to_fixed_point(
            g, {v: 0.0 for v in g.vertices}, n * n, tol=0.0
        )
        assert converged and steps <= n * n
        assert result == minimal_solution(g, q, zs)


def test_lifted_chain_structure_and_projection():
    rng = random.Random(515151)
    pool = [random_instance(rng, n_min=2, n_max=5) for _ in range(20)]
    for g in pool:
        chain = build_lifted_chain(g, 2.0)
        assert chain.in_degree == chain.out_degree
        assert chain.strongly_connected
        assert chain.stationarity_residual <= 1e-10
        pi = matrix_tree_measure(g, 2.0)
        assert all(abs(chain.marginal[x] - pi[x]) <= 1e-12 for x in g.vertices)


def test_reversible_machinery():
    rev3 = make_rev3()
    rd = gradient_condition(rev3)
    assert reversible_fw(rev3, rd) == {"1": 0.0, "2": 0.0, "3": 1.0}
    assert fw_solution(rev3) == {"1": 0.0, "2": 0.0, "3": 1.0}
    report = reversible_structure_checks(rev3, rd)
    assert report["skeleton_is_reversed_zero_map"]
    assert report["bijection_weight_identity"]

    rng = random.Random(616161)
    for i in range(50):
        g = random_reversible_instance(rng)
        rd = gradient_condition(g)
        assert rd.is_gradient
        _, zs = _ctx(g)
        assert all(len(c) == 2 for c in zs.cycles)
        if i < 12:  # full structural cross-check on a subset
            rep = reversible_structure_checks(g, rd)
            assert rep["skeleton_is_reversed_zero_map"]
            assert rep["bijection_weight_identity"]


def test_ring_closed_form():
    rs4 = RingSpec(k=4, forward=(0.0, 1.0, 0.0, 2.0), backward=(0.0, 0.7, 0.0, 0.4))
    assert ring_fw(rs4) == pytest.approx({"1": 0.3, "2": 0.3, "3": 0.0, "4": 0.0})
    rng = random.Random(717171)
    for _ in range(50):
        rs = random_ring(rng)
        closed = ring_fw(rs)
        direct = fw_solution(rs.to_graph())
        assert max(abs(closed[v] - direct[v]) for v in direct) <= 1e-9


def test_property_batteries(pool_200):
    rng = random.Random(818181)

    # triangle inequality, 100 instances
    for g in pool_200[:100]:
        q = all_pairs_distances(g)
        vs = g.vertices
        for x in vs:
            for y in vs:
                for z in vs:
                    assert q.d(x, z) <= q.d(x, y) + q.d(y, z) + 1e-12

    # subsolution iff 1-Lipschitz for the induced metric, 100 cases
    for g in pool_200[:100]:
        q, zs = _ctx(g)
        W = {v: rng.uniform(0, 1.5) for v in g.vertices}
        edgewise = check_solution(g, q, zs, W).is_subsolution
        lipschitz = all(
            W[x] - W[y] <= q.d(y, x) + 1e-12 for x in g.vertices for y in g.vertices
        )
        assert edgewise == lipschitz

    # monotonicity and non-expansiveness of the one-step operator
    for g in pool_200[100:200]:
        V = {v: rng.uniform(0, 2) for v in g.vertices}
        W = {v: V[v] + rng.uniform(0, 1) for v in g.vertices}
        LV, LW = lax_oleinik_step(g, V), lax_oleinik_step(g, W)
        assert all(LV[v] <= LW[v] + 1e-12 for v in g.vertices)
        U = {v: rng.uniform(0, 2) for v in g.vertices}
        LU = lax_oleinik_step(g, U)
        gap_in = max(abs(V[v] - U[v]) for v in g.vertices)
        gap_out = max(abs(LV[v] - LU[v]) for v in g.vertices)
        assert gap_out <= gap_in + 1e-12

    # detailed balance on generated reversible instances, 100 cases
    for _ in range(25):
        g = random_reversible_instance(rng)
        for N in (1.0, 3.0, 8.0, 15.0):
            pi = stationary_measure(g, N).pi
            model = RateModel.build(g, N)
            for e in g.edges:
                lhs = pi[e.src] * model.rates[(e.src, e.dst)]
                rhs = pi[e.dst] * model.rates[(e.dst, e.src)]
                # elimination noise is absolute (~1e-16), so the bound
                # mixes a relative term with the O(1) flux scale
                assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs), abs(rhs))
