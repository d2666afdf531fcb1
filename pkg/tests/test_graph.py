import json

import pytest

from dhj.errors import (
    DuplicateEdgeError,
    MalformedJsonError,
    NegativeDeltaError,
    NonpositivePrefactorError,
    SelfLoopError,
    UnknownVertexError,
)
from dhj.graph import (
    Edge,
    Graph,
    parse_graph,
    serialize_graph,
    validate,
)


def test_parse_minimal_two_vertex_file():
    blob = json.dumps(
        {
            "vertices": ["a", "b"],
            "edges": [
                {"from": "a", "to": "b", "delta": 0.0},
                {"from": "b", "to": "a", "delta": 0.0},
            ],
        }
    )
    g = parse_graph(blob)
    assert g.vertices == ("a", "b")
    assert len(g.edges) == 2
    assert g.edges[0].prefactor == 1.0


def test_parse_four_vertex_fixture_file(g4):
    g = parse_graph(serialize_graph(g4))
    assert len(g.vertices) == 4
    assert len(g.edges) == 6


def test_parse_roundtrip_identity(r4):
    again = parse_graph(serialize_graph(r4))
    assert again.vertices == r4.vertices
    assert again.edges == r4.edges


@pytest.mark.parametrize(
    "mutate,exc",
    [
        (lambda d: d["edges"][0].update(delta=-0.1), NegativeDeltaError),
        (lambda d: d["edges"][0].update(prefactor=0.0), NonpositivePrefactorError),
        (lambda d: d["edges"].append(dict(d["edges"][0])), DuplicateEdgeError),
        (lambda d: d["edges"][0].update(to="a"), SelfLoopError),
        (lambda d: d["edges"][0].update(to="zzz"), UnknownVertexError),
    ],
)
def test_named_parse_errors(mutate, exc):
    data = {
        "vertices": ["a", "b"],
        "edges": [
            {"from": "a", "to": "b", "delta": 0.0},
            {"from": "b", "to": "a", "delta": 0.0},
        ],
    }
    mutate(data)
    with pytest.raises(exc):
        parse_graph(json.dumps(data))


def test_malformed_json_is_a_named_error():
    with pytest.raises(MalformedJsonError):
        parse_graph(b"{not json")
    with pytest.raises(MalformedJsonError):
        parse_graph(json.dumps([1, 2, 3]))


def test_validate_accepts_the_four_vertex_fixture(g4):
    report = validate(g4)
    assert report.strongly_connected
    assert report.assumption_2_3_holds
    assert report.violations == ()


def test_validate_detects_disconnection(g4):
    # dropping (4,1) makes {1,2} unreachable from {3,4}
    pruned = Graph(
        g4.vertices, tuple(e for e in g4.edges if (e.src, e.dst) != ("4", "1"))
    )
    assert not validate(pruned).strongly_connected


def test_validate_detects_double_zero_out_edge(g4):
    edges = tuple(
        Edge(e.src, e.dst, 0.0 if (e.src, e.dst) == ("2", "3") else e.delta)
        for e in g4.edges
    )
    report = validate(Graph(g4.vertices, edges))
    assert not report.assumption_2_3_holds
    assert report.zero_out_degree["2"] == 2


def test_validate_is_pure(g4):
    assert validate(g4) == validate(g4)


def test_zero_detection_uses_tolerance(g2):
    bumped = Graph(
        g2.vertices, tuple(Edge(e.src, e.dst, 1e-12) for e in g2.edges)
    )
    assert validate(bumped, tol=1e-9).assumption_2_3_holds
    assert not validate(bumped, tol=1e-15).assumption_2_3_holds
