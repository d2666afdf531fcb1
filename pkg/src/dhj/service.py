"""HTTP service wrapping the library.

Every CLI command has a POST endpoint taking the graph inline, so the
toolkit can serve several clients from one process. Domain errors map to
HTTP 400 with the library's stable error names.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import ops
from .errors import DhjError
from .graph import DEFAULT_TOL, Edge, Graph

app = FastAPI(title="dhj", version="0.1.0")


class EdgeModel(BaseModel):
    src: str = Field(alias="from")
    dst: str = Field(alias="to")
    delta: float
    prefactor: float = 1.0

    model_config = {"populate_by_name": True}


class GraphModel(BaseModel):
    vertices: list[str]
    edges: list[EdgeModel]

    def build(self) -> Graph:
        return Graph(
            tuple(self.vertices),
            tuple(Edge(e.src, e.dst, e.delta, e.prefactor) for e in self.edges),
        )


class GraphRequest(BaseModel):
    graph: GraphModel
    tolerance: float = DEFAULT_TOL


class ArborescencesRequest(GraphRequest):
    root: str
    enumerate_all: bool = False
    max_size: int | None = None


class QuasipotentialRequest(GraphRequest):
    cycle_index: int


class SolveRequest(GraphRequest):
    levels: list[float]


class CheckRequest(GraphRequest):
    potential: dict[str, float]


class LaxOleinikRequest(GraphRequest):
    v0: dict[str, float] | None = None
    max_steps: int = 1000


class StationaryRequest(GraphRequest):
    N: float


class ViscosityRequest(GraphRequest):
    N_list: list[float]
    max_size: int | None = None


class LiftRequest(GraphRequest):
    N: float
    max_size: int | None = None


class RingRequest(BaseModel):
    k: int
    forward: list[float]
    backward: list[float]
    tolerance: float = DEFAULT_TOL


@app.exception_handler(DhjError)
async def _domain_error(request: Request, exc: DhjError):
    return JSONResponse(
        status_code=400, content={"error": exc.name, "detail": str(exc)}
    )


@app.post("/validate")
def validate_endpoint(req: GraphRequest) -> dict:
    return ops.validate_op(req.graph.build(), req.tolerance)


@app.post("/distances")
def distances_endpoint(req: GraphRequest) -> dict:
    return ops.distances_op(req.graph.build())


@app.post("/zero-map")
def zero_map_endpoint(req: GraphRequest) -> dict:
    return ops.zero_map_op(req.graph.build(), req.tolerance)


@app.post("/arborescences")
def arborescences_endpoint(req: ArborescencesRequest) -> dict:
    return ops.arborescences_op(
        req.graph.build(), req.root, req.enumerate_all, req.max_size
    )


@app.post("/fw")
def fw_endpoint(req: GraphRequest) -> dict:
    return ops.fw_op(req.graph.build())


@app.post("/meta-fw")
def meta_fw_endpoint(req: GraphRequest) -> dict:
    return ops.meta_fw_op(req.graph.build(), req.tolerance)


@app.post("/quasipotential")
def quasipotential_endpoint(req: QuasipotentialRequest) -> dict:
    return ops.quasipotential_op(req.graph.build(), req.cycle_index, req.tolerance)


@app.post("/solve")
def solve_endpoint(req: SolveRequest) -> dict:
    return ops.solve_op(req.graph.build(), req.levels, req.tolerance)


@app.post("/check")
def check_endpoint(req: CheckRequest) -> dict:
    return ops.check_op(req.graph.build(), req.potential, req.tolerance)


@app.post("/minimal")
def minimal_endpoint(req: GraphRequest) -> dict:
    return ops.minimal_op(req.graph.build(), req.tolerance)


@app.post("/lax-oleinik")
def lax_oleinik_endpoint(req: LaxOleinikRequest) -> dict:
    return ops.lax_oleinik_op(req.graph.build(), req.v0, req.max_steps, req.tolerance)


@app.post("/stationary")
def stationary_endpoint(req: StationaryRequest) -> dict:
    return ops.stationary_op(req.graph.build(), req.N)


@app.post("/viscosity")
def viscosity_endpoint(req: ViscosityRequest) -> dict:
    return ops.viscosity_op(req.graph.build(), req.N_list, req.max_size)


@app.post("/lift")
def lift_endpoint(req: LiftRequest) -> dict:
    return ops.lift_op(req.graph.build(), req.N, req.max_size)


@app.post("/reversible")
def reversible_endpoint(req: GraphRequest) -> dict:
    return ops.reversible_op(req.graph.build(), req.tolerance)


@app.post("/ring")
def ring_endpoint(req: RingRequest) -> dict:
    return ops.ring_op(
        {"k": req.k, "forward": req.forward, "backward": req.backward}, req.tolerance
    )
