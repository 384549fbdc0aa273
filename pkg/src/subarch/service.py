"""HTTP service wrapping the library: load architectures once, query many times.

Handles are opaque references to loaded architectures; heavy artifacts
(candidate sets per size) are cached on the handle so repeated queries and
covering runs do not recompute them. Errors carry a machine-readable code
(usage / validation / resource) that clients map to exit codes.
"""

from __future__ import annotations

import threading
from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from . import __version__
from .architecture import Architecture, architecture_from_definition, bundled_device_names, load_bundled
from .candidates import (
    DEFAULT_PATH_COMBINATION_CAP,
    CandidateSet,
    added_qubit_bound,
    candidates,
    optimal_candidates,
)
from .circuits import parse_circuit
from .covering import cover
from .dot import export_dot
from .enumeration import SubarchRef, census, enumerate_connected, iso_classes
from .errors import (
    ResourceLimitError,
    SubarchError,
    TimeLimitError,
    UsageError,
    ValidationError,
)
from .graphs import diameter
from .library import build_library, library_document
from .oracle import (
    compare_coverage,
    host_advantage_witness,
    make_subarch,
    minimum_swaps,
    replay,
)

app = FastAPI(title="subarch", version=__version__)


class _HandleStore:
    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._counter = 0
        self._architectures: dict[str, Architecture] = {}
        self._candidate_cache: dict[tuple[str, int, int], CandidateSet] = {}

    def add(self, arch: Architecture) -> str:
        with self._lock:
            self._counter += 1
            handle = f"arch-{self._counter}"
            self._architectures[handle] = arch
            return handle

    def get(self, handle: str) -> Architecture:
        with self._lock:
            arch = self._architectures.get(handle)
        if arch is None:
            raise UsageError(f"unknown or closed architecture handle {handle!r}")
        return arch

    def close(self, handle: str) -> None:
        with self._lock:
            if handle not in self._architectures:
                raise UsageError(f"unknown or closed architecture handle {handle!r}")
            del self._architectures[handle]
            self._candidate_cache = {
                key: value
                for key, value in self._candidate_cache.items()
                if key[0] != handle
            }

    def candidate_set(self, handle: str, n: int, cap: int, jobs: int) -> CandidateSet:
        key = (handle, n, cap)
        with self._lock:
            cached = self._candidate_cache.get(key)
        if cached is not None:
            return cached
        arch = self.get(handle)
        result = candidates(arch.graph, n, arch.name, cap=cap, jobs=jobs)
        with self._lock:
            self._candidate_cache[key] = result
        return result


_store = _HandleStore()


@app.exception_handler(SubarchError)
async def _subarch_error_handler(request: Request, exc: SubarchError) -> JSONResponse:
    if isinstance(exc, UsageError):
        status, code = 404 if "handle" in str(exc) else 400, "usage"
    elif isinstance(exc, ResourceLimitError):
        status, code = 409, "resource"
    elif isinstance(exc, ValidationError):
        status, code = 422, "validation"
    else:
        status, code = 500, "internal"
    detail: dict = {"code": code, "message": str(exc)}
    if isinstance(exc, TimeLimitError) and exc.partial is not None:
        detail["partial_member_sizes"] = sorted(m.size for m in exc.partial)
    return JSONResponse(status_code=status, content={"detail": detail})


class ArchitectureDefinition(BaseModel):
    name: str
    num_qubits: int
    edges: list[tuple[int, int]]
    labels: Optional[list[str]] = None
    source: str = ""

    def build(self) -> Architecture:
        return architecture_from_definition(self.model_dump(exclude_none=True))


class LoadRequest(BaseModel):
    definition: Optional[ArchitectureDefinition] = None
    device: Optional[str] = None


class HandleInfo(BaseModel):
    handle: str
    name: str
    num_qubits: int
    num_edges: int
    diameter: int
    content_hash: str


class SubarchModel(BaseModel):
    vertices: list[int]
    size: int
    class_key: str
    edges: list[tuple[int, int]]


def _subarch_model(ref: SubarchRef) -> SubarchModel:
    return SubarchModel(
        vertices=list(ref.vertices),
        size=ref.size,
        class_key=ref.class_key.hex(),
        edges=[list(e) for e in ref.graph.sorted_edges],
    )


class CensusRowModel(BaseModel):
    size: int
    connected: int
    classes: int


class CensusResponse(BaseModel):
    name: str
    num_qubits: int
    rows: list[CensusRowModel]
    connected: int
    non_isomorphic: int


class EnumerateResponse(BaseModel):
    size: int
    subsets: Optional[list[list[int]]] = None
    classes: Optional[list[SubarchModel]] = None
    multiplicities: Optional[list[int]] = None


class CandidatesResponse(BaseModel):
    size: int
    members: list[SubarchModel]
    provenance: list[list[str]]
    added_qubit_bound: int


class OptimalResponse(BaseModel):
    size: int
    members: list[SubarchModel]
    member_qubits: int


class CoverRequest(BaseModel):
    size: int
    max_elements: int
    jobs: int = 1
    path_cap: int = DEFAULT_PATH_COMBINATION_CAP
    time_limit: Optional[float] = None


class CoverResponse(BaseModel):
    size: int
    max_elements: int
    members: list[SubarchModel]
    member_sizes: list[int]
    covered_by: list[list[int]]


class OracleRequest(BaseModel):
    circuit: str = Field(description="circuit in the line-oriented text format")
    budget: Optional[int] = None
    use_distance_bound: bool = True
    max_vertices: int = 10
    max_gates: int = 40


class OracleResponse(BaseModel):
    swap_count: int
    exact: bool
    initial_assignment: list[int]
    schedule: list[list] = Field(
        description="actions: ['swap', u, v] or ['gate', index, u, v]"
    )


class WitnessRequest(BaseModel):
    sub1: list[int]
    sub2: list[int]
    reps: Optional[int] = None


class WitnessResponse(BaseModel):
    repetitions: int
    circuit: str
    host_swaps: int
    sub1_swaps: int
    sub2_swaps: int
    strict: bool


class CompareRequest(BaseModel):
    other: LoadRequest
    size: int
    gate_budget: int
    mode: str = "auto"
    samples: int = 200
    seed: int = 0


class CompareResponse(BaseModel):
    mode: str
    circuits_checked: int
    verdict: str
    proved: bool
    second_never_worse: bool
    first_never_worse: bool
    witness_second_better: Optional[dict] = None
    witness_first_better: Optional[dict] = None


class PrecomputeRequest(BaseModel):
    sizes: list[int]
    cover_limits: list[int] = Field(default_factory=list)
    jobs: int = 1
    path_cap: int = DEFAULT_PATH_COMBINATION_CAP
    time_limit: Optional[float] = None


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.get("/devices")
def devices() -> dict:
    return {"devices": bundled_device_names()}


def _arch_from_request(req: LoadRequest) -> Architecture:
    if (req.definition is None) == (req.device is None):
        raise UsageError("provide exactly one of \"definition\" or \"device\"")
    if req.device is not None:
        return load_bundled(req.device)
    assert req.definition is not None
    return req.definition.build()


def _handle_info(handle: str, arch: Architecture) -> HandleInfo:
    return HandleInfo(
        handle=handle,
        name=arch.name,
        num_qubits=arch.num_qubits,
        num_edges=arch.graph.edge_count,
        diameter=diameter(arch.graph),
        content_hash=arch.content_hash(),
    )


@app.post("/architectures", response_model=HandleInfo)
def open_architecture(req: LoadRequest) -> HandleInfo:
    arch = _arch_from_request(req)
    return _handle_info(_store.add(arch), arch)


@app.get("/architectures/{handle}", response_model=HandleInfo)
def architecture_info(handle: str) -> HandleInfo:
    return _handle_info(handle, _store.get(handle))


@app.delete("/architectures/{handle}")
def close_architecture(handle: str) -> dict:
    _store.close(handle)
    return {"closed": handle}


@app.get("/architectures/{handle}/census", response_model=CensusResponse)
def architecture_census(handle: str, jobs: int = Query(default=1, ge=1)) -> CensusResponse:
    arch = _store.get(handle)
    result = census(arch.graph, arch.name, jobs=jobs)
    return CensusResponse(
        name=arch.name,
        num_qubits=arch.num_qubits,
        rows=[
            CensusRowModel(size=r.size, connected=r.connected, classes=r.classes)
            for r in result.rows
        ],
        connected=result.connected_total,
        non_isomorphic=result.class_total,
    )


@app.get("/architectures/{handle}/subarchitectures", response_model=EnumerateResponse)
def architecture_subarchitectures(
    handle: str,
    size: int,
    classes: bool = False,
    jobs: int = Query(default=1, ge=1),
) -> EnumerateResponse:
    arch = _store.get(handle)
    if classes:
        result = iso_classes(arch.graph, size, arch.name, jobs=jobs)
        return EnumerateResponse(
            size=size,
            classes=[_subarch_model(rep) for rep in result.representatives],
            multiplicities=list(result.multiplicities),
        )
    subsets = enumerate_connected(arch.graph, size)
    return EnumerateResponse(size=size, subsets=[list(vs) for vs in subsets])


@app.get("/architectures/{handle}/candidates", response_model=CandidatesResponse)
def architecture_candidates(
    handle: str,
    size: int,
    jobs: int = Query(default=1, ge=1),
    path_cap: int = DEFAULT_PATH_COMBINATION_CAP,
) -> CandidatesResponse:
    arch = _store.get(handle)
    cand = _store.candidate_set(handle, size, path_cap, jobs)
    return CandidatesResponse(
        size=size,
        members=[_subarch_model(m) for m in cand.members],
        provenance=[[key.hex() for key in keys] for keys in cand.provenance],
        added_qubit_bound=added_qubit_bound(size, diameter(arch.graph)),
    )


@app.get("/architectures/{handle}/optimal", response_model=OptimalResponse)
def architecture_optimal(
    handle: str,
    size: int,
    jobs: int = Query(default=1, ge=1),
    path_cap: int = DEFAULT_PATH_COMBINATION_CAP,
) -> OptimalResponse:
    arch = _store.get(handle)
    cand = _store.candidate_set(handle, size, path_cap, jobs)
    members = optimal_candidates(arch.graph, size, arch.name, cand=cand, jobs=jobs)
    return OptimalResponse(
        size=size,
        members=[_subarch_model(m) for m in members],
        member_qubits=members[0].size,
    )


@app.post("/architectures/{handle}/cover", response_model=CoverResponse)
def architecture_cover(handle: str, req: CoverRequest) -> CoverResponse:
    arch = _store.get(handle)
    cand = _store.candidate_set(handle, req.size, req.path_cap, req.jobs)
    result = cover(
        arch.graph,
        req.size,
        req.max_elements,
        arch.name,
        cand=cand,
        time_limit=req.time_limit,
        jobs=req.jobs,
    )
    return CoverResponse(
        size=req.size,
        max_elements=req.max_elements,
        members=[_subarch_model(m) for m in result.members],
        member_sizes=result.member_sizes(),
        covered_by=[list(row) for row in result.covered_by],
    )


@app.post("/architectures/{handle}/oracle", response_model=OracleResponse)
def architecture_oracle(handle: str, req: OracleRequest) -> OracleResponse:
    arch = _store.get(handle)
    circuit = parse_circuit(req.circuit)
    result = minimum_swaps(
        circuit,
        arch.graph,
        budget=req.budget,
        use_distance_bound=req.use_distance_bound,
        max_vertices=req.max_vertices,
        max_gates=req.max_gates,
    )
    if result.exact:
        replay(circuit, arch.graph, result)
    return OracleResponse(
        swap_count=result.swap_count,
        exact=result.exact,
        initial_assignment=list(result.initial_assignment),
        schedule=[list(a) for a in result.schedule],
    )


@app.post("/architectures/{handle}/witness", response_model=WitnessResponse)
def architecture_witness(handle: str, req: WitnessRequest) -> WitnessResponse:
    arch = _store.get(handle)
    sub1 = make_subarch(arch.graph, req.sub1, arch.name)
    sub2 = make_subarch(arch.graph, req.sub2, arch.name)
    report = host_advantage_witness(arch.graph, sub1, sub2, reps=req.reps)
    return WitnessResponse(
        repetitions=report.repetitions,
        circuit=report.circuit.text(),
        host_swaps=report.host_swaps,
        sub1_swaps=report.sub1_swaps,
        sub2_swaps=report.sub2_swaps,
        strict=report.strict,
    )


@app.post("/architectures/{handle}/compare", response_model=CompareResponse)
def architecture_compare(handle: str, req: CompareRequest) -> CompareResponse:
    arch = _store.get(handle)
    other = _arch_from_request(req.other)
    report = compare_coverage(
        arch.graph,
        other.graph,
        req.size,
        req.gate_budget,
        mode=req.mode,
        samples=req.samples,
        seed=req.seed,
    )

    def witness_dict(witness):
        if witness is None:
            return None
        gates, s1, s2 = witness
        return {"gates": [list(p) for p in gates], "first_swaps": s1, "second_swaps": s2}

    return CompareResponse(
        mode=report.mode,
        circuits_checked=report.circuits_checked,
        verdict=report.verdict,
        proved=report.proved,
        second_never_worse=report.second_never_worse,
        first_never_worse=report.first_never_worse,
        witness_second_better=witness_dict(report.witness_second_better),
        witness_first_better=witness_dict(report.witness_first_better),
    )


@app.post("/architectures/{handle}/library")
def architecture_library(handle: str, req: PrecomputeRequest) -> dict:
    arch = _store.get(handle)
    lib = build_library(
        arch,
        req.sizes,
        cover_limits=req.cover_limits,
        cap=req.path_cap,
        jobs=req.jobs,
        time_limit=req.time_limit,
    )
    return library_document(lib)


@app.get("/architectures/{handle}/dot", response_class=PlainTextResponse)
def architecture_dot(handle: str, highlight: str = "") -> str:
    arch = _store.get(handle)
    marked: list[int] = []
    if highlight:
        try:
            marked = [int(x) for x in highlight.split(",")]
        except ValueError:
            raise UsageError(f"highlight must be a comma-separated vertex list, got {highlight!r}")
    return export_dot(arch.graph, marked, arch.name)


def main(argv: Optional[list[str]] = None) -> None:
    """Run the service under uvicorn (also reachable via `subarch serve`)."""
    import argparse

    import uvicorn

    parser = argparse.ArgumentParser(prog="subarch-service")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    args = parser.parse_args(argv)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")


if __name__ == "__main__":
    main()
