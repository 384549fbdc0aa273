"""Device coupling-graph ingestion and the bundled architecture files."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import ValidationError
from .graphs import DistanceMatrix, Graph, all_pairs_shortest_paths, is_connected


@dataclass(frozen=True)
class Architecture:
    """Named coupling graph with its all-pairs distances."""

    name: str
    graph: Graph
    source: str
    distances: DistanceMatrix

    @property
    def num_qubits(self) -> int:
        return self.graph.vertex_count

    def definition(self) -> dict:
        d: dict = {
            "name": self.name,
            "num_qubits": self.num_qubits,
            "edges": [list(e) for e in self.graph.sorted_edges],
        }
        if self.graph.labels is not None:
            d["labels"] = list(self.graph.labels)
        if self.source:
            d["source"] = self.source
        return d

    def content_hash(self) -> str:
        return definition_hash(self.definition())


def definition_hash(definition: dict) -> str:
    """Stable digest of the structural content (name, size, edge set)."""
    canonical = json.dumps(
        {
            "name": definition["name"],
            "num_qubits": definition["num_qubits"],
            "edges": sorted([min(e), max(e)] for e in definition["edges"]),
        },
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def architecture_from_definition(definition: dict, origin: str = "<memory>") -> Architecture:
    """Validate a parsed architecture object and build the in-memory value.

    Duplicate edges are a hard error rather than a deduplicated warning: a
    repeated pair in a coupling list almost always marks a transcription slip.
    """
    if not isinstance(definition, dict):
        raise ValidationError(f"{origin}: architecture must be a JSON object")
    name = definition.get("name")
    if not isinstance(name, str) or not name:
        raise ValidationError(f"{origin}: missing or empty \"name\"")
    num_qubits = definition.get("num_qubits")
    if not isinstance(num_qubits, int) or num_qubits < 1:
        raise ValidationError(f"{origin}: \"num_qubits\" must be a positive integer")
    raw_edges = definition.get("edges")
    if not isinstance(raw_edges, list):
        raise ValidationError(f"{origin}: \"edges\" must be a list of pairs")
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    for idx, e in enumerate(raw_edges):
        if (
            not isinstance(e, (list, tuple))
            or len(e) != 2
            or not all(isinstance(x, int) for x in e)
        ):
            raise ValidationError(f"{origin}: edge #{idx} is not a pair of integers")
        a, b = e
        if a == b:
            raise ValidationError(f"{origin}: self-loop ({a}, {b}) at edge #{idx}")
        if not (0 <= a < num_qubits and 0 <= b < num_qubits):
            raise ValidationError(
                f"{origin}: edge ({a}, {b}) endpoint outside 0..{num_qubits - 1}"
            )
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ValidationError(f"{origin}: duplicate edge ({a}, {b})")
        seen.add(key)
        edges.append(key)
    labels = definition.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != num_qubits:
            raise ValidationError(f"{origin}: \"labels\" must list one label per qubit")
    graph = Graph.from_edges(num_qubits, edges, labels)
    if not is_connected(graph):
        raise ValidationError(f"{origin}: coupling graph is not connected")
    source = definition.get("source", "")
    if not isinstance(source, str):
        raise ValidationError(f"{origin}: \"source\" must be a string")
    return Architecture(name, graph, source, all_pairs_shortest_paths(graph))


def load_architecture(path: str | Path) -> Architecture:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"{path}: cannot read architecture file: {exc}") from exc
    try:
        definition = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}: JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return architecture_from_definition(definition, origin=str(path))


def bundled_device_names() -> list[str]:
    files = resources.files("subarch").joinpath("data")
    return sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".json"))


def load_bundled(name: str) -> Architecture:
    files = resources.files("subarch").joinpath("data")
    candidate = files.joinpath(f"{name}.json")
    if not candidate.is_file():
        raise ValidationError(
            f"unknown bundled device {name!r}; available: {', '.join(bundled_device_names())}"
        )
    definition = json.loads(candidate.read_text(encoding="utf-8"))
    return architecture_from_definition(definition, origin=f"bundled:{name}")


def resolve_architecture(spec: str | Path) -> Architecture:
    """Treat the argument as a file path first, then as a bundled device name."""
    path = Path(spec)
    if path.is_file():
        return load_architecture(path)
    if isinstance(spec, str) and spec in bundled_device_names():
        return load_bundled(spec)
    raise ValidationError(f"no architecture file or bundled device named {spec!r}")


def resolve_definition(spec: str | Path) -> dict:
    """Parsed architecture definition for a path or bundled device name."""
    path = Path(spec)
    if path.is_file():
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValidationError(
                f"{path}: JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
    if isinstance(spec, str) and spec in bundled_device_names():
        files = resources.files("subarch").joinpath("data")
        return json.loads(files.joinpath(f"{spec}.json").read_text(encoding="utf-8"))
    raise ValidationError(f"no architecture file or bundled device named {spec!r}")
