"""Persisted per-architecture candidate libraries.

Libraries are JSON documents carrying vertex subsets only; placements stay
recoverable against the architecture they were computed from, which is pinned
by a content hash. Loading refuses hash or version mismatches outright.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__
from .architecture import Architecture
from .candidates import DEFAULT_PATH_COMBINATION_CAP, candidates, optimal_candidates
from .covering import cover
from .errors import HashMismatchError, LibraryFormatError

FORMAT_NAME = "subarch-library"
FORMAT_VERSION = 1


@dataclass(frozen=True)
class LibraryEntry:
    candidates: tuple[tuple[int, ...], ...]
    optimal: tuple[tuple[int, ...], ...]
    coverings: tuple[tuple[int, tuple[tuple[int, ...], ...]], ...] = ()


@dataclass(frozen=True)
class CandidateLibrary:
    architecture_name: str
    content_hash: str
    tool_version: str
    created: str
    entries: tuple[tuple[int, LibraryEntry], ...] = field(default_factory=tuple)

    def entry_for(self, size: int) -> Optional[LibraryEntry]:
        for n, entry in self.entries:
            if n == size:
                return entry
        return None


def _timestamp() -> str:
    # SOURCE_DATE_EPOCH makes precomputed libraries byte-reproducible.
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = int(epoch) if epoch else int(time.time())
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(t))


def build_library(
    arch: Architecture,
    sizes: list[int],
    cover_limits: Optional[list[int]] = None,
    cap: int = DEFAULT_PATH_COMBINATION_CAP,
    jobs: int = 1,
    time_limit: Optional[float] = None,
) -> CandidateLibrary:
    """Compute candidates, optimal candidates, and requested coverings per size."""
    cover_limits = cover_limits or []
    entries = []
    for n in sorted(set(sizes)):
        cand = candidates(arch.graph, n, arch.name, cap=cap, jobs=jobs)
        opt = optimal_candidates(arch.graph, n, arch.name, cand=cand, jobs=jobs)
        coverings = []
        for k in sorted(set(cover_limits)):
            result = cover(
                arch.graph, n, k, arch.name, cand=cand,
                time_limit=time_limit, jobs=jobs,
            )
            coverings.append((k, tuple(m.vertices for m in result.members)))
        entries.append(
            (
                n,
                LibraryEntry(
                    tuple(m.vertices for m in cand.members),
                    tuple(o.vertices for o in opt),
                    tuple(coverings),
                ),
            )
        )
    return CandidateLibrary(
        arch.name, arch.content_hash(), __version__, _timestamp(), tuple(entries)
    )


def library_document(lib: CandidateLibrary) -> dict:
    return {
        "format": FORMAT_NAME,
        "format_version": FORMAT_VERSION,
        "tool_version": lib.tool_version,
        "created": lib.created,
        "architecture": {
            "name": lib.architecture_name,
            "content_hash": lib.content_hash,
        },
        "entries": {
            str(n): {
                "candidates": [list(vs) for vs in entry.candidates],
                "optimal": [list(vs) for vs in entry.optimal],
                "coverings": {
                    str(k): [list(vs) for vs in members]
                    for k, members in entry.coverings
                },
            }
            for n, entry in lib.entries
        },
    }


def save_library(lib: CandidateLibrary, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(library_document(lib), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def library_from_document(doc: dict, arch: Architecture) -> CandidateLibrary:
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_NAME:
        raise LibraryFormatError("not a candidate-library document")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise LibraryFormatError(
            f"unsupported library format version {version!r} (expected {FORMAT_VERSION})"
        )
    arch_info = doc.get("architecture", {})
    recorded_hash = arch_info.get("content_hash", "")
    if recorded_hash != arch.content_hash():
        raise HashMismatchError(
            f"library was computed for {arch_info.get('name')!r} with hash "
            f"{recorded_hash[:12]}..., which does not match this architecture"
        )
    entries = []
    for key in sorted(doc.get("entries", {}), key=int):
        raw = doc["entries"][key]
        coverings = tuple(
            (int(k), tuple(tuple(vs) for vs in members))
            for k, members in sorted(raw.get("coverings", {}).items(), key=lambda kv: int(kv[0]))
        )
        entries.append(
            (
                int(key),
                LibraryEntry(
                    tuple(tuple(vs) for vs in raw["candidates"]),
                    tuple(tuple(vs) for vs in raw["optimal"]),
                    coverings,
                ),
            )
        )
    return CandidateLibrary(
        arch_info.get("name", ""),
        recorded_hash,
        doc.get("tool_version", ""),
        doc.get("created", ""),
        tuple(entries),
    )


def load_library(path: str | Path, arch: Architecture) -> CandidateLibrary:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise LibraryFormatError(f"{path}: JSON parse error at line {exc.lineno}: {exc.msg}")
    except OSError as exc:
        raise LibraryFormatError(f"{path}: cannot read library: {exc}")
    return library_from_document(doc, arch)
