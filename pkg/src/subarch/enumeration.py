"""Connected induced subarchitecture enumeration and isomorphism-class dedup.

Subsets are produced by connected extension (each subset grown only through
neighbors, with an exclusive-neighbor rule so every subset appears exactly
once), never by scanning the full power set. Class dedup buckets subsets by a
cheap invariant first and only canonicalizes one representative per class,
which is what keeps device-scale runs tractable.
"""

from __future__ import annotations

import multiprocessing
from concurrent.futures import Executor, ProcessPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass
from typing import ContextManager, Optional

from .errors import ValidationError
from .graphs import (
    Graph,
    canonical_key,
    find_monomorphism,
    induced_subgraph,
    invariant_signature,
)


def worker_pool(jobs: int) -> ProcessPoolExecutor:
    """Executor for dedup work; forkserver keeps workers clean of the
    caller's threads (the service runs requests off the main thread)."""
    return ProcessPoolExecutor(
        max_workers=jobs, mp_context=multiprocessing.get_context("forkserver")
    )


@dataclass(frozen=True)
class SubarchRef:
    """A concrete connected induced subgraph of a parent architecture."""

    parent: str
    vertices: tuple[int, ...]
    graph: Graph
    class_key: bytes

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class IsoClassSet:
    """Isomorphism classes of one subset size, keyed and sorted by class_key."""

    size: int
    representatives: tuple[SubarchRef, ...]
    multiplicities: tuple[int, ...]

    @property
    def class_count(self) -> int:
        return len(self.representatives)

    @property
    def subset_count(self) -> int:
        return sum(self.multiplicities)


def enumerate_connected(g: Graph, n: int) -> list[tuple[int, ...]]:
    """All size-n vertex subsets inducing a connected subgraph, in lexicographic order."""
    if not (1 <= n <= g.vertex_count):
        raise ValidationError(
            f"subset size {n} outside 1..{g.vertex_count}"
        )
    adj = g.adjacency
    out: list[tuple[int, ...]] = []

    def extend(sub: list[int], ext: list[int], root: int, reached: set[int]) -> None:
        if len(sub) == n:
            out.append(tuple(sorted(sub)))
            return
        ext = list(ext)
        while ext:
            w = ext.pop()
            new_reached = reached | {w} | adj[w]
            new_ext = ext + [u for u in adj[w] if u > root and u not in reached]
            sub.append(w)
            extend(sub, new_ext, root, new_reached)
            sub.pop()

    for v in range(g.vertex_count):
        extend([v], [u for u in adj[v] if u > v], v, {v} | adj[v])
    out.sort()
    return out


def _dedup_subsets(
    g: Graph, subsets: list[tuple[int, ...]]
) -> list[tuple[bytes, tuple[int, ...], int]]:
    """Group subsets (given in lexicographic order) into isomorphism classes.

    Returns (class_key, representative subset, multiplicity) triples; the
    representative is the lexicographically least subset of its class.
    """
    buckets: dict[tuple, list[list]] = {}
    for vs in subsets:
        sub = induced_subgraph(g, vs)
        sig = invariant_signature(sub)
        bucket = buckets.setdefault(sig, [])
        for entry in bucket:
            # Same invariant implies equal vertex and edge counts, so a
            # monomorphism between the two is already an isomorphism.
            if find_monomorphism(sub, entry[1]) is not None:
                entry[2] += 1
                break
        else:
            bucket.append([vs, sub, 1])
    triples = []
    for bucket in buckets.values():
        for vs, sub, count in bucket:
            triples.append((canonical_key(sub), vs, count))
    return triples


def _worker_dedup(payload) -> list[tuple[bytes, tuple[int, ...], int]]:
    vertex_count, edges, subsets = payload
    g = Graph.from_edges(vertex_count, edges)
    return _dedup_subsets(g, subsets)


def _dedup_parallel(
    g: Graph, subsets: list[tuple[int, ...]], jobs: int, pool: Executor
) -> list[tuple[bytes, tuple[int, ...], int]]:
    """Partition subsets by invariant bucket across workers; merge deterministically.

    Whole buckets travel together so every isomorphism class is resolved by a
    single worker, which makes the merge a plain concatenation.
    """
    buckets: dict[tuple, list[tuple[int, ...]]] = {}
    for vs in subsets:
        sig = invariant_signature(induced_subgraph(g, vs))
        buckets.setdefault(sig, []).append(vs)
    groups: list[list[tuple[int, ...]]] = [[] for _ in range(jobs)]
    sizes = [0] * jobs
    for bucket in buckets.values():
        target = sizes.index(min(sizes))
        groups[target].extend(bucket)
        sizes[target] += len(bucket)
    payloads = [
        (g.vertex_count, tuple(g.sorted_edges), group)
        for group in groups
        if group
    ]
    triples: list[tuple[bytes, tuple[int, ...], int]] = []
    for part in pool.map(_worker_dedup, payloads):
        triples.extend(part)
    return triples


def iso_classes(
    g: Graph,
    n: int,
    parent: str = "",
    jobs: int = 1,
    pool: Optional[Executor] = None,
) -> IsoClassSet:
    """Isomorphism classes of the connected size-n induced subgraphs of g."""
    subsets = enumerate_connected(g, n)
    if jobs > 1 and len(subsets) > 64:
        ctx: ContextManager = nullcontext(pool) if pool is not None else worker_pool(jobs)
        with ctx as active:
            triples = _dedup_parallel(g, subsets, jobs, active)
    else:
        triples = _dedup_subsets(g, subsets)
    triples.sort(key=lambda t: (t[0], t[1]))
    reps = tuple(
        SubarchRef(parent, vs, induced_subgraph(g, vs), key)
        for key, vs, _ in triples
    )
    return IsoClassSet(n, reps, tuple(count for _, _, count in triples))


@dataclass(frozen=True)
class CensusRow:
    size: int
    connected: int
    classes: int


@dataclass(frozen=True)
class Census:
    name: str
    rows: tuple[CensusRow, ...]

    @property
    def connected_total(self) -> int:
        return sum(r.connected for r in self.rows)

    @property
    def class_total(self) -> int:
        return sum(r.classes for r in self.rows)


def census(g: Graph, name: str = "", jobs: int = 1) -> Census:
    """Connected-subgraph and class counts for every size 1..|g|.

    Counting every size including the full architecture reproduces the
    published totals for the bundled devices; see the acceptance suite.
    """
    ctx: ContextManager = worker_pool(jobs) if jobs > 1 else nullcontext(None)
    rows = []
    with ctx as pool:
        for n in range(1, g.vertex_count + 1):
            classes = iso_classes(g, n, jobs=jobs, pool=pool)
            rows.append(CensusRow(n, classes.subset_count, classes.class_count))
    return Census(name, tuple(rows))
