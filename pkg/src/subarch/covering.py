"""Greedy bounded-cardinality coverings of the candidate set.

The covering starts from the candidates, drops members already contained in
another member (a zero-cost reduction that never grows any element), then
walks candidate supergraphs in ascending size, replacing every group of
covered members by the popped supergraph until at most k members remain. The
walk is generated lazily size by size; materializing all supergraphs up front
is hopeless on larger devices.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .candidates import CandidateSet, candidates
from .enumeration import SubarchRef, iso_classes
from .errors import TimeLimitError, ValidationError
from .graphs import Graph, could_embed, find_monomorphism


def _embeds(pattern: Graph, host: Graph) -> bool:
    return could_embed(pattern, host) and find_monomorphism(pattern, host) is not None


@dataclass(frozen=True)
class Covering:
    """Bounded set of subarchitectures jointly containing every candidate."""

    size: int
    max_elements: int
    members: tuple[SubarchRef, ...]
    candidates: tuple[SubarchRef, ...]
    covered_by: tuple[tuple[int, ...], ...]  # per candidate: indices into members

    def member_sizes(self) -> list[int]:
        return sorted(m.size for m in self.members)


def covering_queue(
    g: Graph,
    members: Sequence[SubarchRef],
    parent: str = "",
    jobs: int = 1,
) -> Iterator[SubarchRef]:
    """Connected induced supergraph classes of at least one member.

    Yields one representative per isomorphism class, ascending by vertex
    count with ties broken by class key; the full architecture is always the
    final element.
    """
    if not members:
        raise ValidationError("covering queue needs at least one candidate")
    start = min(m.size for m in members)
    patterns = [m.graph for m in members]
    for k in range(start, g.vertex_count + 1):
        for rep in iso_classes(g, k, parent, jobs=jobs).representatives:
            if any(_embeds(p, rep.graph) for p in patterns):
                yield rep


def _prune_dominated(members: list[SubarchRef]) -> list[SubarchRef]:
    """Drop members contained in another member; containment keeps them covered."""
    kept: list[SubarchRef] = []
    for m in members:
        if any(
            other.class_key != m.class_key and _embeds(m.graph, other.graph)
            for other in members
        ):
            continue
        kept.append(m)
    return kept


def cover(
    g: Graph,
    n: int,
    k: int,
    parent: str = "",
    cand: Optional[CandidateSet] = None,
    time_limit: Optional[float] = None,
    jobs: int = 1,
) -> Covering:
    """Greedy covering with at most k members.

    Pops supergraph classes in ascending size; whenever a popped class
    contains more than one current member, it replaces all of them.
    Terminates because the full architecture ends the queue and swallows
    everything at once.
    """
    if k < 1:
        raise ValidationError(f"covering size bound must be at least 1, got {k}")
    if cand is None:
        cand = candidates(g, n, parent, jobs=jobs)
    members = _prune_dominated(list(cand.members))
    members.sort(key=lambda m: (m.size, m.class_key))
    deadline = time.monotonic() + time_limit if time_limit is not None else None
    queue = covering_queue(g, cand.members, parent, jobs=jobs)
    while len(members) > k:
        if deadline is not None and time.monotonic() > deadline:
            raise TimeLimitError(
                f"covering computation exceeded {time_limit:.1f}s "
                f"with {len(members)} members left (target {k})",
                partial=tuple(members),
            )
        popped = next(queue)
        covered = [m for m in members if _embeds(m.graph, popped.graph)]
        if len(covered) > 1:
            # members form an antichain under containment: the initial prune
            # establishes it and replacing everything the popped element
            # contains cannot break it, so no re-prune is needed
            covered_keys = {m.class_key for m in covered}
            members = [m for m in members if m.class_key not in covered_keys]
            members.append(popped)
            members.sort(key=lambda m: (m.size, m.class_key))
    covered_by = tuple(
        tuple(i for i, m in enumerate(members) if _embeds(c.graph, m.graph))
        for c in cand.members
    )
    if any(not row for row in covered_by):
        raise AssertionError("covering postcondition violated: uncovered candidate")
    return Covering(n, k, tuple(members), cand.members, covered_by)
