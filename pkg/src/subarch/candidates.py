"""Distance-order comparison of subarchitectures and candidate-set construction.

A smaller architecture sits below a larger one when it embeds into it; the
order is strict when every embedding shortens at least one vertex pair. The
candidate machinery extends each enumerated subarchitecture until the parent
device's true pairwise distances are realized, then keeps the minimal such
extensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .enumeration import SubarchRef, enumerate_connected, iso_classes
from .errors import CombinationLimitError, ValidationError
from .graphs import (
    Embedding,
    Graph,
    _distances,
    canonical_key,
    could_embed,
    find_distance_preserving_embedding,
    find_monomorphism,
    induced_subgraph,
    invariant_signature,
    is_connected,
)

DEFAULT_PATH_COMBINATION_CAP = 10_000


@dataclass(frozen=True)
class OrderWitness:
    """Evidence for one graph sitting below another in the distance order.

    strict_pairs lists pattern pairs whose connection is strictly shorter in
    the host under this embedding; the search prefers distance-preserving
    embeddings, so an empty list means no embedding shortens anything.
    """

    embedding: Embedding
    strict_pairs: tuple[tuple[int, int], ...]

    @property
    def strict(self) -> bool:
        return bool(self.strict_pairs)


def precedes(small: Graph, large: Graph) -> Optional[OrderWitness]:
    """Compare two graphs in the embedding-plus-distances order.

    Returns None when no monomorphism exists. Otherwise the returned witness
    carries a distance-preserving embedding whenever one exists (strict_pairs
    empty); if every embedding shortens some pair, the relation is strict and
    one such embedding is returned with its shortened pairs.
    """
    preserving = find_distance_preserving_embedding(small, large)
    if preserving is not None:
        return OrderWitness(preserving, ())
    emb = find_monomorphism(small, large)
    if emb is None:
        return None
    sdist = _distances(small).rows
    ldist = _distances(large).rows
    strict = tuple(
        (v, w)
        for v in range(small.vertex_count)
        for w in range(v + 1, small.vertex_count)
        if sdist[v][w] > ldist[emb[v]][emb[w]]
    )
    return OrderWitness(emb, strict)


def strictly_precedes(small: Graph, large: Graph) -> bool:
    witness = precedes(small, large)
    return witness is not None and witness.strict


def strictly_extends(g: Graph, s: Sequence[int], t: Sequence[int]) -> bool:
    """True when growing subset s to subset t shortens some pair within s."""
    s_sorted, t_sorted = sorted(s), sorted(t)
    if len(set(s_sorted)) != len(s_sorted) or len(set(t_sorted)) != len(t_sorted):
        raise ValidationError("vertex subsets must not contain duplicates")
    if not set(s_sorted) <= set(t_sorted):
        raise ValidationError("first subset must be contained in the second")
    sub_s = induced_subgraph(g, s_sorted)
    sub_t = induced_subgraph(g, t_sorted)
    if not is_connected(sub_s) or not is_connected(sub_t):
        raise ValidationError("both subsets must induce connected subgraphs")
    pos_t = {v: i for i, v in enumerate(t_sorted)}
    dist_s = _distances(sub_s).rows
    dist_t = _distances(sub_t).rows
    for i, v in enumerate(s_sorted):
        for j in range(i + 1, len(s_sorted)):
            w = s_sorted[j]
            if dist_t[pos_t[v]][pos_t[w]] < dist_s[i][j]:
                return True
    return False


def _all_shortest_paths(g: Graph, v: int, w: int) -> list[frozenset[int]]:
    """Vertex sets of every shortest v-w path in g."""
    dist_to_w = _distances(g).rows[w]
    paths: list[frozenset[int]] = []

    def walk(current: int, trail: list[int]) -> None:
        if current == w:
            paths.append(frozenset(trail))
            return
        for u in sorted(g.adjacency[current]):
            if dist_to_w[u] == dist_to_w[current] - 1:
                trail.append(u)
                walk(u, trail)
                trail.pop()

    walk(v, [v])
    return paths


def minimal_saturated_supersets(
    g: Graph,
    seed: Sequence[int],
    cap: int = DEFAULT_PATH_COMBINATION_CAP,
) -> list[tuple[int, ...]]:
    """Smallest connected supersets of seed realizing the device's distances.

    Each returned vertex set T satisfies: for all v, w in the seed, the hop
    distance inside induced(T) equals the distance inside g. Sets are built by
    choosing one shortest connecting path per shortened pair, taking unions
    over all choices, and keeping the inclusion-minimal results. If nothing
    can be shortened the seed itself is the single result.
    """
    seed_sorted = tuple(sorted(seed))
    sub = induced_subgraph(g, seed_sorted)
    if not is_connected(sub):
        raise ValidationError("seed must induce a connected subgraph")
    gdist = _distances(g).rows
    sdist = _distances(sub).rows
    improvable: list[tuple[int, int]] = []
    for i, v in enumerate(seed_sorted):
        for j in range(i + 1, len(seed_sorted)):
            w = seed_sorted[j]
            if sdist[i][j] > gdist[v][w]:
                improvable.append((v, w))
    if not improvable:
        return [seed_sorted]
    # One shortened pair at a time, keeping only inclusion-minimal partial
    # unions. A union already realizes a pair's device distance exactly when
    # it contains some shortest path for it, and then passes unchanged;
    # dropping non-minimal partial unions is safe because any completion of a
    # superset is dominated by the same completion of its subset.
    frontier: list[frozenset[int]] = [frozenset(seed_sorted)]
    explored = 0
    for v, w in improvable:
        paths = _all_shortest_paths(g, v, w)
        grown: set[frozenset[int]] = set()
        for u in frontier:
            if any(path <= u for path in paths):
                grown.add(u)
                continue
            explored += len(paths)
            if explored > cap:
                raise CombinationLimitError(
                    f"saturating extensions of {seed_sorted} explored more than "
                    f"{cap} path combinations",
                    explored,
                    cap,
                )
            for path in paths:
                grown.add(u | path)
        frontier = [t for t in grown if not any(other < t for other in grown)]
    minimal = [
        t for t in frontier if not any(other < t for other in frontier)
    ]
    return sorted(tuple(sorted(t)) for t in minimal)


def desirable_set(
    g: Graph,
    seed: Sequence[int],
    parent: str = "",
    cap: int = DEFAULT_PATH_COMBINATION_CAP,
) -> list[SubarchRef]:
    """Distance-saturating minimal extensions of one seed, one per isomorphism class."""
    by_key: dict[bytes, tuple[int, ...]] = {}
    for t in minimal_saturated_supersets(g, seed, cap):
        key = canonical_key(induced_subgraph(g, t))
        if key not in by_key or t < by_key[key]:
            by_key[key] = t
    return [
        SubarchRef(parent, vs, induced_subgraph(g, vs), key)
        for key, vs in sorted(by_key.items(), key=lambda kv: (len(kv[1]), kv[0]))
    ]


@dataclass(frozen=True)
class CandidateSet:
    """Mapping candidates for circuits of a given size, sorted by (size, class key)."""

    size: int
    members: tuple[SubarchRef, ...]
    provenance: tuple[tuple[bytes, ...], ...]  # per member: seed class keys


def candidates(
    g: Graph,
    n: int,
    parent: str = "",
    cap: int = DEFAULT_PATH_COMBINATION_CAP,
    jobs: int = 1,
) -> CandidateSet:
    """Mapping candidates: saturating extensions over the size-n subarchitectures.

    Every concrete placement is examined (placements of one class can
    saturate differently). Placements that can be shortened contribute their
    minimal saturating extensions; a class contributes itself only when none
    of its placements can be shortened, since an extension already contains
    the seed class and maps every circuit at least as well.
    """
    classes = iso_classes(g, n, parent, jobs=jobs)
    rep_by_sig: dict[tuple, list[SubarchRef]] = {}
    for rep in classes.representatives:
        rep_by_sig.setdefault(invariant_signature(rep.graph), []).append(rep)

    def class_of(sub: Graph) -> bytes:
        for rep in rep_by_sig.get(invariant_signature(sub), []):
            if find_monomorphism(sub, rep.graph) is not None:
                return rep.class_key
        raise AssertionError("subset does not match any enumerated class")

    member_sets: dict[bytes, tuple[int, ...]] = {}
    origins: dict[bytes, set[bytes]] = {}
    improvable_classes: set[bytes] = set()
    self_placement: dict[bytes, tuple[int, ...]] = {}
    key_cache: dict[tuple[int, ...], bytes] = {}
    for vs in enumerate_connected(g, n):
        seed_key = class_of(induced_subgraph(g, vs))
        extensions = minimal_saturated_supersets(g, vs, cap)
        if extensions == [vs]:
            if seed_key not in self_placement:
                self_placement[seed_key] = vs
            continue
        improvable_classes.add(seed_key)
        for t in extensions:
            key = key_cache.get(t)
            if key is None:
                key = canonical_key(induced_subgraph(g, t))
                key_cache[t] = key
            if key not in member_sets or t < member_sets[key]:
                member_sets[key] = t
            origins.setdefault(key, set()).add(seed_key)
    for seed_key, vs in self_placement.items():
        if seed_key in improvable_classes:
            continue
        if seed_key not in member_sets or vs < member_sets[seed_key]:
            member_sets[seed_key] = vs
        origins.setdefault(seed_key, set()).add(seed_key)
    ordered = sorted(member_sets.items(), key=lambda kv: (len(kv[1]), kv[0]))
    members = tuple(
        SubarchRef(parent, vs, induced_subgraph(g, vs), key) for key, vs in ordered
    )
    provenance = tuple(tuple(sorted(origins[key])) for key, _ in ordered)
    return CandidateSet(n, members, provenance)


def contains_all(host: Graph, patterns: Sequence[Graph]) -> bool:
    """Monomorphism containment of every pattern, cheap invariants first."""
    for p in patterns:
        if not could_embed(p, host):
            return False
        if find_monomorphism(p, host) is None:
            return False
    return True


def optimal_candidates(
    g: Graph,
    n: int,
    parent: str = "",
    cand: Optional[CandidateSet] = None,
    cap: int = DEFAULT_PATH_COMBINATION_CAP,
    jobs: int = 1,
) -> list[SubarchRef]:
    """Smallest connected induced subarchitectures containing every candidate.

    Searched by increasing vertex count starting at the largest candidate
    size; the full architecture always qualifies, so the result is never
    empty.
    """
    if cand is None:
        cand = candidates(g, n, parent, cap=cap, jobs=jobs)
    patterns = [m.graph for m in cand.members]
    start = max(m.size for m in cand.members)
    for k in range(start, g.vertex_count + 1):
        classes = iso_classes(g, k, parent, jobs=jobs)
        hits = [
            rep
            for rep in classes.representatives
            if contains_all(rep.graph, patterns)
        ]
        if hits:
            return hits
    raise AssertionError("the full architecture must contain every candidate")


def added_qubit_bound(n: int, d: int) -> int:
    """Upper bound on qubits any saturating extension can add: n(n-1)/2 * (d-1)."""
    if n < 1 or d < 1:
        raise ValidationError("qubit count and diameter must be at least 1")
    return n * (n - 1) // 2 * (d - 1)
