"""Undirected graph values with distances, embeddings, and canonical keys.

Everything in this module is immutable and pure: graphs can be shared freely
across threads and processes, and every operation returns the same result for
the same inputs, which the rest of the package relies on for reproducible
output.
"""

from __future__ import annotations

import struct
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

from .errors import ValidationError

# Hop count reported for unreachable vertex pairs. Strictly larger than any
# finite distance; never used in arithmetic.
UNREACHABLE = 2**31 - 1


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..vertex_count-1."""

    vertex_count: int
    edges: frozenset[tuple[int, int]]
    labels: Optional[tuple[str, ...]] = field(default=None, compare=False)

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Iterable[tuple[int, int]],
        labels: Optional[Iterable[str]] = None,
    ) -> "Graph":
        if vertex_count < 0:
            raise ValidationError(f"vertex count must be nonnegative, got {vertex_count}")
        normalized = set()
        for a, b in edges:
            if a == b:
                raise ValidationError(f"self-loop on vertex {a}")
            if not (0 <= a < vertex_count and 0 <= b < vertex_count):
                raise ValidationError(f"edge ({a}, {b}) has an endpoint outside 0..{vertex_count - 1}")
            normalized.add((min(a, b), max(a, b)))
        label_tuple = None
        if labels is not None:
            label_tuple = tuple(str(x) for x in labels)
            if len(label_tuple) != vertex_count:
                raise ValidationError(
                    f"expected {vertex_count} labels, got {len(label_tuple)}"
                )
        return cls(vertex_count, frozenset(normalized), label_tuple)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        neigh: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for a, b in self.edges:
            neigh[a].add(b)
            neigh[b].add(a)
        return tuple(frozenset(s) for s in neigh)

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(len(s) for s in self.adjacency))

    def label_of(self, v: int) -> str:
        if self.labels is not None:
            return self.labels[v]
        return str(v)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.vertex_count}, m={len(self.edges)})"


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def ring_graph(n: int) -> Graph:
    if n < 3:
        raise ValidationError("a ring needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """Hub vertex 0 connected to vertices 1..n-1."""
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


@dataclass(frozen=True)
class DistanceMatrix:
    """Hop-count distances; UNREACHABLE marks disconnected pairs."""

    size: int
    rows: tuple[tuple[int, ...], ...]

    def distance(self, v: int, w: int) -> int:
        return self.rows[v][w]

    def finite_max(self) -> int:
        best = 0
        for row in self.rows:
            for d in row:
                if d != UNREACHABLE and d > best:
                    best = d
        return best

    def has_unreachable(self) -> bool:
        return any(UNREACHABLE in row for row in self.rows)


def all_pairs_shortest_paths(g: Graph) -> DistanceMatrix:
    """BFS hop distances from every vertex."""
    n = g.vertex_count
    adj = g.adjacency
    rows = []
    for start in range(n):
        dist = [UNREACHABLE] * n
        dist[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if dist[u] == UNREACHABLE:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        rows.append(tuple(dist))
    return DistanceMatrix(n, tuple(rows))


def _distances(g: Graph) -> DistanceMatrix:
    cached = g.__dict__.get("_distance_matrix")
    if cached is None:
        cached = all_pairs_shortest_paths(g)
        g.__dict__["_distance_matrix"] = cached
    return cached


def is_connected(g: Graph) -> bool:
    """True when one BFS reaches every vertex; the empty graph counts as not connected."""
    n = g.vertex_count
    if n == 0:
        return False
    if n == 1:
        return True
    seen = {0}
    queue = deque([0])
    adj = g.adjacency
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == n


def diameter(g: Graph) -> int:
    if not is_connected(g):
        raise ValidationError("diameter is only defined for connected graphs")
    return _distances(g).finite_max()


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on the given vertices; their order fixes the new numbering."""
    vlist = list(vertices)
    if len(set(vlist)) != len(vlist):
        raise ValidationError("vertex subset contains duplicates")
    for v in vlist:
        if not (0 <= v < g.vertex_count):
            raise ValidationError(f"vertex {v} outside 0..{g.vertex_count - 1}")
    index = {v: i for i, v in enumerate(vlist)}
    edges = [
        (index[a], index[b])
        for a, b in g.edges
        if a in index and b in index
    ]
    labels = tuple(g.label_of(v) for v in vlist) if g.labels is not None else None
    return Graph.from_edges(len(vlist), edges, labels)


@dataclass(frozen=True)
class Embedding:
    """Injective map from pattern vertices to host vertices (index = pattern vertex)."""

    mapping: tuple[int, ...]

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(self.mapping))

    def __getitem__(self, v: int) -> int:
        return self.mapping[v]


def _search_order(pattern: Graph) -> list[int]:
    """Vertex order that keeps the partial pattern connected where possible."""
    n = pattern.vertex_count
    adj = pattern.adjacency
    remaining = set(range(n))
    order: list[int] = []
    while remaining:
        placed = set(order)
        # most already-placed neighbors, then highest degree, then lowest index
        v = min(
            remaining,
            key=lambda x: (-len(adj[x] & placed), -len(adj[x]), x),
        )
        order.append(v)
        remaining.remove(v)
    return order


def _embed(
    pattern: Graph,
    host: Graph,
    preserve_distances: bool,
) -> Optional[Embedding]:
    np_, nh = pattern.vertex_count, host.vertex_count
    if np_ > nh or len(pattern.edges) > len(host.edges):
        return None
    if np_ == 0:
        return Embedding(())
    padj, hadj = pattern.adjacency, host.adjacency
    if preserve_distances:
        pdist = _distances(pattern).rows
        hdist = _distances(host).rows
    order = _search_order(pattern)
    hdeg = [len(s) for s in hadj]
    pdeg = [len(s) for s in padj]
    assigned: dict[int, int] = {}
    used = [False] * nh

    def place(idx: int) -> bool:
        if idx == np_:
            return True
        v = order[idx]
        mapped_neighbors = [assigned[u] for u in padj[v] if u in assigned]
        if mapped_neighbors:
            candidates = set(hadj[mapped_neighbors[0]])
            for m in mapped_neighbors[1:]:
                candidates &= hadj[m]
            candidate_list = sorted(candidates)
        else:
            candidate_list = range(nh)
        for u in candidate_list:
            if used[u] or hdeg[u] < pdeg[v]:
                continue
            if preserve_distances:
                ok = True
                for w, hw in assigned.items():
                    if hdist[u][hw] != pdist[v][w]:
                        ok = False
                        break
                if not ok:
                    continue
            assigned[v] = u
            used[u] = True
            if place(idx + 1):
                return True
            del assigned[v]
            used[u] = False
        return False

    if not place(0):
        return None
    return Embedding(tuple(assigned[v] for v in range(np_)))


def could_embed(pattern: Graph, host: Graph) -> bool:
    """Cheap necessary conditions for a monomorphism pattern -> host.

    Checks vertex and edge counts plus degree-sequence dominance (the i-th
    largest pattern degree can never exceed the i-th largest host degree).
    False proves no embedding exists; True says nothing.
    """
    if pattern.vertex_count > host.vertex_count:
        return False
    if len(pattern.edges) > len(host.edges):
        return False
    pdeg = sorted((len(s) for s in pattern.adjacency), reverse=True)
    hdeg = sorted((len(s) for s in host.adjacency), reverse=True)
    return all(p <= h for p, h in zip(pdeg, hdeg))


def find_monomorphism(pattern: Graph, host: Graph) -> Optional[Embedding]:
    """Injective edge-preserving map of pattern into host, if one exists.

    Extra host edges among image vertices are permitted. The backtracking
    order is fixed, so the returned embedding is deterministic.
    """
    if not could_embed(pattern, host):
        return None
    return _embed(pattern, host, preserve_distances=False)


def find_distance_preserving_embedding(pattern: Graph, host: Graph) -> Optional[Embedding]:
    """Monomorphism under which every pattern pair keeps its exact hop distance."""
    return _embed(pattern, host, preserve_distances=True)


def invariant_signature(g: Graph) -> tuple:
    """Cheap isomorphism invariant: counts, degree sequence, distance multiset.

    Unequal signatures prove non-isomorphism, so comparisons consult this
    before any canonical-form work.
    """
    dm = _distances(g)
    finite: list[int] = []
    unreachable_pairs = 0
    for v in range(g.vertex_count):
        row = dm.rows[v]
        for w in range(v + 1, g.vertex_count):
            if row[w] == UNREACHABLE:
                unreachable_pairs += 1
            else:
                finite.append(row[w])
    finite.sort()
    return (
        g.vertex_count,
        len(g.edges),
        g.degree_sequence,
        unreachable_pairs,
        tuple(finite),
    )


def _refine(adj: tuple[frozenset[int], ...], parts: list[list[int]]) -> list[list[int]]:
    """Split cells by neighbor counts per cell until the partition is equitable."""
    while True:
        cell_of: dict[int, int] = {}
        for idx, cell in enumerate(parts):
            for v in cell:
                cell_of[v] = idx
        new_parts: list[list[int]] = []
        changed = False
        for cell in parts:
            if len(cell) == 1:
                new_parts.append(cell)
                continue
            keyed: dict[tuple, list[int]] = {}
            for v in cell:
                counts: dict[int, int] = {}
                for u in adj[v]:
                    c = cell_of[u]
                    counts[c] = counts.get(c, 0) + 1
                keyed.setdefault(tuple(sorted(counts.items())), []).append(v)
            if len(keyed) == 1:
                new_parts.append(cell)
            else:
                changed = True
                for key in sorted(keyed):
                    new_parts.append(sorted(keyed[key]))
        parts = new_parts
        if not changed:
            return parts


def _leaf_certificate(g: Graph, order: list[int]) -> bytes:
    pos = {v: i for i, v in enumerate(order)}
    n = g.vertex_count
    bits = bytearray((n * (n - 1) // 2 + 7) // 8)
    for a, b in g.edges:
        i, j = pos[a], pos[b]
        if i > j:
            i, j = j, i
        k = i * (2 * n - i - 1) // 2 + (j - i - 1)
        bits[k // 8] |= 1 << (k % 8)
    return bytes(bits)


def _canonical_order(g: Graph) -> tuple[bytes, list[int]]:
    """Refinement with individualization; discovered automorphisms prune the root cell."""
    n = g.vertex_count
    if n == 0:
        return b"", []
    adj = g.adjacency
    best_cert: Optional[bytes] = None
    best_order: Optional[list[int]] = None
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    def search(parts: list[list[int]], depth: int) -> None:
        nonlocal best_cert, best_order
        parts = _refine(adj, parts)
        if all(len(c) == 1 for c in parts):
            order = [c[0] for c in parts]
            cert = _leaf_certificate(g, order)
            if best_cert is None or cert < best_cert:
                best_cert, best_order = cert, order
            elif cert == best_cert:
                assert best_order is not None
                for i in range(n):
                    union(best_order[i], order[i])
            return
        target = min(
            (i for i, c in enumerate(parts) if len(c) > 1),
            key=lambda i: (len(parts[i]), i),
        )
        cell = parts[target]
        tried: list[int] = []
        for v in cell:
            if depth == 0 and any(find(v) == find(u) for u in tried):
                continue
            tried.append(v)
            branched = (
                parts[:target]
                + [[v], [w for w in cell if w != v]]
                + parts[target + 1 :]
            )
            search(branched, depth + 1)

    search([list(range(n))], 0)
    assert best_cert is not None and best_order is not None
    return best_cert, best_order


def canonical_key(g: Graph) -> bytes:
    """Byte string equal for two graphs exactly when they are isomorphic.

    The key starts with the cheap invariant (so unequal classes usually differ
    in the first bytes) followed by the exact canonical adjacency form.
    """
    sig = invariant_signature(g)
    n, m, degseq, unreachable_pairs, finite = sig
    head = struct.pack(">III", n, m, unreachable_pairs)
    head += struct.pack(f">{len(degseq)}H", *degseq) if degseq else b""
    head += struct.pack(f">{len(finite)}H", *finite) if finite else b""
    cert, _ = _canonical_order(g)
    return head + b"|" + cert


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.vertex_count != g2.vertex_count or len(g1.edges) != len(g2.edges):
        return False
    if invariant_signature(g1) != invariant_signature(g2):
        return False
    # Equal vertex and edge counts make any monomorphism a full isomorphism.
    return find_monomorphism(g1, g2) is not None


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """All adjacency-preserving permutations, in lexicographic order."""
    n = g.vertex_count
    if n == 0:
        return [()]
    adj = g.adjacency
    deg = [len(s) for s in adj]
    result: list[tuple[int, ...]] = []
    image = [-1] * n
    used = [False] * n

    def place(v: int) -> None:
        if v == n:
            result.append(tuple(image))
            return
        for u in range(n):
            if used[u] or deg[u] != deg[v]:
                continue
            ok = True
            for w in range(v):
                if ((min(v, w), max(v, w)) in g.edges) != (
                    (min(u, image[w]), max(u, image[w])) in g.edges
                ):
                    ok = False
                    break
            if ok:
                image[v] = u
                used[u] = True
                place(v + 1)
                used[u] = False
                image[v] = -1

    place(0)
    return result
