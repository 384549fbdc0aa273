"""Exact SWAP-optimal mapping for desk-scale instances, plus the theorem-style
witness constructions built on top of it.

The search runs A* over (assignment, next-gate) states: executable gates are
executed greedily at zero cost (executing an adjacent gate never increases the
remaining optimum), and each expansion applies one SWAP on a physical edge.
All injective initial assignments are seeded at cost zero, deduplicated by the
architecture's automorphisms.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from itertools import permutations, product
from random import Random
from typing import Optional, Sequence

from .circuits import Circuit, concat, interaction_circuit, repeat
from .enumeration import SubarchRef
from .errors import ResourceLimitError, ValidationError
from .graphs import (
    Graph,
    _distances,
    are_isomorphic,
    automorphisms,
    canonical_key,
    induced_subgraph,
    is_connected,
)

DEFAULT_MAX_VERTICES = 10
DEFAULT_MAX_GATES = 40

SwapAction = tuple  # ("swap", u, v)
GateAction = tuple  # ("gate", index, u, v)


@dataclass(frozen=True)
class MappingResult:
    """Outcome of the optimal-swap search.

    exact=False means the search stopped at the budget: swap_count is then a
    proven lower bound and no schedule is attached.
    """

    swap_count: int
    initial_assignment: tuple[int, ...]
    schedule: tuple[tuple, ...]
    exact: bool = True


def _check_limits(circuit: Circuit, g: Graph, max_vertices: int, max_gates: int) -> None:
    if g.vertex_count > max_vertices:
        raise ResourceLimitError(
            f"architecture has {g.vertex_count} vertices, limit is {max_vertices}"
        )
    if circuit.gate_count > max_gates:
        raise ResourceLimitError(
            f"circuit has {circuit.gate_count} gates, limit is {max_gates}"
        )


def _advance(
    gates: tuple[tuple[int, int], ...],
    edges: frozenset[tuple[int, int]],
    assign: tuple[int, ...],
    idx: int,
) -> tuple[int, list[tuple]]:
    """Execute every immediately-executable gate; zero cost, never harmful."""
    actions: list[tuple] = []
    while idx < len(gates):
        a, b = gates[idx]
        u, v = assign[a], assign[b]
        if (min(u, v), max(u, v)) not in edges:
            break
        actions.append(("gate", idx, u, v))
        idx += 1
    return idx, actions


def _initial_assignments(g: Graph, q: int) -> list[tuple[int, ...]]:
    """All injective assignments, keeping one representative per automorphism orbit."""
    auts = automorphisms(g)
    keep: list[tuple[int, ...]] = []
    for assign in permutations(range(g.vertex_count), q):
        rep = min(tuple(sigma[p] for p in assign) for sigma in auts)
        if assign == rep:
            keep.append(assign)
    return keep


def minimum_swaps(
    circuit: Circuit,
    g: Graph,
    budget: Optional[int] = None,
    use_distance_bound: bool = True,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_gates: int = DEFAULT_MAX_GATES,
) -> MappingResult:
    """Exact minimum number of SWAPs to execute the circuit on g.

    The initial assignment is free: the search starts from every injective
    placement. With a budget, the search stops as soon as the optimum is
    proven to be at least the budget and reports that bound instead.
    """
    if not is_connected(g):
        raise ValidationError("mapping target must be connected")
    if circuit.qubit_count > g.vertex_count:
        raise ValidationError(
            f"{circuit.qubit_count} logical qubits do not fit on {g.vertex_count} vertices"
        )
    _check_limits(circuit, g, max_vertices, max_gates)
    gates = circuit.gates
    if not gates:
        return MappingResult(0, tuple(range(circuit.qubit_count)), ())
    edges = g.edges
    sorted_edges = g.sorted_edges
    dist = _distances(g).rows

    def heuristic(assign: tuple[int, ...], idx: int) -> int:
        if not use_distance_bound or idx >= len(gates):
            return 0
        a, b = gates[idx]
        return max(dist[assign[a]][assign[b]] - 1, 0)

    best_cost: dict[tuple, int] = {}
    came_from: dict[tuple, tuple] = {}  # state -> (parent_state|None, actions, root_assign)
    heap: list[tuple[int, int, tuple]] = []
    counter = 0
    for assign in _initial_assignments(g, circuit.qubit_count):
        idx, actions = _advance(gates, edges, assign, 0)
        state = (assign, idx)
        if state in best_cost:
            continue
        best_cost[state] = 0
        came_from[state] = (None, tuple(actions), assign)
        heapq.heappush(heap, (heuristic(assign, idx), counter, state))
        counter += 1

    while heap:
        f, _, state = heapq.heappop(heap)
        cost = best_cost[state]
        if f > cost + heuristic(state[0], state[1]):
            continue  # stale entry
        if budget is not None and f >= budget:
            return MappingResult(budget, (), (), exact=False)
        assign, idx = state
        if idx == len(gates):
            actions: list[tuple] = []
            cur: Optional[tuple] = state
            root_assign: tuple[int, ...] = ()
            while cur is not None:
                parent, acts, root = came_from[cur]
                actions.extend(reversed(acts))
                if parent is None:
                    root_assign = root
                cur = parent
            actions.reverse()
            return MappingResult(cost, root_assign, tuple(actions))
        for u, v in sorted_edges:
            new_assign = tuple(
                v if p == u else u if p == v else p for p in assign
            )
            new_idx, gate_actions = _advance(gates, edges, new_assign, idx)
            new_state = (new_assign, new_idx)
            new_cost = cost + 1
            if best_cost.get(new_state, new_cost + 1) <= new_cost:
                continue
            best_cost[new_state] = new_cost
            came_from[new_state] = (state, (("swap", u, v),) + tuple(gate_actions), ())
            heapq.heappush(
                heap,
                (new_cost + heuristic(new_assign, new_idx), counter, new_state),
            )
            counter += 1
    raise AssertionError("search space exhausted on a connected architecture")


def replay(circuit: Circuit, g: Graph, result: MappingResult) -> None:
    """Independent schedule checker; raises on any invalid step."""
    if not result.exact:
        raise ValidationError("cannot replay a budget verdict")
    q = circuit.qubit_count
    assign = list(result.initial_assignment)
    if len(assign) != q or len(set(assign)) != q:
        raise ValidationError("initial assignment is not injective over the logical qubits")
    if any(not (0 <= p < g.vertex_count) for p in assign):
        raise ValidationError("initial assignment leaves the architecture")
    next_gate = 0
    swaps = 0
    for action in result.schedule:
        kind = action[0]
        if kind == "swap":
            _, u, v = action
            if (min(u, v), max(u, v)) not in g.edges:
                raise ValidationError(f"swap on non-edge ({u}, {v})")
            for i, p in enumerate(assign):
                if p == u:
                    assign[i] = v
                elif p == v:
                    assign[i] = u
            swaps += 1
        elif kind == "gate":
            _, idx, u, v = action
            if idx != next_gate:
                raise ValidationError(f"gate {idx} executed out of order")
            a, b = circuit.gates[idx]
            if {assign[a], assign[b]} != {u, v}:
                raise ValidationError(f"gate {idx} executed on wrong physical qubits")
            if (min(u, v), max(u, v)) not in g.edges:
                raise ValidationError(f"gate {idx} executed on non-adjacent qubits")
            next_gate += 1
        else:
            raise ValidationError(f"unknown schedule action {kind!r}")
    if next_gate != circuit.gate_count:
        raise ValidationError(
            f"schedule executed {next_gate} of {circuit.gate_count} gates"
        )
    if swaps != result.swap_count:
        raise ValidationError(
            f"schedule contains {swaps} swaps, result claims {result.swap_count}"
        )


def make_subarch(g: Graph, vertices: Sequence[int], parent: str = "") -> SubarchRef:
    """SubarchRef for a concrete vertex subset; must induce a connected subgraph."""
    vs = tuple(sorted(vertices))
    if len(set(vs)) != len(vs):
        raise ValidationError("subset contains duplicate vertices")
    sub = induced_subgraph(g, vs)
    if not is_connected(sub):
        raise ValidationError(f"subset {vs} does not induce a connected subgraph")
    return SubarchRef(parent, vs, sub, canonical_key(sub))


def transformation_swaps(
    g: Graph,
    sub1: SubarchRef,
    sub2: SubarchRef,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> int:
    """Minimum swaps turning a swap-free placement of sub1 into one of sub2.

    Breadth-first token search over assignments: start with logical qubit i on
    the i-th vertex of sub1, stop once every interaction of sub2's pattern is
    executable.
    """
    if g.vertex_count > max_vertices:
        raise ResourceLimitError(
            f"architecture has {g.vertex_count} vertices, limit is {max_vertices}"
        )
    edges = g.edges
    goal_edges = sub2.graph.sorted_edges

    def at_goal(assign: tuple[int, ...]) -> bool:
        return all(
            (min(assign[i], assign[j]), max(assign[i], assign[j])) in edges
            for i, j in goal_edges
        )

    start = sub1.vertices
    if at_goal(start):
        return 0
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        assign, depth = frontier.popleft()
        for u, v in g.sorted_edges:
            new_assign = tuple(
                v if p == u else u if p == v else p for p in assign
            )
            if new_assign in seen:
                continue
            if at_goal(new_assign):
                return depth + 1
            seen.add(new_assign)
            frontier.append((new_assign, depth + 1))
    raise AssertionError("token search exhausted without reaching the goal placement")


@dataclass(frozen=True)
class WitnessReport:
    circuit: Circuit
    repetitions: int
    host_swaps: int
    sub1_swaps: int
    sub2_swaps: int

    @property
    def strict(self) -> bool:
        return self.host_swaps < min(self.sub1_swaps, self.sub2_swaps)


def host_advantage_witness(
    g: Graph,
    sub1: SubarchRef,
    sub2: SubarchRef,
    reps: Optional[int] = None,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    max_gates: int = DEFAULT_MAX_GATES,
) -> WitnessReport:
    """Circuit demanding both subarchitectures' interaction patterns in turn.

    Each block runs swap-free on its own subarchitecture but not on the
    other, so with enough repetitions the host, which can convert one
    placement into the other, beats either subarchitecture alone. The
    repetition count defaults to one more than the placement-transformation
    distance.
    """
    if sub1.size != sub2.size:
        raise ValidationError("both subarchitectures must have the same size")
    if are_isomorphic(sub1.graph, sub2.graph):
        raise ValidationError("subarchitectures must not be isomorphic")
    if reps is None:
        reps = transformation_swaps(g, sub1, sub2, max_vertices=max_vertices) + 1
    elif reps < 0:
        raise ValidationError("repetition count must be nonnegative")
    block1 = repeat(interaction_circuit(sub1.graph), reps)
    block2 = repeat(interaction_circuit(sub2.graph), reps)
    circuit = concat(block1, block2)
    host = minimum_swaps(circuit, g, max_vertices=max_vertices, max_gates=max_gates)
    on_sub1 = minimum_swaps(circuit, sub1.graph, max_vertices=max_vertices, max_gates=max_gates)
    on_sub2 = minimum_swaps(circuit, sub2.graph, max_vertices=max_vertices, max_gates=max_gates)
    return WitnessReport(
        circuit, reps, host.swap_count, on_sub1.swap_count, on_sub2.swap_count
    )


@dataclass(frozen=True)
class CoverageReport:
    """Outcome of comparing optimal swap counts over a circuit ensemble."""

    qubits: int
    gate_budget: int
    mode: str  # "exhaustive" or "sampled"
    circuits_checked: int
    second_never_worse: bool
    first_never_worse: bool
    witness_second_better: Optional[tuple[tuple[tuple[int, int], ...], int, int]]
    witness_first_better: Optional[tuple[tuple[tuple[int, int], ...], int, int]]

    @property
    def verdict(self) -> str:
        if self.second_never_worse and self.witness_second_better:
            return "second strictly covers first"
        if self.first_never_worse and self.witness_first_better:
            return "first strictly covers second"
        if self.second_never_worse and self.first_never_worse:
            return "equal on the ensemble"
        return "incomparable on the ensemble"

    @property
    def proved(self) -> bool:
        return self.mode == "exhaustive"


def compare_coverage(
    g1: Graph,
    g2: Graph,
    n: int,
    gate_budget: int,
    mode: str = "auto",
    samples: int = 200,
    seed: int = 0,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> CoverageReport:
    """Compare swap-optimality of two architectures over n-qubit circuits.

    Exhaustive mode proves the relation restricted to the gate budget; the
    ensemble grows as C(n,2)^budget, so it is only allowed for n <= 4 and
    budget <= 4. Sampled mode is labeled evidence, never proof.
    """
    if n > min(g1.vertex_count, g2.vertex_count):
        raise ValidationError("circuit size exceeds one of the architectures")
    exhaustive_ok = n <= 4 and gate_budget <= 4
    if mode == "auto":
        mode = "exhaustive" if exhaustive_ok else "sampled"
    if mode == "exhaustive" and not exhaustive_ok:
        raise ValidationError(
            "exhaustive comparison is limited to 4 qubits and 4 gates"
        )
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]

    def ensemble():
        if mode == "exhaustive":
            for length in range(gate_budget + 1):
                yield from product(pairs, repeat=length)
        else:
            rng = Random(seed)
            for _ in range(samples):
                length = rng.randint(1, gate_budget)
                yield tuple(rng.choice(pairs) for _ in range(length))

    second_never_worse = True
    first_never_worse = True
    witness_second = None
    witness_first = None
    checked = 0
    for gates in ensemble():
        circuit = Circuit(n, gates)
        s1 = minimum_swaps(circuit, g1, max_vertices=max_vertices).swap_count
        s2 = minimum_swaps(circuit, g2, max_vertices=max_vertices).swap_count
        checked += 1
        if s2 > s1:
            second_never_worse = False
        if s1 > s2:
            first_never_worse = False
        if s2 < s1 and witness_second is None:
            witness_second = (gates, s1, s2)
        if s1 < s2 and witness_first is None:
            witness_first = (gates, s1, s2)
    return CoverageReport(
        n,
        gate_budget,
        mode,
        checked,
        second_never_worse,
        first_never_worse,
        witness_second,
        witness_first,
    )
