import random
from itertools import combinations

import pytest

from subarch import (
    CombinationLimitError,
    Graph,
    ValidationError,
    added_qubit_bound,
    are_isomorphic,
    candidates,
    desirable_set,
    diameter,
    enumerate_connected,
    find_monomorphism,
    induced_subgraph,
    invariant_signature,
    is_connected,
    iso_classes,
    minimal_saturated_supersets,
    optimal_candidates,
    path_graph,
    precedes,
    ring_graph,
    strictly_extends,
    strictly_precedes,
)
from subarch.graphs import _distances
from conftest import random_connected_graph


def brute_force_minimal_saturated(g: Graph, seed) -> list[tuple[int, ...]]:
    """Filter all supersets by the saturation-and-minimality conditions."""
    seed = tuple(sorted(seed))
    gd = _distances(g).rows
    rest = [v for v in range(g.vertex_count) if v not in seed]
    saturated = []
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            t = tuple(sorted(seed + extra))
            sub = induced_subgraph(g, t)
            if not is_connected(sub):
                continue
            pos = {v: i for i, v in enumerate(t)}
            sd = _distances(sub).rows
            if all(sd[pos[v]][pos[w]] == gd[v][w] for v in seed for w in seed):
                saturated.append(frozenset(t))
    minimal = [t for t in saturated if not any(o < t for o in saturated)]
    return sorted(tuple(sorted(t)) for t in minimal)


class TestPrecedes:
    def test_path_strictly_below_ring(self):
        witness = precedes(path_graph(4), ring_graph(5))
        assert witness is not None and witness.strict
        assert (0, 3) in witness.strict_pairs

    def test_graph_not_strictly_below_itself(self):
        g = random_connected_graph(random.Random(3), 6)
        witness = precedes(g, g)
        assert witness is not None and not witness.strict

    def test_path_below_longer_path_not_strict(self):
        witness = precedes(path_graph(4), path_graph(5))
        assert witness is not None and not witness.strict

    def test_absent_without_embedding(self):
        assert precedes(ring_graph(3), ring_graph(5)) is None

    def test_embedding_exists_implies_below(self):
        rng = random.Random(11)
        for _ in range(60):
            small = random_connected_graph(rng, rng.randint(2, 5))
            large = random_connected_graph(rng, rng.randint(5, 8))
            if find_monomorphism(small, large) is not None:
                assert precedes(small, large) is not None

    def test_strict_implies_not_isomorphic(self):
        rng = random.Random(13)
        for _ in range(60):
            small = random_connected_graph(rng, rng.randint(2, 5))
            large = random_connected_graph(rng, rng.randint(4, 7))
            if strictly_precedes(small, large):
                assert not are_isomorphic(small, large)


class TestStrictlyExtends:
    def test_closing_the_ring(self):
        assert strictly_extends(ring_graph(5), [0, 1, 2, 3], [0, 1, 2, 3, 4])

    def test_appending_a_path_end(self):
        assert not strictly_extends(path_graph(5), [0, 1, 2, 3], [0, 1, 2, 3, 4])

    def test_equal_subsets(self):
        assert not strictly_extends(ring_graph(5), [0, 1, 2], [0, 1, 2])

    def test_not_nested_raises(self):
        with pytest.raises(ValidationError):
            strictly_extends(ring_graph(5), [0, 1, 4], [0, 1, 2])

    def test_disconnected_subset_raises(self):
        with pytest.raises(ValidationError):
            strictly_extends(ring_graph(5), [0, 2], [0, 1, 2])


class TestSaturatingExtensions:
    def test_ring_closure(self):
        assert minimal_saturated_supersets(ring_graph(5), [0, 1, 2, 3]) == [
            (0, 1, 2, 3, 4)
        ]

    def test_already_saturated_path(self):
        assert minimal_saturated_supersets(path_graph(5), [0, 1, 2, 3]) == [(0, 1, 2, 3)]

    def test_matches_brute_force(self):
        rng = random.Random(29)
        for _ in range(40):
            g = random_connected_graph(rng, rng.randint(4, 8))
            sizes = range(2, g.vertex_count)
            for n in sizes:
                for seed in combinations(range(g.vertex_count), n):
                    if not is_connected(induced_subgraph(g, seed)):
                        continue
                    assert minimal_saturated_supersets(g, seed) == brute_force_minimal_saturated(g, seed)

    def test_combination_cap_reported(self):
        # seven parallel two-hop connections between 0 and 1, plus one long detour
        edges = [(0, m) for m in range(2, 9)] + [(m, 1) for m in range(2, 9)]
        edges += [(0, 9), (9, 10), (10, 1)]
        g = Graph.from_edges(11, edges)
        with pytest.raises(CombinationLimitError):
            minimal_saturated_supersets(g, [0, 1, 9, 10], cap=3)
        # with a sufficient cap the seven minimal closures all appear
        results = minimal_saturated_supersets(g, [0, 1, 9, 10], cap=100)
        assert len(results) == 7

    def test_desirable_set_groups_by_class(self):
        refs = desirable_set(ring_graph(5), [0, 1, 2, 3])
        assert len(refs) == 1
        assert refs[0].vertices == (0, 1, 2, 3, 4)

    def test_removing_any_added_vertex_breaks_saturation(self):
        rng = random.Random(37)
        checked = 0
        for _ in range(25):
            g = random_connected_graph(rng, rng.randint(5, 8))
            for n in range(2, g.vertex_count - 1):
                for seed in combinations(range(g.vertex_count), n):
                    if not is_connected(induced_subgraph(g, seed)):
                        continue
                    gd = _distances(g).rows
                    for t in minimal_saturated_supersets(g, seed):
                        for v in set(t) - set(seed):
                            shrunk = tuple(x for x in t if x != v)
                            sub = induced_subgraph(g, shrunk)
                            pos = {x: i for i, x in enumerate(shrunk)}
                            still_good = is_connected(sub) and all(
                                _distances(sub).rows[pos[a]][pos[b]] == gd[a][b]
                                for a in seed
                                for b in seed
                            )
                            assert not still_good
                            checked += 1
        assert checked > 50


class TestCandidates:
    def test_single_candidate_on_path(self):
        cand = candidates(path_graph(5), 4)
        assert len(cand.members) == 1
        assert are_isomorphic(cand.members[0].graph, path_graph(4))

    def test_four_of_seven_size9_classes_grow(self, guadalupe):
        # the 16-qubit device's central ring can be closed for four of the
        # seven 9-qubit classes; extensions reach up to 13 qubits
        g = guadalupe.graph
        seeds = iso_classes(g, 9, guadalupe.name)
        by_sig: dict = {}
        for rep in seeds.representatives:
            by_sig.setdefault(invariant_signature(rep.graph), []).append(rep)
        growing: set[bytes] = set()
        for vs in enumerate_connected(g, 9):
            sub = induced_subgraph(g, vs)
            if minimal_saturated_supersets(g, vs) == [vs]:
                continue
            for rep in by_sig[invariant_signature(sub)]:
                if find_monomorphism(sub, rep.graph) is not None:
                    growing.add(rep.class_key)
                    break
        assert seeds.class_count == 7
        assert len(growing) == 4
        cand = candidates(g, 9, guadalupe.name)
        assert min(m.size for m in cand.members) == 9
        assert max(m.size for m in cand.members) == 13

    def test_members_cover_all_seed_classes(self, guadalupe):
        cand = candidates(guadalupe.graph, 9, guadalupe.name)
        seeds = iso_classes(guadalupe.graph, 9, guadalupe.name)
        for rep in seeds.representatives:
            assert any(
                find_monomorphism(rep.graph, m.graph) is not None for m in cand.members
            )

    def test_members_contain_some_seed_class(self, guadalupe):
        cand = candidates(guadalupe.graph, 9, guadalupe.name)
        seeds = iso_classes(guadalupe.graph, 9, guadalupe.name)
        by_key = {rep.class_key: rep for rep in seeds.representatives}
        for member, origin in zip(cand.members, cand.provenance):
            assert origin
            for key in origin:
                assert find_monomorphism(by_key[key].graph, member.graph) is not None

    def test_members_pairwise_non_isomorphic(self, guadalupe):
        cand = candidates(guadalupe.graph, 9, guadalupe.name)
        members = cand.members
        for i in range(len(members)):
            assert members[i].size >= 9
            for j in range(i + 1, len(members)):
                assert not are_isomorphic(members[i].graph, members[j].graph)

    def test_growth_within_added_qubit_bound(self, guadalupe):
        d = diameter(guadalupe.graph)
        cand = candidates(guadalupe.graph, 9, guadalupe.name)
        bound = added_qubit_bound(9, d)
        for m in cand.members:
            assert m.size - 9 <= bound


class TestOptimalCandidates:
    def test_path_contains_itself(self):
        members = optimal_candidates(path_graph(5), 4)
        assert len(members) == 1
        assert are_isomorphic(members[0].graph, path_graph(4))

    def test_every_candidate_contained(self, guadalupe):
        cand = candidates(guadalupe.graph, 9, guadalupe.name)
        members = optimal_candidates(guadalupe.graph, 9, guadalupe.name, cand=cand)
        for m in members:
            for c in cand.members:
                assert find_monomorphism(c.graph, m.graph) is not None

    def test_no_smaller_size_suffices(self, guadalupe):
        cand = candidates(guadalupe.graph, 9, guadalupe.name)
        members = optimal_candidates(guadalupe.graph, 9, guadalupe.name, cand=cand)
        size = members[0].size
        smaller = iso_classes(guadalupe.graph, size - 1, guadalupe.name)
        patterns = [c.graph for c in cand.members]
        for rep in smaller.representatives:
            assert not all(
                find_monomorphism(p, rep.graph) is not None for p in patterns
            )


class TestAddedQubitBound:
    def test_formula(self):
        assert added_qubit_bound(4, 3) == 12

    def test_complete_graph_adds_nothing(self):
        for n in (1, 5, 9):
            assert added_qubit_bound(n, 1) == 0

    def test_dominates_observed_growth(self, guadalupe):
        bound = added_qubit_bound(9, diameter(guadalupe.graph))
        assert bound >= 13 - 9

    def test_invalid_arguments(self):
        with pytest.raises(ValidationError):
            added_qubit_bound(0, 3)
        with pytest.raises(ValidationError):
            added_qubit_bound(3, 0)
