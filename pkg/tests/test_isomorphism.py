"""Colour refinement, isomorphism, canonical forms, automorphism orbits."""

import random
from itertools import combinations, permutations

from hypothesis import given, settings
from hypothesis import strategies as st

from cubicml.graph import Graph
from cubicml.isomorphism import (
    are_isomorphic,
    canonical_data,
    canonical_form,
    color_refine,
    find_isomorphism,
    pair_seeds,
)
from conftest import random_graph, shuffled_copy


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


def brute_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    for perm in permutations(range(g1.n)):
        if all(g2.adj[perm[u]] >> perm[v] & 1
               for u, v in g1.edges):
            return True
    return False


def test_color_refine_splits_by_degree():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])  # path
    colors = color_refine(g)
    assert colors[0] == colors[3] and colors[1] == colors[2]
    assert colors[0] != colors[1]


def test_color_refine_regular_graph_single_class():
    assert len(set(color_refine(cycle(6)))) == 1


def test_pair_seeds_separate_nonsimilar_vertices():
    # triangle with a pendant: all four vertices pairwise distinguishable
    # except the two triangle vertices not carrying the pendant
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
    seeds = pair_seeds(g)
    assert seeds[1] == seeds[2]
    assert len({seeds[0], seeds[1], seeds[3]}) == 3


def test_isomorphic_to_relabeling():
    rng = random.Random(1)
    for n in (5, 8, 10):
        g = random_graph(rng, n, 0.5)
        h, _ = shuffled_copy(rng, g)
        assert are_isomorphic(g, h)
        mapping = find_isomorphism(g, h)
        assert mapping is not None
        for u in range(n):
            for v in range(n):
                assert (g.adj[u] >> v & 1) == (h.adj[mapping[u]] >> mapping[v] & 1)


def test_non_isomorphic_pairs():
    assert not are_isomorphic(cycle(5), cycle(6))
    # same degree sequence, different structure: C6 vs two triangles
    two_triangles = Graph.from_edges(
        6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert not are_isomorphic(cycle(6), two_triangles)
    assert find_isomorphism(cycle(6), two_triangles) is None


def test_agrees_with_brute_force_on_random_pairs():
    rng = random.Random(2)
    for _ in range(60):
        n = rng.randint(2, 6)
        g1 = random_graph(rng, n, 0.5)
        g2 = random_graph(rng, n, 0.5)
        expected = brute_isomorphic(g1, g2)
        assert are_isomorphic(g1, g2) == expected
        assert (find_isomorphism(g1, g2) is not None) == expected


def test_canonical_form_invariant_under_relabeling():
    rng = random.Random(3)
    for n in (6, 9, 12):
        g = random_graph(rng, n, 0.4)
        h, _ = shuffled_copy(rng, g)
        assert canonical_form(g) == canonical_form(h)


def test_canonical_form_separates_classes_exhaustively():
    # all graphs on 4 vertices: distinct canonical forms iff non-isomorphic
    pairs = list(combinations(range(4), 2))
    by_form: dict[bytes, Graph] = {}
    for mask in range(1 << 6):
        edges = [pairs[i] for i in range(6) if mask >> i & 1]
        g = Graph.from_edges(4, edges)
        f = canonical_form(g)
        if f in by_form:
            assert brute_isomorphic(by_form[f], g)
        else:
            by_form[f] = g
    assert len(by_form) == 11  # graphs on 4 vertices up to isomorphism


def test_automorphism_groups_of_known_graphs():
    k4 = Graph.from_edges(4, list(combinations(range(4), 2)))
    assert len(canonical_data(k4).automorphisms) == 24
    assert len(canonical_data(cycle(5)).automorphisms) == 10
    assert len(canonical_data(petersen()).automorphisms) == 120


def test_automorphisms_are_valid_and_orbits_correct():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])  # path
    data = canonical_data(g)
    for perm in data.automorphisms:
        for u, v in g.edges:
            assert g.adj[perm[u]] >> perm[v] & 1
    assert data.orbit[0] == data.orbit[4]
    assert data.orbit[1] == data.orbit[3]
    assert data.orbit[2] not in (data.orbit[0], data.orbit[1])


def test_canonical_labeling_reproduces_form():
    rng = random.Random(4)
    g = random_graph(rng, 8, 0.5)
    data = canonical_data(g)
    assert sorted(data.labeling) == list(range(8))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.randoms(use_true_random=False))
def test_relabeling_preserves_canonical_form_property(n, rng):
    g = random_graph(rng, n, 0.5)
    h, _ = shuffled_copy(rng, g)
    assert canonical_form(g) == canonical_form(h)
    assert are_isomorphic(g, h)
