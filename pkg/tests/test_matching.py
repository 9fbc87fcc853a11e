import random

import pytest

from treesieve import generators as gen
from treesieve.graphcore import Graph
from treesieve.matching import (
    count_pm_general,
    gallai_edmonds,
    matching_number,
    maximum_matching,
    near_pm_weights,
)
from treesieve.oracle import biadjacency, count_matchings_bf, maximum_matching_size_bf, permanent_ryser


def _is_matching(G, M):
    edges = {(u, v) for u, v, _ in G.edges}
    used = [x for e in M for x in e]
    return len(used) == len(set(used)) and all(e in edges for e in M)


@pytest.mark.parametrize("G, size", [(gen.path(4), 2), (gen.complete(4), 2), (gen.petersen(), 5)])
def test_maximum_matching_examples(G, size):
    M = maximum_matching(G)
    assert len(M) == size and _is_matching(G, M)


def test_maximum_matching_is_deterministic():
    G = gen.petersen()
    assert maximum_matching(G) == maximum_matching(G)


def test_nu_identity_on_corpus():
    rng = random.Random(2)
    graphs = gen.family_corpus(8) + [gen.random_graph(rng.randint(1, 10), 0.35, rng) for _ in range(80)]
    for G in graphs:
        assert matching_number(G) == maximum_matching_size_bf(G)


def test_ge_examples():
    ge = gallai_edmonds(gen.complete(3))
    assert ge.D == frozenset(range(3)) and not ge.A and not ge.C and len(ge.D_components) == 1
    ge = gallai_edmonds(gen.complete(4))
    assert not ge.D and not ge.A and ge.C == frozenset(range(4))
    ge = gallai_edmonds(gen.path(3))
    assert ge.D == {0, 2} and ge.A == {1} and not ge.C


def test_ge_properties_random():
    rng = random.Random(8)
    for _ in range(80):
        G = gen.random_graph(rng.randint(1, 10), rng.choice([0.2, 0.35, 0.5]), rng)
        ge = gallai_edmonds(G)
        assert 2 * ge.nu == G.n - len(ge.D_components) + len(ge.A)
        if ge.C:
            assert count_pm_general(G.induced(ge.C)) >= 1
        for comp in ge.D_components:
            for v in comp:
                rest = [u for u in comp if u != v]
                assert count_pm_general(G.induced(rest)) >= 1
        # no A-C or D-C edges, D components are exactly the components of G[D]
        for u, v, _ in G.edges:
            assert not ({u, v} & ge.C and {u, v} & ge.D)


def test_ge_rejects_directed():
    with pytest.raises(ValueError):
        gallai_edmonds(gen.directed_path(3))


@pytest.mark.parametrize("G, count", [(gen.complete(4), 3), (gen.cycle(5), 0), (gen.petersen(), 6)])
def test_count_pm_examples(G, count):
    assert count_pm_general(G) == count


def test_count_pm_matches_oracles():
    rng = random.Random(1)
    for _ in range(60):
        G = gen.random_graph(2 * rng.randint(0, 5), 0.45, rng)
        assert count_pm_general(G) == count_matchings_bf(G, "perfect")
    for _ in range(30):
        k = rng.randint(1, 6)
        G = gen.random_bipartite(k, k, 0.6, rng)
        assert count_pm_general(G) == permanent_ryser(biadjacency(G, range(k), range(k, 2 * k)))


def test_near_pm_weights_examples():
    single = Graph(1, False, ())
    assert near_pm_weights(single) == ({0: 1}, 1)
    assert near_pm_weights(gen.complete(3)) == ({0: 1, 1: 1, 2: 1}, 3)
    table, W = near_pm_weights(gen.cycle(5))
    assert W == 5 and set(table.values()) == {1}


def test_near_pm_weights_rejects_non_factor_critical():
    with pytest.raises(AssertionError):
        near_pm_weights(gen.path(3))
    with pytest.raises(AssertionError):
        near_pm_weights(gen.path(2))


def test_component_weight_restricts_to_neighbours():
    # star K_{1,3}: A = {0}, D = three singleton leaves
    G = gen.star(3)
    ge = gallai_edmonds(G)
    assert ge.A == {0} and len(ge.D_components) == 3
    assert [ge.w(G, 0, i) for i in range(3)] == [1, 1, 1]
