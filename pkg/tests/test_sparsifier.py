"""Sparsification: forest certificates and expander-core contraction."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kcut.graph import MultiGraph, boundary, connected_components
from kcut.oracles import OracleBudget, brute_min_conductance
from kcut.sparsify import (
    KTParams,
    kt_sparsify,
    low_conductance_cut,
    ni_sparsify,
    remove_vertices,
    shave_scrap_core,
    trim,
)
from helpers import complete_graph, cycle_graph, from_pairs, path_graph, random_simple_graph


def two_cliques_with_bridges(size, bridges):
    pairs = [(i, j) for i in range(size) for j in range(i + 1, size)]
    pairs += [(size + i, size + j) for i in range(size) for j in range(i + 1, size)]
    pairs += [(i, size + i) for i in range(bridges)]
    return from_pairs(2 * size, pairs), list(range(len(pairs) - bridges, len(pairs)))


def test_ni_single_forest_is_spanning_tree():
    g = complete_graph(5)
    res = ni_sparsify(g, 1)
    assert res.subgraph.m == 4
    assert connected_components(res.subgraph).k == 1


def test_ni_k4_two_forests():
    g = complete_graph(4)
    res = ni_sparsify(g, 2)
    assert res.subgraph.m <= 2 * 4
    assert len(res.forests) == 2
    for subset in range(1, 15):
        s = {v for v in range(4) if subset >> v & 1}
        if len(boundary(g, [s])) <= 2:
            assert boundary(res.subgraph, [s]) == boundary(g, [s])


def test_ni_forest_input_unchanged():
    g = path_graph(6)
    for lam in (1, 2, 5):
        assert set(ni_sparsify(g, lam).subgraph.edge_ids) == set(g.edge_ids)


def test_ni_rejects_parallel_edges():
    g = from_pairs(2, [(0, 1), (0, 1)])
    with pytest.raises(ValueError):
        ni_sparsify(g, 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=1, max_value=4))
def test_ni_preserves_small_boundaries(seed, lam):
    rng = random.Random(seed)
    g = random_simple_graph(rng, rng.randrange(4, 10), 0.5)
    res = ni_sparsify(g, lam)
    assert res.subgraph.m <= lam * g.n
    for _ in range(60):
        s = {v for v in g.vertices if rng.random() < 0.5}
        if s and len(s) < g.n and len(boundary(g, [s])) <= lam:
            assert boundary(res.subgraph, [s]) == boundary(g, [s])


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_ni_forests_are_maximal_and_disjoint(seed):
    rng = random.Random(seed)
    g = random_simple_graph(rng, 8, 0.5)
    res = ni_sparsify(g, 3)
    taken = set()
    for forest in res.forests:
        assert not (forest & taken)
        # maximality: every edge not picked joins already-connected endpoints
        head = list(range(g.n))

        def find(x):
            while head[x] != x:
                head[x] = head[head[x]]
                x = head[x]
            return x

        for e in sorted(forest):
            u, v = g.endpoints(e)
            assert find(u) != find(v)
            head[find(u)] = find(v)
        for e in g.edge_ids:
            if e not in taken and e not in forest:
                u, v = g.endpoints(e)
                assert find(u) == find(v)
        taken |= forest


def test_trim_fixpoint_when_equal():
    g = complete_graph(4)
    assert trim(g, g) == g


def test_trim_removes_weak_vertex():
    ref = complete_graph(4)
    weak = MultiGraph(4, [(e, *ref.endpoints(e)) for e in ref.edge_ids
                          if 0 not in ref.endpoints(e) or ref.endpoints(e) == (0, 1)])
    out = trim(weak, ref)
    assert out.degree(0) == 0
    assert {out.degree(v) for v in (1, 2, 3)} == {2}


def test_trim_empty_stays_empty():
    ref = complete_graph(3)
    out = trim(MultiGraph(3, []), ref)
    assert out.m == 0


def test_shave_keeps_whole_clique():
    g = complete_graph(5)
    assert shave_scrap_core(range(5), g, g) == frozenset(range(5))


def test_shave_scraps_lonely_vertex():
    # a singleton component: the stranded vertex is loose, scrap leaves nothing
    ref = from_pairs(3, [(0, 1), (0, 2), (1, 2)])
    h = MultiGraph(3, [])
    assert shave_scrap_core([0], h, ref) == frozenset()


def test_shave_two_k6_component():
    g, _ = two_cliques_with_bridges(6, 1)
    h = remove_vertices(g, [])  # h == g; component = one K6
    comp = set(range(6))
    assert shave_scrap_core(comp, h, g) == frozenset(comp)


def test_low_conductance_cut_expander_none():
    assert low_conductance_cut(complete_graph(4), Fraction(1, 100)) is None
    assert low_conductance_cut(from_pairs(2, [(0, 1)]), Fraction(1, 2)) is None


def test_low_conductance_cut_two_k4():
    g, _ = two_cliques_with_bridges(4, 1)
    hit = low_conductance_cut(g, Fraction(1, 10))
    assert hit is not None
    side, phi = hit
    assert phi == Fraction(1, 13)
    assert side in (frozenset(range(4)), frozenset(range(4, 8)))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_exact_cut_matches_oracle(seed):
    rng = random.Random(seed)
    g = random_simple_graph(rng, rng.randrange(3, 9), 0.7)
    if connected_components(g).k != 1 or g.m == 0:
        return
    _, best = brute_min_conductance(g, OracleBudget(max_vertices=10, max_subsets=1 << 10))
    gamma = Fraction(1, 3)
    hit = low_conductance_cut(g, gamma)
    if hit is None:
        assert best > gamma
    else:
        assert hit[1] == best and best <= gamma


def test_spectral_cut_finds_clique_split():
    g, bridge_ids = two_cliques_with_bridges(12, 1)
    hit = low_conductance_cut(g, 0.05, mode="spectral")
    assert hit is not None
    side, phi = hit
    assert side in (frozenset(range(12)), frozenset(range(12, 24)))
    assert phi == Fraction(1, 133)


def test_spectral_expander_certificate():
    assert low_conductance_cut(complete_graph(12), 0.05, mode="spectral") is None


def test_kt_collapses_clique():
    g = complete_graph(8)
    res = kt_sparsify(g, KTParams(alpha=1))
    assert res.contracted.n == 1
    assert res.contracted.m == 0
    assert len(res.iterations) == 1
    assert res.iterations[0].cores == 1
    assert {res.map.apply(v) for v in g.vertices} == {0}


def test_kt_preserves_bridge_cut():
    g, bridge_ids = two_cliques_with_bridges(20, 3)
    res = kt_sparsify(g, KTParams(alpha=1, gamma=Fraction(1, 20)))
    assert res.contracted.n <= 4
    assert set(bridge_ids) <= set(res.contracted.edge_ids)
    # the two clique sides stay apart
    a = res.map.apply(0)
    b = res.map.apply(20)
    assert a != b


def test_kt_guard_exit_after_one_round():
    g, _ = two_cliques_with_bridges(20, 3)
    res = kt_sparsify(g, KTParams(alpha=1, gamma=Fraction(1, 20)))
    # after the contraction round both supervertices are passive and every
    # remaining edge touches one, so the loop stops with a single record
    assert len(res.iterations) == 1
    assert res.iterations[0].supervertices_after == 2


def test_kt_statistics_monotone():
    g = complete_graph(9)
    res = kt_sparsify(g, KTParams(alpha=1))
    for it in res.iterations:
        assert it.edges_after <= it.edges_before
