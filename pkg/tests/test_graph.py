"""Multigraph core: contraction, cuts, boundaries, components, s-t cut."""

import itertools
import random

import pytest
from hypothesis import given, strategies as st

from kcut.graph import (
    ContractionMap,
    MultiGraph,
    Partition,
    boundary,
    connected_components,
    contract,
    contract_set,
    cut_edge_set,
    cut_value,
    induced_subgraph,
    min_st_cut,
)
from helpers import complete_graph, cycle_graph, from_pairs, path_graph, random_multigraph


def test_contract_triangle_drops_inner_edge():
    g = from_pairs(3, [(0, 1), (1, 2), (0, 2)])
    h, cmap = contract(g, 0, 1)
    assert h.n == 2
    assert set(h.edge_ids) == {1, 2}
    # both survivors now run between the merged vertex and c
    assert all(set(h.endpoints(e)) == {0, 1} for e in h.edge_ids)
    assert cmap.apply(0) == cmap.apply(1)


def test_contract_single_edge_leaves_isolated_vertex():
    g = from_pairs(2, [(0, 1)])
    h, _ = contract(g, 0, 1)
    assert h.n == 1
    assert h.m == 0


def test_contract_path_keeps_identifiers():
    g = path_graph(4)  # ids 0:(0,1) 1:(1,2) 2:(2,3)
    h, cmap = contract(g, 1, 2)
    assert h.n == 3
    assert set(h.edge_ids) == {0, 2}
    x = cmap.apply(1)
    assert set(h.endpoints(0)) == {cmap.apply(0), x}
    assert set(h.endpoints(2)) == {x, cmap.apply(3)}


def test_contract_rejects_bad_arguments():
    g = path_graph(3)
    with pytest.raises(ValueError):
        contract(g, 0, 0)
    with pytest.raises(ValueError):
        contract(g, 0, 7)


def test_no_self_loops_ever():
    with pytest.raises(ValueError):
        MultiGraph(2, [(0, 1, 1)])


def test_duplicate_edge_id_rejected():
    with pytest.raises(ValueError):
        MultiGraph(3, [(0, 0, 1), (0, 1, 2)])


def test_cut_value_c4_opposite_pairs():
    g = cycle_graph(4)
    assert cut_value(g, Partition([{0, 1}, {2, 3}])) == 2
    assert cut_value(g, Partition([{0, 2}, {1, 3}])) == 4


def test_cut_value_k4_isolating_two():
    g = complete_graph(4)
    assert cut_value(g, Partition([{0}, {1}, {2, 3}])) == 5


def test_cut_value_single_block_is_zero():
    g = complete_graph(5)
    assert cut_value(g, Partition([set(range(5))])) == 0


def test_cut_value_rejects_partial_cover():
    g = path_graph(3)
    with pytest.raises(ValueError):
        cut_value(g, Partition([{0, 1}]))


def test_boundary_c4_single_vertex():
    g = cycle_graph(4)
    assert boundary(g, [{0}]) == frozenset({0, 3})


def test_boundary_k4_two_singletons():
    g = complete_graph(4)
    # all of K4's edges except cd
    ids = {e for e in g.edge_ids if set(g.endpoints(e)) != {2, 3}}
    assert boundary(g, [{0}, {1}]) == frozenset(ids)


def test_boundary_of_everything_is_empty():
    g = complete_graph(4)
    assert boundary(g, [set(range(4))]) == frozenset()


def test_boundary_rejects_overlap():
    g = path_graph(3)
    with pytest.raises(ValueError):
        boundary(g, [{0, 1}, {1, 2}])


def test_min_st_cut_cycle_and_clique():
    assert min_st_cut(cycle_graph(4), 0, 2)[0] == 2
    g = complete_graph(4)
    for s, t in itertools.combinations(range(4), 2):
        assert min_st_cut(g, s, t)[0] == 3


def test_min_st_cut_bridge():
    g = from_pairs(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    value, side = min_st_cut(g, 2, 3)
    assert value == 1
    assert side == frozenset({0, 1, 2})


def test_min_st_cut_counts_parallel_edges():
    g = from_pairs(2, [(0, 1), (0, 1), (0, 1)])
    assert min_st_cut(g, 0, 1)[0] == 3


def test_min_st_cut_rejects_same_endpoints():
    with pytest.raises(ValueError):
        min_st_cut(path_graph(3), 1, 1)


def test_connected_components_examples():
    assert connected_components(path_graph(3)).k == 1
    two_edges = from_pairs(4, [(0, 1), (2, 3)])
    assert connected_components(two_edges) == Partition([{0, 1}, {2, 3}])
    assert connected_components(MultiGraph(3, [])).k == 3


def test_contraction_map_composes():
    g = path_graph(4)
    h1, m1 = contract(g, 0, 1)
    h2, m2 = contract(h1, m1.apply(2), m1.apply(3))
    total = m1.compose(m2)
    assert total.apply(2) == total.apply(3)
    assert total.apply(0) == total.apply(1)
    assert total.apply(0) != total.apply(2)
    assert h2.n == 2


def test_contract_set_multiway():
    g = complete_graph(4)
    h, cmap = contract_set(g, {0, 1, 2})
    assert h.n == 2
    assert h.m == 3  # the three edges into vertex 3 survive as parallels
    assert len({cmap.apply(v) for v in (0, 1, 2)}) == 1


def test_induced_subgraph_keeps_ids():
    g = complete_graph(4)
    sub, vmap = induced_subgraph(g, {1, 2, 3})
    assert sub.n == 3 and sub.m == 3
    assert set(sub.edge_ids) <= set(g.edge_ids)
    assert set(vmap) == {1, 2, 3}


graphs = st.builds(
    lambda n, seed: random_multigraph(random.Random(seed), n, 2 * n),
    st.integers(min_value=2, max_value=8),
    st.integers(min_value=0, max_value=10**6),
)


@given(graphs, st.integers(min_value=0, max_value=10**6))
def test_contraction_preserves_other_identifiers(g, seed):
    rng = random.Random(seed)
    u = rng.randrange(g.n)
    v = rng.randrange(g.n)
    if u == v:
        return
    dropped = {e for e in g.edge_ids if set(g.endpoints(e)) == {u, v}}
    h, _ = contract(g, u, v)
    assert set(h.edge_ids) == set(g.edge_ids) - dropped


@given(graphs, st.integers(min_value=0, max_value=10**6))
def test_contraction_preserves_cut_values(g, seed):
    rng = random.Random(seed)
    u, v = rng.sample(range(g.n), 2) if g.n >= 2 else (0, 0)
    others = [w for w in g.vertices if w not in (u, v)]
    rng.shuffle(others)
    half = len(others) // 2
    blocks = [{u, v} | set(others[:half])]
    if others[half:]:
        blocks.append(set(others[half:]))
    p = Partition(blocks)
    h, cmap = contract(g, u, v)
    q = Partition([{cmap.apply(w) for w in b} for b in blocks])
    assert cut_value(g, p) == cut_value(h, q)


@given(graphs, st.integers(min_value=0, max_value=10**6))
def test_min_st_cut_matches_bipartition_enumeration(g, seed):
    rng = random.Random(seed)
    s, t = rng.sample(range(g.n), 2)
    best = min(
        cut_value(g, Partition([side, set(g.vertices) - side]))
        for r in range(1, g.n)
        for side in map(set, itertools.combinations(range(g.n), r))
        if s in side and t not in side
    )
    value, side = min_st_cut(g, s, t)
    assert value == best
    assert s in side and t not in side
    assert len(cut_edge_set(g, Partition([side, frozenset(g.vertices) - side]))) == value


@given(graphs)
def test_degree_matches_boundary_of_singleton(g):
    for v in g.vertices:
        assert g.degree(v) == len(boundary(g, [{v}]))


def test_partition_normalizes_block_order():
    assert Partition([{2, 3}, {0, 1}]) == Partition([{0, 1}, {2, 3}])


def test_identity_map():
    m = ContractionMap.identity(3)
    assert [m.apply(v) for v in range(3)] == [0, 1, 2]
