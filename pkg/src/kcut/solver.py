"""Minimum k-cut driver.

Branches on singleton blocks (delete a vertex, solve for k-1), and in
parallel scans a greedy spanning-tree packing with the tree-cut dynamic
program; dense graphs are sparsified first.  Both paths produce feasible
cuts scored against the real graph, so the returned minimum is always an
upper bound on the optimum and matches it whenever either path can
express an optimal partition.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, List, Optional, Tuple

from .errors import BudgetExceeded, Infeasible
from .graph import (
    KCutSolution,
    MultiGraph,
    Partition,
    connected_components,
    cut_edge_set,
    cut_value,
    induced_subgraph,
)
from .oracles import brute_min_kcut
from .packing import greedy_tree_packing, is_tight
from .sparsify import KTParams, kt_sparsify, ni_sparsify
from .tree import RootedTree
from .treecut import TrialConfig, tree_cut

MODES = ("auto", "treecut_only", "oracle_only")


@dataclass(frozen=True)
class SolverConfig:
    """Pipeline constants and mode switches.

    kt_constant scales the minimum-degree gate in front of sparsification;
    pack_constant scales the number of packed trees.  treecut_max_n bounds
    the graphs the tree-cut stage will attempt: beyond it only branching
    runs, which keeps results sound but may miss optima without small
    blocks.
    """

    kt_constant: float = 4.0
    pack_constant: float = 3.0
    trial: TrialConfig = TrialConfig()
    oracle_fallback_max_n: int = 10
    mode: str = "auto"
    pack_cap: int = 64
    treecut_max_n: int = 32

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError("mode must be one of %s" % (MODES,))


def nontrivial_bound(g: MultiGraph, k: int) -> int:
    """k^2 times the minimum degree: no minimum k-cut is ever larger."""
    if k < 1:
        raise ValueError("k must be positive")
    return k * k * g.min_degree()


def _is_simple(g: MultiGraph) -> bool:
    pairs = set()
    for e in g.edge_ids:
        u, v = g.endpoints(e)
        key = (u, v) if u < v else (v, u)
        if key in pairs:
            return False
        pairs.add(key)
    return True


def _tree_seed(base: int, ids) -> int:
    digest = hashlib.blake2b(repr((base, tuple(sorted(ids)))).encode(),
                             digest_size=8).digest()
    return int.from_bytes(digest, "big")


def _expand_partition(partition: Partition, mapping, n: int) -> Partition:
    idx = partition.block_index()
    blocks: Dict[int, List[int]] = {}
    for v in range(n):
        blocks.setdefault(idx[mapping.apply(v)], []).append(v)
    return Partition(blocks.values())


class _Context:
    def __init__(self, g: MultiGraph, config: SolverConfig, stats: dict):
        self.g0 = g
        self.config = config
        self.stats = stats
        self.memo: Dict[Tuple[FrozenSet[int], int], KCutSolution] = {}
        self.top_alive = frozenset(g.vertices)


def _solve(ctx: _Context, alive: FrozenSet[int], k: int) -> KCutSolution:
    key = (alive, k)
    hit = ctx.memo.get(key)
    if hit is not None:
        return hit
    ctx.stats["cells"] += 1
    order = sorted(alive)
    if k == 1:
        sol = KCutSolution(0, Partition([order]), frozenset(), "base")
        ctx.memo[key] = sol
        return sol
    sub, vmap = induced_subgraph(ctx.g0, order)
    rev = {local: orig for orig, local in vmap.items()}
    comps = connected_components(sub)
    if comps.k > 1:
        sol = _solve_components(ctx, comps, rev, k)
    else:
        sol = _solve_connected(ctx, alive, sub, vmap, rev, k)
    ctx.memo[key] = sol
    return sol


def _solve_components(ctx: _Context, comps: Partition, rev, k: int) -> KCutSolution:
    """Split the part budget across connected components; merges are free."""
    blocks_orig = [sorted(rev[v] for v in b) for b in comps.blocks]
    if k <= len(blocks_orig):
        # enough components already: keep k-1 of them apart, merge the rest
        merged = [blocks_orig[i] for i in range(k - 1)]
        rest = [v for b in blocks_orig[k - 1:] for v in b]
        merged.append(rest)
        return KCutSolution(0, Partition(merged), frozenset(), "components")
    tables: List[Dict[int, KCutSolution]] = []
    for block in blocks_orig:
        table = {}
        for j in range(1, min(k, len(block)) + 1):
            table[j] = _solve(ctx, frozenset(block), j)
        tables.append(table)
    dp: Dict[int, Tuple[int, Tuple[int, ...]]] = {0: (0, ())}
    for table in tables:
        nxt: Dict[int, Tuple[int, Tuple[int, ...]]] = {}
        for spent, (val, picks) in dp.items():
            for j, sol in table.items():
                tot = spent + j
                if tot > k:
                    continue
                cand = (val + sol.value, picks + (j,))
                cur = nxt.get(tot)
                if cur is None or cand < cur:
                    nxt[tot] = cand
        dp = nxt
    value, picks = dp[k]
    blocks: List[List[int]] = []
    cut: FrozenSet[int] = frozenset()
    for table, j in zip(tables, picks):
        sol = table[j]
        blocks.extend(list(b) for b in sol.partition.blocks)
        cut |= sol.cut_edges
    return KCutSolution(value, Partition(blocks), cut, "components")


def _solve_connected(ctx, alive, sub, vmap, rev, k: int) -> KCutSolution:
    n = sub.n
    best: Optional[KCutSolution] = None
    # singleton branching, cheapest boundary first: any branch whose vertex
    # degree already matches the incumbent cannot improve on it
    by_degree = sorted((sub.degree(v), rev[v]) for v in range(n))
    for d, orig in by_degree:
        if best is not None and d >= best.value:
            break
        if k - 1 > len(alive) - 1:
            break
        rec = _solve(ctx, alive - {orig}, k - 1)
        value = rec.value + d
        if best is None or value < best.value:
            blocks = [list(b) for b in rec.partition.blocks] + [[orig]]
            cut = rec.cut_edges | frozenset(sub.incident(vmap[orig]))
            best = KCutSolution(value, Partition(blocks), cut, "branch")
    tree_best = _tree_stage(ctx, alive, sub, rev, k)
    if tree_best is not None and (best is None or tree_best.value < best.value):
        best = tree_best
    if best is None:
        raise Infeasible("no feasible %d-cut of %d vertices" % (k, n))
    return best


def _tree_stage(ctx, alive, sub, rev, k: int) -> Optional[KCutSolution]:
    cfg = ctx.config
    n = sub.n
    delta = sub.min_degree()
    lam = k * k * delta
    stage = sub
    kt_map = None
    at_top = alive == ctx.top_alive
    gate = delta > cfg.kt_constant * max(k * k * math.log(max(n, 2)), k ** 3)
    if gate and _is_simple(sub):
        ni = ni_sparsify(sub, max(lam, 1))
        stage = ni.subgraph
        kt = kt_sparsify(stage, KTParams(alpha=k * k))
        ctx.stats["sparsified_cells"] += 1
        if at_top:
            ctx.stats["ni_edges"] = ni.subgraph.m
            ctx.stats["kt_iterations"] = len(kt.iterations)
        stage = kt.contracted
        kt_map = kt.map
    if stage.n < max(k, 2) or stage.n > cfg.treecut_max_n:
        return None
    count = max(1, min(math.ceil(cfg.pack_constant * k ** 3 * math.log(max(stage.n, 2))),
                       cfg.pack_cap))
    pack = greedy_tree_packing(stage, count)
    ctx.stats["trees_packed"] += count
    best = None
    seen = set()
    for t in pack.trees:
        ids = t.edge_ids
        if ids in seen:
            continue
        seen.add(ids)
        if at_top and kt_map is None:
            ctx.stats["packed_trees"].append(tuple(sorted(ids)))
        trial = replace(cfg.trial, seed=_tree_seed(cfg.trial.seed, ids))
        sol = tree_cut(stage, t, lam, k, trial)
        ctx.stats["trees_evaluated"] += 1
        part_local = sol.partition
        if kt_map is not None:
            part_local = _expand_partition(part_local, kt_map, sub.n)
        value = cut_value(sub, part_local)
        if best is None or value < best[0]:
            best = (value, part_local)
    if best is None:
        return None
    value, part_local = best
    blocks = [sorted(rev[v] for v in b) for b in part_local.blocks]
    cut = cut_edge_set(sub, part_local)
    return KCutSolution(value, Partition(blocks), cut, "treecut")


def _fresh_stats(config: SolverConfig) -> dict:
    return {
        "mode": config.mode,
        "cells": 0,
        "sparsified_cells": 0,
        "trees_packed": 0,
        "trees_evaluated": 0,
        "ni_edges": None,
        "kt_iterations": None,
        "packed_trees": [],
        "oracle_value": None,
        "oracle_agrees": None,
        "tight_tree_found": None,
    }


def solve_with_stats(
    g: MultiGraph, k: int, config: Optional[SolverConfig] = None
) -> Tuple[KCutSolution, dict]:
    config = config or SolverConfig()
    stats = _fresh_stats(config)
    if g.n < 1 or k < 1 or k > g.n:
        raise Infeasible("cannot cut %d vertices into %d parts" % (g.n, k))
    if config.mode == "oracle_only":
        if g.n > config.oracle_fallback_max_n:
            raise BudgetExceeded("oracle mode capped at %d vertices"
                                 % config.oracle_fallback_max_n)
        sol = brute_min_kcut(g, k)
        stats["oracle_value"] = sol.value
        return sol, stats
    ctx = _Context(g, config, stats)
    sol = _solve(ctx, frozenset(g.vertices), k)
    assert sol.value == cut_value(g, sol.partition)
    if config.mode == "auto" and g.n <= config.oracle_fallback_max_n:
        oracle = brute_min_kcut(g, k)
        stats["oracle_value"] = oracle.value
        stats["oracle_agrees"] = sol.value == oracle.value
        tight = False
        for ids in stats["packed_trees"]:
            t = RootedTree.from_edge_ids(g, ids)
            if is_tight(t, oracle.partition):
                tight = True
                break
        stats["tight_tree_found"] = tight
    return sol, stats


def min_kcut(g: MultiGraph, k: int, config: Optional[SolverConfig] = None) -> KCutSolution:
    """Minimum k-cut of g; see SolverConfig for mode and budget switches."""
    sol, _ = solve_with_stats(g, k, config)
    return sol
