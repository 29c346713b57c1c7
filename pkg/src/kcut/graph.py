"""Unweighted multigraphs with stable edge identifiers.

Vertices are dense integers 0..n-1.  Edges are individual records (parallel
edges are distinct records) and keep their identifiers through contraction,
so a cut found in a contracted graph can be named in the original one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple


@dataclass(frozen=True)
class EdgeRecord:
    """One edge occurrence; endpoints are an unordered pair."""

    id: int
    u: int
    v: int


class MultiGraph:
    """Immutable multigraph; build once, derive new graphs by contraction."""

    def __init__(self, n: int, edges: Iterable[Tuple[int, int, int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        ends: Dict[int, Tuple[int, int]] = {}
        adj: List[List[int]] = [[] for _ in range(n)]
        for eid, u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("edge %r has an unknown endpoint" % ((eid, u, v),))
            if u == v:
                raise ValueError("self-loop on vertex %d" % u)
            if eid in ends:
                raise ValueError("duplicate edge id %d" % eid)
            ends[eid] = (u, v)
            adj[u].append(eid)
            adj[v].append(eid)
        self._ends = ends
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._ids = tuple(sorted(ends))

    @classmethod
    def from_edge_list(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> "MultiGraph":
        """Build with edge ids assigned 0,1,... in list order."""
        return cls(n, [(i, u, v) for i, (u, v) in enumerate(pairs)])

    @property
    def m(self) -> int:
        return len(self._ends)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def edge_ids(self) -> Tuple[int, ...]:
        return self._ids

    def endpoints(self, eid: int) -> Tuple[int, int]:
        return self._ends[eid]

    def edges(self) -> List[EdgeRecord]:
        return [EdgeRecord(eid, *self._ends[eid]) for eid in self._ids]

    def incident(self, v: int) -> Tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def min_degree(self) -> int:
        if self.n == 0:
            raise ValueError("empty graph has no minimum degree")
        return min(len(a) for a in self._adj)

    def other(self, eid: int, v: int) -> int:
        u, w = self._ends[eid]
        return w if v == u else u

    def neighbors(self, v: int) -> List[int]:
        return sorted({self.other(e, v) for e in self._adj[v]})

    def __eq__(self, g) -> bool:
        return isinstance(g, MultiGraph) and self.n == g.n and self._ends == g._ends

    def __hash__(self):
        return hash((self.n, tuple(sorted(self._ends.items()))))

    def __repr__(self):
        return "MultiGraph(n=%d, m=%d)" % (self.n, self.m)


@dataclass(frozen=True)
class ContractionMap:
    """Image of every pre-contraction vertex; composes left to right."""

    mapping: Tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "ContractionMap":
        return cls(tuple(range(n)))

    def apply(self, v: int) -> int:
        return self.mapping[v]

    def compose(self, later: "ContractionMap") -> "ContractionMap":
        """Map through self, then through later."""
        return ContractionMap(tuple(later.mapping[x] for x in self.mapping))


class Partition:
    """Blocks of a vertex set, normalized so iteration order is deterministic."""

    def __init__(self, blocks: Iterable[Iterable[int]]):
        bs = [frozenset(b) for b in blocks]
        if any(not b for b in bs):
            raise ValueError("empty block")
        self.blocks: Tuple[FrozenSet[int], ...] = tuple(sorted(bs, key=min))

    @property
    def k(self) -> int:
        return len(self.blocks)

    def block_index(self) -> Dict[int, int]:
        idx = {}
        for i, b in enumerate(self.blocks):
            for v in b:
                if v in idx:
                    raise ValueError("vertex %d appears in two blocks" % v)
                idx[v] = i
        return idx

    def __eq__(self, p) -> bool:
        return isinstance(p, Partition) and self.blocks == p.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return "Partition(%s)" % (sorted(sorted(b) for b in self.blocks),)


@dataclass(frozen=True)
class KCutSolution:
    """A feasible k-cut: its value, blocks, cut edge ids, and producing stage."""

    value: int
    partition: Partition
    cut_edges: FrozenSet[int]
    provenance: str


def cut_value(g: MultiGraph, partition: Partition) -> int:
    """Number of edges whose endpoints lie in different blocks."""
    idx = partition.block_index()
    if len(idx) != g.n or any(v not in idx for v in g.vertices):
        raise ValueError("partition does not cover the vertex set exactly")
    return sum(1 for u, v in (g.endpoints(e) for e in g.edge_ids) if idx[u] != idx[v])


def cut_edge_set(g: MultiGraph, partition: Partition) -> FrozenSet[int]:
    """Edge ids crossing the partition."""
    idx = partition.block_index()
    return frozenset(e for e in g.edge_ids if idx[g.endpoints(e)[0]] != idx[g.endpoints(e)[1]])


def boundary(g: MultiGraph, sets: Iterable[Iterable[int]]) -> FrozenSet[int]:
    """Edge ids with an endpoint in some S_i but not both endpoints in the same S_i."""
    where: Dict[int, int] = {}
    for i, s in enumerate(sets):
        for v in s:
            if v in where:
                raise ValueError("sets overlap at vertex %d" % v)
            if not 0 <= v < g.n:
                raise ValueError("unknown vertex %d" % v)
            where[v] = i
    out = set()
    for e in g.edge_ids:
        u, v = g.endpoints(e)
        iu, iv = where.get(u), where.get(v)
        if (iu is not None or iv is not None) and iu != iv:
            out.add(e)
    return frozenset(out)


def contract(g: MultiGraph, u: int, v: int) -> Tuple[MultiGraph, ContractionMap]:
    """Merge u and v; edges between them vanish, all other ids survive."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError("unknown vertex in contraction (%d, %d)" % (u, v))
    if u == v:
        raise ValueError("cannot contract a vertex with itself")
    lo, hi = min(u, v), max(u, v)
    mapping = tuple(lo if w == hi else (w if w < hi else w - 1) for w in g.vertices)
    edges = []
    for e in g.edge_ids:
        a, b = g.endpoints(e)
        na, nb = mapping[a], mapping[b]
        if na != nb:
            edges.append((e, na, nb))
    return MultiGraph(g.n - 1, edges), ContractionMap(mapping)


def contract_set(g: MultiGraph, block: Iterable[int]) -> Tuple[MultiGraph, ContractionMap]:
    """Contract a whole vertex set to one supervertex."""
    todo = sorted(set(block))
    if not todo:
        raise ValueError("cannot contract an empty set")
    cur, cmap = g, ContractionMap.identity(g.n)
    anchor = todo[0]
    for w in todo[1:]:
        cur, step = contract(cur, cmap.apply(anchor), cmap.apply(w))
        cmap = cmap.compose(step)
    return cur, cmap


def induced_subgraph(g: MultiGraph, keep: Iterable[int]) -> Tuple[MultiGraph, Dict[int, int]]:
    """Subgraph on `keep`, re-indexed dense; returns the old->new vertex map."""
    kept = sorted(set(keep))
    if any(not 0 <= v < g.n for v in kept):
        raise ValueError("unknown vertex in subgraph request")
    new = {v: i for i, v in enumerate(kept)}
    edges = []
    for e in g.edge_ids:
        a, b = g.endpoints(e)
        if a in new and b in new:
            edges.append((e, new[a], new[b]))
    return MultiGraph(len(kept), edges), new


def connected_components(g: MultiGraph) -> Partition:
    """Vertex partition into connected components."""
    if g.n == 0:
        raise ValueError("empty graph has no component structure")
    seen = [False] * g.n
    blocks = []
    for s in g.vertices:
        if seen[s]:
            continue
        comp, q = [], deque([s])
        seen[s] = True
        while q:
            x = q.popleft()
            comp.append(x)
            for e in g.incident(x):
                y = g.other(e, x)
                if not seen[y]:
                    seen[y] = True
                    q.append(y)
        blocks.append(comp)
    return Partition(blocks)


def min_st_cut(g: MultiGraph, s: int, t: int) -> Tuple[int, FrozenSet[int]]:
    """Minimum number of edges separating s from t, with the s-side set.

    Unit capacity per edge record, so parallel edges add up.  BFS augmenting
    paths; fine at the sizes this library certifies.
    """
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ValueError("unknown endpoint for s-t cut")
    if s == t:
        raise ValueError("s and t must differ")
    cap: List[Dict[int, int]] = [dict() for _ in range(g.n)]
    for e in g.edge_ids:
        u, v = g.endpoints(e)
        cap[u][v] = cap[u].get(v, 0) + 1
        cap[v][u] = cap[v].get(u, 0) + 1
    flow = 0
    while True:
        parent = {s: s}
        q = deque([s])
        while q and t not in parent:
            x = q.popleft()
            for y in sorted(cap[x]):
                if cap[x][y] > 0 and y not in parent:
                    parent[y] = x
                    q.append(y)
        if t not in parent:
            break
        push = None
        y = t
        while y != s:
            x = parent[y]
            push = cap[x][y] if push is None else min(push, cap[x][y])
            y = x
        y = t
        while y != s:
            x = parent[y]
            cap[x][y] -= push
            cap[y][x] = cap[y].get(x, 0) + push
            y = x
        flow += push
    side = {s}
    q = deque([s])
    while q:
        x = q.popleft()
        for y, c in cap[x].items():
            if c > 0 and y not in side:
                side.add(y)
                q.append(y)
    return flow, frozenset(side)
