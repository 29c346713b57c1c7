"""Rooted spanning trees, precedence queries, and heavy-light decomposition.

Precedence ("u precedes v" when v lies in u's subtree) is the partial order
the cutting machinery constantly queries, so it is answered in O(1) from
preorder intervals.  All traversals are iterative; trees may be deep paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .graph import MultiGraph, Partition


class RootedTree:
    """A spanning tree over vertices 0..n-1 rooted at `root`."""

    def __init__(self, n: int, root: int, edges: Iterable[Tuple[int, int, int]]):
        if not 0 <= root < n:
            raise ValueError("root %d outside vertex range" % root)
        adj: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
        ids = set()
        count = 0
        for eid, u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise ValueError("bad tree edge %r" % ((eid, u, v),))
            if eid in ids:
                raise ValueError("duplicate tree edge id %d" % eid)
            ids.add(eid)
            adj[u].append((v, eid))
            adj[v].append((u, eid))
            count += 1
        if count != n - 1:
            raise ValueError("tree needs %d edges, got %d" % (n - 1, count))
        self.n = n
        self.root = root
        parent: List[Optional[int]] = [None] * n
        parent_edge: List[Optional[int]] = [None] * n
        depth = [0] * n
        seen = [False] * n
        seen[root] = True
        stack = [root]
        reached = 0
        while stack:
            x = stack.pop()
            reached += 1
            for y, eid in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    parent_edge[y] = eid
                    depth[y] = depth[x] + 1
                    stack.append(y)
        if reached != n:
            raise ValueError("edges do not connect all %d vertices" % n)
        self._parent = tuple(parent)
        self._parent_edge = tuple(parent_edge)
        self.depth = tuple(depth)
        children: List[List[int]] = [[] for _ in range(n)]
        for v in range(n):
            if parent[v] is not None:
                children[parent[v]].append(v)
        self._children = tuple(tuple(sorted(c)) for c in children)
        # preorder with ascending-id child visits, then subtree sizes bottom-up
        order: List[int] = []
        stack = [root]
        while stack:
            x = stack.pop()
            order.append(x)
            for c in reversed(self._children[x]):
                stack.append(c)
        self.order = tuple(order)
        tin = [0] * n
        for i, v in enumerate(order):
            tin[v] = i
        size = [1] * n
        for v in reversed(order):
            p = parent[v]
            if p is not None:
                size[p] += size[v]
        self._tin = tuple(tin)
        self._size = tuple(size)
        self.edge_ids: FrozenSet[int] = frozenset(ids)

    @classmethod
    def from_edge_ids(cls, g: MultiGraph, ids: Iterable[int], root: int = 0) -> "RootedTree":
        return cls(g.n, root, [(e, *g.endpoints(e)) for e in ids])

    @classmethod
    def bfs_spanning(cls, g: MultiGraph, root: int = 0) -> "RootedTree":
        """Breadth-first spanning tree, lowest edge id wins at each vertex."""
        from collections import deque

        seen = [False] * g.n
        seen[root] = True
        q = deque([root])
        edges = []
        while q:
            x = q.popleft()
            for eid in g.incident(x):
                y = g.other(eid, x)
                if not seen[y]:
                    seen[y] = True
                    edges.append((eid, x, y))
                    q.append(y)
        return cls(g.n, root, edges)

    def parent(self, v: int) -> Optional[int]:
        return self._parent[v]

    def parent_edge(self, v: int) -> Optional[int]:
        return self._parent_edge[v]

    def children(self, v: int) -> Tuple[int, ...]:
        return self._children[v]

    def is_leaf(self, v: int) -> bool:
        return not self._children[v]

    def subtree_size(self, v: int) -> int:
        return self._size[v]

    def precedes(self, u: int, v: int) -> bool:
        """True when v lies in u's subtree (u == v included)."""
        return self._tin[u] <= self._tin[v] < self._tin[u] + self._size[u]

    def incomparable(self, u: int, v: int) -> bool:
        return not self.precedes(u, v) and not self.precedes(v, u)

    def subtree(self, v: int) -> Tuple[int, ...]:
        """Vertices of T(v) in preorder."""
        i = self._tin[v]
        return self.order[i:i + self._size[v]]

    def edges(self) -> List[Tuple[int, int, int]]:
        """(edge id, parent, child) for every tree edge, by child preorder."""
        return [(self._parent_edge[v], self._parent[v], v)
                for v in self.order if v != self.root]

    def root_path(self, v: int) -> List[int]:
        """Vertices from v up to and including the root."""
        path = [v]
        while path[-1] != self.root:
            path.append(self._parent[path[-1]])
        return path

    def minimal_elements(self, vertices: Iterable[int]) -> FrozenSet[int]:
        """Subset whose subtrees cover the input: drop anything preceded."""
        vs = sorted(set(vertices), key=lambda v: self.depth[v])
        keep: List[int] = []
        for v in vs:
            if not any(self.precedes(u, v) for u in keep):
                keep.append(v)
        return frozenset(keep)

    def __repr__(self):
        return "RootedTree(n=%d, root=%d)" % (self.n, self.root)


def forest_components(t: RootedTree, deleted: Iterable[int]) -> Partition:
    """Vertex partition after deleting the given tree edges from t."""
    gone = set(deleted)
    if not gone <= t.edge_ids:
        raise ValueError("deletion includes a non-tree edge")
    head = list(range(t.n))

    def find(x):
        while head[x] != x:
            head[x] = head[head[x]]
            x = head[x]
        return x

    for eid, p, c in t.edges():
        if eid not in gone:
            a, b = find(p), find(c)
            if a != b:
                head[max(a, b)] = min(a, b)
    blocks: Dict[int, List[int]] = {}
    for v in range(t.n):
        blocks.setdefault(find(v), []).append(v)
    return Partition(blocks.values())


@dataclass(frozen=True)
class HLD:
    """Heavy-light decomposition: tree edges partitioned into branches.

    A branch is a downward path; its top vertex is the parent of `subroot`,
    and every edge below continues through heavy children (largest subtree,
    ties to the smallest id).  Any leaf-root path meets at most
    ceil(log2 n) + 1 branches.
    """

    branch_id: Dict[int, int]
    branch_vertices: Tuple[Tuple[int, ...], ...]
    subroot: Tuple[int, ...]

    @property
    def branch_count(self) -> int:
        return len(self.subroot)

    def branch_edges(self, b: int) -> List[int]:
        return sorted(e for e, i in self.branch_id.items() if i == b)

    def branches_on_root_path(self, t: RootedTree, v: int) -> int:
        """How many distinct branches the v-to-root path touches."""
        seen = set()
        while v != t.root:
            seen.add(self.branch_id[t.parent_edge(v)])
            v = t.parent(v)
        return len(seen)


def build_hld(t: RootedTree) -> HLD:
    heavy: List[Optional[int]] = [None] * t.n
    for v in range(t.n):
        kids = t.children(v)
        if kids:
            heavy[v] = max(kids, key=lambda c: (t.subtree_size(c), -c))
    # A branch starts at every non-heavy child, and at the root's heavy
    # child (the root has no edge above for it to extend).
    heads = [v for v in t.order
             if v != t.root and (heavy[t.parent(v)] != v or t.parent(v) == t.root)]
    branch_id: Dict[int, int] = {}
    branch_vertices = []
    subroots = []
    for b, head in enumerate(heads):
        verts = [t.parent(head), head]
        branch_id[t.parent_edge(head)] = b
        x = head
        while heavy[x] is not None:
            x = heavy[x]
            verts.append(x)
            branch_id[t.parent_edge(x)] = b
        branch_vertices.append(tuple(verts))
        subroots.append(head)
    return HLD(branch_id, tuple(branch_vertices), tuple(subroots))
