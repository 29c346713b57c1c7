"""Small graph constructions shared across the test modules."""

import random

from kcut.graph import MultiGraph


def from_pairs(n, pairs):
    return MultiGraph.from_edge_list(n, pairs)


def path_graph(n):
    return from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return from_pairs(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(n):
    """Center 0 joined to 1..n-1."""
    return from_pairs(n, [(0, i) for i in range(1, n)])


def random_simple_graph(rng: random.Random, n, p):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return from_pairs(n, pairs)


def random_connected_graph(rng: random.Random, n, extra):
    """Random spanning tree plus `extra` distinct chords."""
    pairs = []
    for v in range(1, n):
        pairs.append((rng.randrange(v), v))
    pool = [(i, j) for i in range(n) for j in range(i + 1, n)
            if (i, j) not in pairs and (j, i) not in pairs]
    rng.shuffle(pool)
    pairs.extend(pool[:extra])
    return from_pairs(n, pairs)


def random_multigraph(rng: random.Random, n, m):
    """n vertices, m edges sampled with replacement (parallels likely)."""
    pairs = []
    while len(pairs) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            pairs.append((u, v))
    return from_pairs(n, pairs)
