"""Finding the best k-1 tree edges to delete, by color coding.

Given a spanning tree, the k-cut problem restricted to tree-edge deletions
is attacked bottom-up: for every subtree and every part count, a state
records the cheapest way to split that subtree, certified by an explicit
deletion set.  Randomized trials (edge coloring plus branch contraction)
propose candidate deletions through an ancestor-cut estimator and a
knapsack combiner; every proposal is re-scored against the real graph, so
stored values are always achievable and never below the true optimum of
the deletions they name.  Small subtrees skip the trial machinery and
enumerate deletions outright.
"""

from __future__ import annotations

import hashlib
import itertools
import math
import random
from collections import deque
from dataclasses import dataclass
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from .errors import Infeasible
from .graph import (
    ContractionMap,
    KCutSolution,
    MultiGraph,
    Partition,
    contract,
    cut_edge_set,
    cut_value,
    induced_subgraph,
)
from .tree import HLD, RootedTree, build_hld, forest_components

INF = math.inf
ROOT = -1  # stand-in endpoint for "kept with the root side" in the cut graph


@dataclass(frozen=True)
class TrialConfig:
    """Knobs for the randomized trials and their exhaustive replacements."""

    seed: int = 0
    trials: Union[int, str] = 16  # an integer, or "exhaustive"
    exhaustive_eprime_cap: int = 20
    exhaustive_branch_cap: int = 16
    r_cap: Optional[int] = None  # None: only the budget itself limits selections
    rank_preprocess: bool = False
    sweep_max_edges: int = 12  # subtrees this small enumerate deletions exactly

    @property
    def exhaustive(self) -> bool:
        return self.trials == "exhaustive"

    def trial_count(self, k: int, lam: int, n: int) -> int:
        # the analysis asks for 4^k * lam^k * ln(n+1) repetitions; cap at the
        # configured budget (exhaustive mode over the caps samples a fixed 64)
        cap = 64 if self.exhaustive else int(self.trials)
        want = math.ceil(4 ** k * max(lam, 1) ** k * math.log(n + 1))
        return max(1, min(want, cap))


def derived_rng(seed: int, *key) -> random.Random:
    """Seeded stream independent of interpreter hash randomization."""
    digest = hashlib.blake2b(repr((seed,) + key).encode(), digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


@dataclass(frozen=True)
class Coloring:
    """Red/green labels over the incomparable-endpoint edge set."""

    domain: FrozenSet[int]
    green: FrozenSet[int]

    def is_green(self, eid: int) -> bool:
        return eid in self.green


def color_trial(eprime: Iterable[int], lam: int, rng: random.Random) -> Coloring:
    """Each edge green with probability 1/lam (lam=1 turns everything green)."""
    if lam < 1:
        raise ValueError("lam must be at least 1")
    dom = frozenset(eprime)
    green = frozenset(e for e in sorted(dom) if rng.random() < 1.0 / lam)
    return Coloring(dom, green)


def all_colorings(eprime: Iterable[int]) -> Iterator[Coloring]:
    """Every red/green assignment, smallest green sets first."""
    dom = frozenset(eprime)
    ids = sorted(dom)
    for size in range(len(ids) + 1):
        for combo in itertools.combinations(ids, size):
            yield Coloring(dom, frozenset(combo))


def contract_branches(
    t: RootedTree, hld: HLD, chosen: Iterable[int]
) -> Tuple[RootedTree, ContractionMap]:
    """Contract every edge of the chosen branches; the root survives."""
    picked = set(chosen)
    head = list(range(t.n))

    def find(x):
        while head[x] != x:
            head[x] = head[head[x]]
            x = head[x]
        return x

    ends = {eid: (p, c) for eid, p, c in t.edges()}
    for eid, bid in hld.branch_id.items():
        if bid in picked:
            u, v = ends[eid]
            a, b = find(u), find(v)
            if a != b:
                head[max(a, b)] = min(a, b)
    reps = sorted({find(v) for v in range(t.n)})
    index = {r: i for i, r in enumerate(reps)}
    mapping = tuple(index[find(v)] for v in range(t.n))
    cmap = ContractionMap(mapping)
    edges = []
    for eid, p, c in t.edges():
        a, b = mapping[p], mapping[c]
        if a != b:
            edges.append((eid, a, b))
    tprime = RootedTree(len(reps), mapping[t.root], edges)
    return tprime, cmap


def branch_contraction_trial(
    t: RootedTree, hld: HLD, rng: random.Random
) -> Tuple[RootedTree, ContractionMap]:
    """Contract each branch independently with probability 1/ceil(log2 n)."""
    if t.n < 2:
        raise ValueError("need at least one edge to contract branches")
    prob = 1.0 / max(1, math.ceil(math.log2(t.n)))
    chosen = [b for b in range(hld.branch_count) if rng.random() < prob]
    return contract_branches(t, hld, chosen)


def branch_patterns(hld: HLD, max_size: int) -> Iterator[Tuple[int, ...]]:
    """Deterministic family of contraction subsets: nothing, then small sets."""
    for size in range(min(max_size, hld.branch_count) + 1):
        yield from itertools.combinations(range(hld.branch_count), size)


@dataclass(frozen=True)
class CandidateSet:
    """A green-connected group of root children with its minimal elements."""

    members: Tuple[int, ...]
    minelts: FrozenSet[int]
    green_edges: FrozenSet[int]


@dataclass(frozen=True)
class GPrime:
    """Auxiliary cut graph for one candidate, plus the always-cut count.

    Edges live on the candidate's original vertices with ROOT standing in
    for anything kept on the root side.
    """

    edges: Tuple[Tuple[int, int], ...]
    bcount: int


@dataclass(frozen=True)
class TrialSetting:
    """One node's graph/tree context under one coloring and contraction."""

    g: MultiGraph          # graph induced on the node's subtree (local ids)
    t: RootedTree          # the subtree itself, rooted at the node
    tprime: RootedTree     # after branch contraction
    tmap: ContractionMap   # t vertices -> tprime vertices
    coloring: Coloring
    eprime: FrozenSet[int]

    def image(self, v: int) -> int:
        return self.tmap.apply(v)

    def expand(self, w: int) -> FrozenSet[int]:
        """Original (local) vertices whose image lies in the tprime subtree of w."""
        inside = set(self.tprime.subtree(w))
        return frozenset(v for v in self.t.order if self.tmap.apply(v) in inside)

    def top_of(self, w: int) -> int:
        """Shallowest original vertex merged into the tprime vertex w."""
        members = [v for v in self.t.order if self.tmap.apply(v) == w]
        return min(members, key=lambda v: self.t.depth[v])


def incomparable_edges(g: MultiGraph, t: RootedTree, hld: HLD) -> FrozenSet[int]:
    """Edges whose endpoints' branch subroots are incomparable.

    These are the only edges a coloring acts on: an edge inside a single
    root path can never cross two sibling subtrees.
    """
    sub = {}
    for v in t.order:
        e = t.parent_edge(v)
        if e is not None:
            sub[v] = hld.subroot[hld.branch_id[e]]
    out = set()
    for e in g.edge_ids:
        a, b = g.endpoints(e)
        if a == t.root or b == t.root:
            continue
        sa, sb = sub[a], sub[b]
        if sa != sb and t.incomparable(sa, sb):
            out.add(e)
    return frozenset(out)


def group_components(
    children: Sequence[int], coloring: Coloring, setting: TrialSetting
) -> List[CandidateSet]:
    """Green-connect the root's children; one candidate per component.

    Minimal elements are the contracted images of green endpoints, reduced
    to the shallowest representatives inside each component's subtrees.
    """
    tp = setting.tprime
    owner: Dict[int, int] = {}
    for c in children:
        for w in tp.subtree(c):
            owner[w] = c
    head = {c: c for c in children}

    def find(c):
        while head[c] != c:
            head[c] = head[head[c]]
            c = head[c]
        return c

    touch: Dict[int, List[int]] = {c: [] for c in children}
    points: Dict[int, List[int]] = {c: [] for c in children}
    for e in sorted(coloring.green):
        a, b = setting.g.endpoints(e)
        ia, ib = setting.image(a), setting.image(b)
        ca, cb = owner.get(ia), owner.get(ib)
        if ca is not None:
            touch[ca].append(e)
            points[ca].append(ia)
        if cb is not None:
            touch[cb].append(e)
            points[cb].append(ib)
        if ca is not None and cb is not None and ca != cb:
            ra, rb = find(ca), find(cb)
            if ra != rb:
                head[max(ra, rb)] = min(ra, rb)
    groups: Dict[int, List[int]] = {}
    for c in children:
        groups.setdefault(find(c), []).append(c)
    out = []
    for rep in sorted(groups):
        members = tuple(sorted(groups[rep]))
        greens: List[int] = []
        endpoints: List[int] = []
        for c in members:
            greens.extend(touch[c])
            endpoints.extend(points[c])
        minelts = tp.minimal_elements(endpoints)
        out.append(CandidateSet(members, minelts, frozenset(greens)))
    return out


def _classify(setting: TrialSetting, candidates: Sequence[CandidateSet]):
    """One pass over the node's edges: per-candidate cut graphs and counts.

    Rules, for an edge with at least one endpoint inside a candidate's
    subtrees: colored edges touching a minimal-element subtree are charged
    unconditionally; other colored edges split into independent root
    stubs; uncolored edges below one common minimal element can never be
    cut by an ancestor cut and vanish; everything else is kept with
    outside endpoints clamped to the root.
    """
    tp = setting.tprime
    cand_of: Dict[int, int] = {}
    for i, u in enumerate(candidates):
        for c in u.members:
            for w in tp.subtree(c):
                cand_of[w] = i
    under: Dict[int, FrozenSet[int]] = {}
    for i, u in enumerate(candidates):
        inside = set()
        for s in u.minelts:
            inside |= set(tp.subtree(s))
        under[i] = frozenset(inside)
    edges: List[List[Tuple[int, int]]] = [[] for _ in candidates]
    bcount = [0 for _ in candidates]
    for e in setting.g.edge_ids:
        a, b = setting.g.endpoints(e)
        ia, ib = setting.image(a), setting.image(b)
        ca = cand_of.get(ia)
        cb = cand_of.get(ib)
        if e in setting.eprime:
            per_cand: Dict[int, List[Tuple[int, int]]] = {}
            for end, cc, img in ((a, ca, ia), (b, cb, ib)):
                if cc is not None:
                    per_cand.setdefault(cc, []).append((end, img))
            for cc, ends in per_cand.items():
                if any(img in under[cc] for _, img in ends):
                    bcount[cc] += 1  # severed with its minimal element's subtree
                else:
                    for end, _ in ends:
                        edges[cc].append((end, ROOT))
        else:
            if ca is None and cb is None:
                continue
            cc = ca if ca is not None else cb
            if ca == cb:
                mins = {s for s in candidates[cc].minelts
                        if tp.precedes(s, ia) and tp.precedes(s, ib)}
                if mins:
                    continue  # both below one minimal element: internal forever
                edges[cc].append((a, b))
            else:
                inside_end = a if ca is not None else b
                edges[cc].append((inside_end, ROOT))
    return [GPrime(tuple(es), bc) for es, bc in zip(edges, bcount)]


def build_gprime(setting: TrialSetting, u: CandidateSet) -> GPrime:
    """Auxiliary cut graph for a single candidate."""
    return _classify(setting, [u])[0]


class StateTable:
    """(vertex, parts) -> cheapest split of that subtree, with its deletions."""

    def __init__(self):
        self._value: Dict[Tuple[int, int], float] = {}
        self._cert: Dict[Tuple[int, int], Optional[FrozenSet[int]]] = {}

    def set(self, x: int, parts: int, value, cert: Optional[FrozenSet[int]]):
        self._value[(x, parts)] = value
        self._cert[(x, parts)] = cert

    def value(self, x: int, parts: int) -> float:
        return self._value[(x, parts)]

    def cert(self, x: int, parts: int) -> Optional[FrozenSet[int]]:
        return self._cert[(x, parts)]

    def known(self, x: int, parts: int) -> bool:
        return (x, parts) in self._value

    def cells(self):
        return dict(self._value)


def _boundary_count(gp: GPrime, piece: Mapping[int, int]) -> int:
    """Edges of the cut graph whose endpoints land in different pieces."""
    total = 0
    for a, b in gp.edges:
        pa = piece.get(a, ROOT) if a != ROOT else ROOT
        pb = piece.get(b, ROOT) if b != ROOT else ROOT
        if pa != pb:
            total += 1
    return total


def _selection_pool(tp: RootedTree, member: int, minelts: Sequence[int]) -> List[int]:
    """Inclusive ancestors of each minimal element, up to the member itself."""
    pool = {member}
    for s in minelts:
        v = s
        while True:
            pool.add(v)
            if v == member:
                break
            v = tp.parent(v)
    return sorted(pool)


def _member_minelts(tp: RootedTree, member: int, u: CandidateSet) -> List[int]:
    return sorted(s for s in u.minelts if tp.precedes(member, s))


def _piece_labels(setting: TrialSetting, selection: Sequence[int]) -> Dict[int, int]:
    piece: Dict[int, int] = {}
    for idx, w in enumerate(selection):
        for v in setting.expand(w):
            piece[v] = idx
    return piece


def _member_table(
    setting: TrialSetting,
    member: int,
    u: CandidateSet,
    gp: GPrime,
    states: Optional[StateTable],
    rev: Optional[Sequence[int]],
    r_cap: int,
    max_budget: int,
) -> Dict[int, Tuple[float, FrozenSet[int]]]:
    """Cheapest handling of one member subtree per deletion budget.

    A selection severs incomparable tprime subtrees covering every minimal
    element; each selected subtree spends one deletion on its top edge and
    may split further through the state table.  Values pair the estimate
    with the explicit deletions behind it.
    """
    tp = setting.tprime
    mins = _member_minelts(tp, member, u)
    pool = _selection_pool(tp, member, mins)
    out: Dict[int, Tuple[float, FrozenSet[int]]] = {}
    top_r = min(len(pool), r_cap, max_budget)
    for r in range(1, top_r + 1):
        for sel in itertools.combinations(pool, r):
            if any(not tp.incomparable(a, b) for a, b in itertools.combinations(sel, 2)):
                continue
            if any(not any(tp.precedes(w, s) for w in sel) for s in mins):
                continue
            piece = _piece_labels(setting, sel)
            base = _boundary_count(gp, piece)
            tops = [setting.top_of(w) for w in sel]
            top_edges = [setting.t.parent_edge(v) for v in tops]
            # spend the remaining budget below the selected subtrees
            options: List[List[Tuple[int, float, Optional[FrozenSet[int]]]]] = []
            for v in tops:
                opts = [(1, 0.0, frozenset())]
                if states is not None:
                    orig = rev[v] if rev is not None else v
                    for spend in range(2, max_budget - r + 2):
                        if states.known(orig, spend) and states.value(orig, spend) < INF:
                            opts.append((spend, states.value(orig, spend),
                                         states.cert(orig, spend)))
                options.append(opts)
            combo: Dict[int, Tuple[float, FrozenSet[int]]] = {0: (0.0, frozenset())}
            for opts in options:
                nxt: Dict[int, Tuple[float, FrozenSet[int]]] = {}
                for spent, (val, cert) in combo.items():
                    for add, v2, c2 in opts:
                        tot = spent + add
                        if tot > max_budget:
                            continue
                        cand = (val + v2, cert | c2)
                        if tot not in nxt or cand[0] < nxt[tot][0]:
                            nxt[tot] = cand
                combo = nxt
            for spent, (val, cert) in combo.items():
                full = cert | frozenset(top_edges)
                score = base + val
                if spent not in out or score < out[spent][0]:
                    out[spent] = (score, full)
    return out


def eval_f(
    u: CandidateSet, gp: GPrime, setting: TrialSetting
) -> Tuple[float, FrozenSet[int]]:
    """Restricted ancestor-cut estimate: one severing vertex per member.

    Returns the estimate and the tree edges it would delete; the estimate
    never undershoots the true minimum ancestor cut.
    """
    total: float = gp.bcount
    cert: FrozenSet[int] = frozenset()
    for member in u.members:
        table = _member_table(setting, member, u, gp, None, None, 1, 1)
        if 1 not in table:
            return INF, frozenset()
        val, part = table[1]
        total += val
        cert |= part
    return total, cert


def eval_f_p(
    u: CandidateSet,
    p: int,
    gp: GPrime,
    setting: TrialSetting,
    states: StateTable,
    rev: Sequence[int],
    r_cap: int,
) -> Tuple[float, FrozenSet[int]]:
    """General estimate with a deletion budget of p across the members.

    Every member takes at least one deletion; leftover budget buys deeper
    splits through the state table.  Feasible results come with the exact
    deletion set they stand for.
    """
    if p < len(u.members):
        return INF, frozenset()
    tables = []
    for member in u.members:
        table = _member_table(setting, member, u, gp, states, rev, r_cap, p)
        if not table:
            return INF, frozenset()
        tables.append(table)
    combo: Dict[int, Tuple[float, FrozenSet[int]]] = {0: (0.0, frozenset())}
    for table in tables:
        nxt: Dict[int, Tuple[float, FrozenSet[int]]] = {}
        for spent, (val, cert) in combo.items():
            for d, (v2, c2) in table.items():
                tot = spent + d
                if tot > p:
                    continue
                cand = (val + v2, cert | c2)
                if tot not in nxt or cand[0] < nxt[tot][0]:
                    nxt[tot] = cand
        combo = nxt
    if p not in combo:
        return INF, frozenset()
    val, cert = combo[p]
    return gp.bcount + val, cert


def knapsack_combine(
    items: Sequence[Mapping[int, float]], target: int
):
    """Pick disjoint (candidate, budget) pairs whose budgets sum to target.

    Returns (value, selection); value is infinity when no combination
    fits.  Ties prefer the lexicographically smallest selection.
    """
    best: Dict[int, Tuple[float, Tuple[Tuple[int, int], ...]]] = {0: (0.0, ())}
    for i, table in enumerate(items):
        nxt = dict(best)
        for spent, (val, sel) in best.items():
            for b in sorted(table):
                cost = table[b]
                if cost == INF:
                    continue
                tot = spent + b
                if tot > target:
                    continue
                cand = (val + cost, sel + ((i, b),))
                cur = nxt.get(tot)
                if cur is None or cand < cur:
                    nxt[tot] = cand
        best = nxt
    if target not in best:
        return INF, ()
    return best[target]


def _subtree_instance(g: MultiGraph, t: RootedTree, x: int):
    """Induced graph and re-rooted tree for T(x), in local indices."""
    verts = t.subtree(x)
    sub, vmap = induced_subgraph(g, verts)
    edges = [(t.parent_edge(w), vmap[t.parent(w)], vmap[w]) for w in verts if w != x]
    local_t = RootedTree(len(verts), vmap[x], edges)
    rev = [0] * len(verts)
    for orig, local in vmap.items():
        rev[local] = orig
    return sub, local_t, rev


def _score_deletion(sub: MultiGraph, local_t: RootedTree, ids: Iterable[int]) -> int:
    return cut_value(sub, forest_components(local_t, ids))


def _sweep_cell(sub: MultiGraph, local_t: RootedTree, parts: int):
    """Exact: try every deletion of parts-1 tree edges."""
    ids = sorted(local_t.edge_ids)
    best = None
    for combo in itertools.combinations(ids, parts - 1):
        value = _score_deletion(sub, local_t, combo)
        if best is None or value < best[0]:
            best = (value, frozenset(combo))
    return best


def _cell_trials(
    sub: MultiGraph,
    local_t: RootedTree,
    rev: Sequence[int],
    parts: int,
    k: int,
    lam: int,
    states: StateTable,
    config: TrialConfig,
    node_key,
):
    """Randomized or family-enumerated trials for one (subtree, parts) cell."""
    hld = build_hld(local_t)
    eprime = incomparable_edges(sub, local_t, hld)
    target = parts - 1
    r_cap = config.r_cap if config.r_cap is not None else k
    trials: List[Tuple[Coloring, Tuple[int, ...]]] = []
    empty = Coloring(eprime, frozenset())
    trials.append((empty, ()))
    if config.exhaustive and len(eprime) <= config.exhaustive_eprime_cap \
            and hld.branch_count <= config.exhaustive_branch_cap:
        greens = [frozenset(c) for size in range(1, target + 1)
                  for c in itertools.combinations(sorted(eprime), size)]
        patterns = list(branch_patterns(hld, target))
        for green in greens:
            for pat in patterns:
                trials.append((Coloring(eprime, green), pat))
        for pat in patterns[1:]:
            trials.append((empty, pat))
    else:
        count = config.trial_count(k, lam, local_t.n)
        for i in range(count):
            rng = derived_rng(config.seed, node_key, parts, i)
            coloring = color_trial(eprime, lam, rng)
            prob = 1.0 / max(1, math.ceil(math.log2(max(local_t.n, 2))))
            pat = tuple(b for b in range(hld.branch_count) if rng.random() < prob)
            trials.append((coloring, pat))
    if len(trials) > 20000:
        trials = trials[:20000]
    best = None
    seen_settings = set()
    for coloring, pattern in trials:
        key = (coloring.green, pattern)
        if key in seen_settings:
            continue
        seen_settings.add(key)
        tprime, tmap = contract_branches(local_t, hld, pattern)
        if tprime.n < 2:
            continue
        setting = TrialSetting(sub, local_t, tprime, tmap, coloring, eprime)
        children = list(tprime.children(tprime.root))
        candidates = group_components(children, coloring, setting)
        gps = _classify(setting, candidates)
        tables = []
        recons: List[Dict[int, FrozenSet[int]]] = []
        for u, gp in zip(candidates, gps):
            table: Dict[int, float] = {}
            recon: Dict[int, FrozenSet[int]] = {}
            for b in range(1, target + 1):
                val, cert = eval_f_p(u, b, gp, setting, states, rev, r_cap)
                if val < INF:
                    table[b] = val
                    recon[b] = cert
            tables.append(table)
            recons.append(recon)
        value, sel = knapsack_combine(tables, target)
        if value == INF:
            continue
        cert: FrozenSet[int] = frozenset()
        for i, b in sel:
            cert |= recons[i][b]
        if len(cert) != target:
            continue  # overlapping proposals cannot certify this cell
        true_value = _score_deletion(sub, local_t, cert)
        if best is None or true_value < best[0]:
            best = (true_value, cert)
    return best


def fill_states(
    g: MultiGraph, t: RootedTree, k: int, lam: int, config: TrialConfig
) -> StateTable:
    """Bottom-up table over all subtrees and part counts up to k.

    Cells are exact whenever the subtree is small enough to sweep; larger
    cells hold the best certified trial outcome, so every finite value is
    the true cost of the deletions recorded for it.
    """
    states = StateTable()
    for x in reversed(t.order):
        size = t.subtree_size(x)
        edges_avail = size - 1
        states.set(x, 0, 0, frozenset())
        if k >= 1:
            states.set(x, 1, 0, frozenset())
        sub = local_t = rev = None
        for parts in range(2, k + 1):
            if edges_avail < parts - 1:
                states.set(x, parts, INF, None)
                continue
            if sub is None:
                sub, local_t, rev = _subtree_instance(g, t, x)
            if edges_avail <= config.sweep_max_edges:
                value, cert = _sweep_cell(sub, local_t, parts)
            else:
                hit = _cell_trials(sub, local_t, rev, parts, k, lam, states, config, x)
                if hit is None:
                    value, cert = INF, None
                else:
                    value, cert = hit
            states.set(x, parts, value, cert)
    return states


def contract_safe_edges(
    g: MultiGraph, t: RootedTree, lam: int
) -> Tuple[MultiGraph, RootedTree, ContractionMap]:
    """Contract tree edges no small cut can cross.

    If the cheapest way to separate a tree edge's endpoints costs more
    than lam, no k-cut of value at most lam separates them either, so the
    edge can be contracted in both the graph and the tree.  Repeats until
    every surviving tree edge is separable within budget.
    """
    cur_g, cur_t = g, t
    cmap = ContractionMap.identity(g.n)
    changed = True
    while changed:
        changed = False
        for eid in sorted(cur_t.edge_ids):
            u, v = cur_g.endpoints(eid)
            if min(cur_g.degree(u), cur_g.degree(v)) <= lam:
                continue  # the cheap side already separates within budget
            if not _st_cut_exceeds(cur_g, u, v, lam):
                continue
            new_g, step = contract(cur_g, u, v)
            edges = [(e2, step.apply(a), step.apply(b))
                     for e2, a, b in cur_t.edges() if e2 != eid]
            cur_t = RootedTree(new_g.n, step.apply(cur_t.root), edges)
            cur_g = new_g
            cmap = cmap.compose(step)
            changed = True
            break
    return cur_g, cur_t, cmap


def _st_cut_exceeds(g: MultiGraph, s: int, tt: int, lam: int) -> bool:
    """True when more than lam edges are needed to separate s from tt."""
    # quick lower bound: parallel edges plus single-hop bridges
    direct = sum(1 for e in g.incident(s) if g.other(e, s) == tt)
    if direct > lam:
        return True
    ns: Dict[int, int] = {}
    for e in g.incident(s):
        w = g.other(e, s)
        ns[w] = ns.get(w, 0) + 1
    bound = direct
    for e in g.incident(tt):
        w = g.other(e, tt)
        if w in ns and w != s:
            bound += min(1, ns[w])
            ns[w] = 0
    if bound > lam:
        return True
    flow, _ = _capped_flow(g, s, tt, lam + 1)
    return flow > lam


def _capped_flow(g: MultiGraph, s: int, t: int, cap: int) -> Tuple[int, None]:
    res: List[Dict[int, int]] = [dict() for _ in range(g.n)]
    for e in g.edge_ids:
        u, v = g.endpoints(e)
        res[u][v] = res[u].get(v, 0) + 1
        res[v][u] = res[v].get(u, 0) + 1
    flow = 0
    while flow < cap:
        parent = {s: s}
        q = deque([s])
        while q and t not in parent:
            x = q.popleft()
            for y in res[x]:
                if res[x][y] > 0 and y not in parent:
                    parent[y] = x
                    if y == t:
                        break
                    q.append(y)
        if t not in parent:
            break
        push = None
        y = t
        while y != s:
            x = parent[y]
            push = res[x][y] if push is None else min(push, res[x][y])
            y = x
        y = t
        while y != s:
            x = parent[y]
            res[x][y] -= push
            res[y][x] = res[y].get(x, 0) + push
            y = x
        flow += push
    return flow, None


def rank_preprocess(
    t: RootedTree, hld: HLD, config: TrialConfig, rng: random.Random, k: int = 2
):
    """Guess vertices whose root paths the optimum keeps intact, and contract them.

    Only meaningful for large k; with k <= 4 the repetition formula
    degenerates, so the tree passes through untouched.
    """
    identity = ContractionMap.identity(t.n)
    candidates = [((), t, identity)]
    if k <= 4 or not config.rank_preprocess:
        return candidates
    denom = math.log2(math.sqrt(k)) - 1
    reps = max(1, math.ceil(k / denom))
    if config.exhaustive and t.n <= 8:
        pools: List[Tuple[int, ...]] = []
        for tt in range(1, min(reps, 2) + 1):
            pools.extend(itertools.combinations(range(t.n), tt))
        pools = pools[:200]
    else:
        pools = []
        for _ in range(min(reps, 16)):
            tt = rng.randrange(1, reps + 1)
            pools.append(tuple(sorted(rng.sample(range(t.n), min(tt, t.n)))))
    for chosen in pools:
        path_edges = set()
        for v in chosen:
            w = v
            while w != t.root:
                path_edges.add(t.parent_edge(w))
                w = t.parent(w)
        if not path_edges:
            continue
        head = list(range(t.n))

        def find(x):
            while head[x] != x:
                head[x] = head[head[x]]
                x = head[x]
            return x

        for eid, p, c in t.edges():
            if eid in path_edges:
                a, b = find(p), find(c)
                if a != b:
                    head[max(a, b)] = min(a, b)
        reps_sorted = sorted({find(v) for v in range(t.n)})
        index = {r: i for i, r in enumerate(reps_sorted)}
        mapping = tuple(index[find(v)] for v in range(t.n))
        cmap = ContractionMap(mapping)
        edges = [(eid, mapping[p], mapping[c]) for eid, p, c in t.edges()
                 if eid not in path_edges]
        candidates.append((chosen, RootedTree(len(reps_sorted), mapping[t.root], edges), cmap))
    return candidates


def _partition_back(partition: Partition, cmap: ContractionMap, n: int) -> Partition:
    """Pull a contracted partition back to the pre-contraction vertex set."""
    blocks: Dict[int, List[int]] = {}
    idx = partition.block_index()
    for v in range(n):
        blocks.setdefault(idx[cmap.apply(v)], []).append(v)
    return Partition(blocks.values())


def tree_cut(
    g: MultiGraph,
    t: RootedTree,
    lam: int,
    k: int,
    config: TrialConfig,
) -> KCutSolution:
    """Best k-cut found by deleting k-1 edges of the given spanning tree.

    Always returns a feasible cut whose value is re-scored from its
    deletion set; when the tree is tight for some minimum k-cut of value
    at most lam, exhaustive trials recover that minimum exactly.
    """
    if t.n != g.n:
        raise ValueError("tree does not span the graph")
    if k < 1 or k - 1 > t.n - 1:
        raise Infeasible("cannot delete %d edges from a %d-vertex tree" % (k - 1, t.n))
    if k == 1:
        p = Partition([set(g.vertices)])
        return KCutSolution(0, p, frozenset(), "treecut")
    work_g, work_t, cmap = contract_safe_edges(g, t, lam)
    if work_g.n < k:
        # over-contraction: the budget assumption was wrong; fall back to
        # the uncontracted tree, where feasibility is guaranteed
        work_g, work_t = g, t
        cmap = ContractionMap.identity(g.n)
    best: Optional[Tuple[int, Partition]] = None
    rng = derived_rng(config.seed, "rank")
    hld = build_hld(work_t) if work_t.n >= 2 else None
    for _, cand_t, cand_map in rank_preprocess(work_t, hld, config, rng, k):
        cand_g = _apply_map(work_g, cand_map)
        if cand_g.n < k:
            continue
        states = fill_states(cand_g, cand_t, k, lam, config)
        value = states.value(cand_t.root, k)
        cert = states.cert(cand_t.root, k)
        if value == INF or cert is None:
            continue
        part = forest_components(cand_t, cert)
        full = _partition_back(part, cand_map, work_g.n)
        if best is None or cut_value(work_g, full) < best[0]:
            best = (cut_value(work_g, full), full)
    if best is None:
        raise Infeasible("no feasible deletion found")
    original = _partition_back(best[1], cmap, g.n)
    value = cut_value(g, original)
    return KCutSolution(value, original, cut_edge_set(g, original), "treecut")


def _apply_map(g: MultiGraph, cmap: ContractionMap) -> MultiGraph:
    n = max(cmap.mapping) + 1 if cmap.mapping else 0
    edges = []
    for e in g.edge_ids:
        u, v = g.endpoints(e)
        a, b = cmap.apply(u), cmap.apply(v)
        if a != b:
            edges.append((e, a, b))
    return MultiGraph(n, edges)


def is_spider(t: RootedTree) -> bool:
    return all(len(t.children(v)) <= 1 for v in t.order if v != t.root)


def spider_tree_cut(
    g: MultiGraph, t: RootedTree, lam: int, k: int, config: TrialConfig
) -> KCutSolution:
    """Restricted solver for trees that are disjoint branches at the root.

    One deleted edge per selected branch: estimates come from the
    single-severing ancestor-cut bound and a knapsack over branch counts.
    """
    if not is_spider(t):
        raise ValueError("tree is not a spider")
    if t.n != g.n:
        raise ValueError("tree does not span the graph")
    if k < 1 or k - 1 > t.n - 1:
        raise Infeasible("cannot delete %d edges from a %d-vertex tree" % (k - 1, t.n))
    if k == 1:
        return KCutSolution(0, Partition([set(g.vertices)]), frozenset(), "spider")
    hld = build_hld(t)
    eprime = incomparable_edges(g, t, hld)
    identity = ContractionMap.identity(t.n)
    if config.exhaustive and len(eprime) <= config.exhaustive_eprime_cap:
        colorings: Iterable[Coloring] = all_colorings(eprime)
    else:
        count = config.trial_count(k, lam, t.n)
        colorings = [color_trial(eprime, lam, derived_rng(config.seed, "spider", i))
                     for i in range(count)]
        colorings.append(Coloring(eprime, frozenset()))
    best: Optional[Tuple[int, FrozenSet[int]]] = None
    children = list(t.children(t.root))
    for coloring in colorings:
        setting = TrialSetting(g, t, t, identity, coloring, eprime)
        candidates = group_components(children, coloring, setting)
        gps = _classify(setting, candidates)
        tables: List[Dict[int, float]] = []
        recons: List[Dict[int, FrozenSet[int]]] = []
        for u, gp in zip(candidates, gps):
            val, cert = eval_f(u, gp, setting)
            weight = len(u.members)
            tables.append({} if val == INF else {weight: val})
            recons.append({} if val == INF else {weight: cert})
        value, sel = knapsack_combine(tables, k - 1)
        if value == INF:
            continue
        cert = frozenset()
        for i, b in sel:
            cert |= recons[i][b]
        if len(cert) != k - 1:
            continue
        true_value = cut_value(g, forest_components(t, cert))
        if best is None or true_value < best[0]:
            best = (true_value, cert)
    if best is None:
        raise Infeasible("no branch selection reaches %d parts" % k)
    part = forest_components(t, best[1])
    return KCutSolution(best[0], part, cut_edge_set(g, part), "spider")
