"""Bipartite matching machinery.

Hall violators come from a maximum matching (Hopcroft-Karp) plus alternating
reachability.  Families of edge-disjoint matchings that each saturate the
left side are built constructively: an integral max-flow extracts a subgraph
with left degree exactly k and right degree at most k, and a bipartite
k-edge-colouring splits it into the k matchings.  The counting inequality
`lebensold_check` characterises exactly when this succeeds.
"""

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .core import BudgetExceededError, Graph

__all__ = [
    "BipartiteGraph",
    "MatchingFamily",
    "maximum_matching",
    "hall_violator",
    "lebensold_check",
    "edge_disjoint_matchings",
    "corollary_matchings",
]


@dataclass(frozen=True)
class BipartiteGraph:
    """Edges between two disjoint vertex sets ``left`` and ``right``."""

    left: tuple
    right: tuple
    edges: tuple

    def __post_init__(self):
        left = tuple(sorted(set(self.left)))
        right = tuple(sorted(set(self.right)))
        if set(left) & set(right):
            raise ValueError("sides must be disjoint")
        lset, rset = set(left), set(right)
        canon = set()
        for a, b in self.edges:
            if a in rset and b in lset:
                a, b = b, a
            if a not in lset or b not in rset:
                raise ValueError(f"edge ({a}, {b}) does not join the two sides")
            canon.add((a, b))
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @classmethod
    def between(cls, g: Graph, side_a: Iterable, side_b: Iterable) -> "BipartiteGraph":
        """The bipartite subgraph of g induced between two disjoint sets."""
        a, b = set(side_a), set(side_b)
        edges = [
            (u, v) if u in a else (v, u)
            for u, v in g.edges
            if (u in a and v in b) or (u in b and v in a)
        ]
        return cls(tuple(a), tuple(b), tuple(edges))

    def neighbors_of_left(self) -> dict:
        adj = {a: [] for a in self.left}
        for a, b in self.edges:
            adj[a].append(b)
        return adj


@dataclass(frozen=True)
class MatchingFamily:
    """Pairwise edge-disjoint matchings of a bipartite graph."""

    matchings: tuple

    def __post_init__(self):
        object.__setattr__(
            self,
            "matchings",
            tuple(tuple(sorted(m)) for m in self.matchings),
        )

    def __len__(self):
        return len(self.matchings)


def maximum_matching(b: BipartiteGraph) -> dict:
    """Hopcroft-Karp; returns {left vertex: matched right vertex}."""
    adj = b.neighbors_of_left()
    for a in adj:
        adj[a].sort()
    inf = float("inf")
    pair_l: dict = {}
    pair_r: dict = {}
    dist: dict = {}

    def bfs() -> bool:
        q = deque()
        for a in b.left:
            if a not in pair_l:
                dist[a] = 0
                q.append(a)
            else:
                dist[a] = inf
        found = inf
        while q:
            a = q.popleft()
            if dist[a] >= found:
                continue
            for w in adj[a]:
                nxt = pair_r.get(w)
                if nxt is None:
                    found = dist[a] + 1
                elif dist[nxt] == inf:
                    dist[nxt] = dist[a] + 1
                    q.append(nxt)
        return found != inf

    def dfs(a) -> bool:
        for w in adj[a]:
            nxt = pair_r.get(w)
            if nxt is None or (dist[nxt] == dist[a] + 1 and dfs(nxt)):
                pair_l[a] = w
                pair_r[w] = a
                return True
        dist[a] = inf
        return False

    while bfs():
        for a in b.left:
            if a not in pair_l:
                dfs(a)
    return pair_l


def hall_violator(b: BipartiteGraph) -> Optional[frozenset]:
    """A set S of left vertices with |N(S)| < |S|, or None if A is matchable.

    S is the left side of the alternating-reachability closure of the
    unmatched left vertices under a maximum matching; its whole neighbourhood
    is then matched into it, giving the deficiency |S| - |N(S)| > 0.
    """
    pair_l = maximum_matching(b)
    unmatched = [a for a in b.left if a not in pair_l]
    if not unmatched:
        return None
    adj = b.neighbors_of_left()
    pair_r = {w: a for a, w in pair_l.items()}
    seen_l = set(unmatched)
    seen_r = set()
    stack = list(unmatched)
    while stack:
        a = stack.pop()
        for w in adj[a]:
            if w in seen_r:
                continue
            seen_r.add(w)
            nxt = pair_r.get(w)
            if nxt is not None and nxt not in seen_l:
                seen_l.add(nxt)
                stack.append(nxt)
    return frozenset(seen_l)


def lebensold_check(b: BipartiteGraph, k: int, max_side: int = 20) -> bool:
    """Exhaustive test of: for all S in A, sum_B min(k, |N(v) & S|) >= k|S|."""
    if k < 1:
        raise ValueError("k must be >= 1")
    na = len(b.left)
    if na > max_side:
        raise BudgetExceededError(f"left side has {na} > {max_side} vertices")
    index = {a: i for i, a in enumerate(b.left)}
    rmasks = {w: 0 for w in b.right}
    for a, w in b.edges:
        rmasks[w] |= 1 << index[a]
    masks = list(rmasks.values())
    for s in range(1, 1 << na):
        need = k * s.bit_count()
        got = 0
        for m in masks:
            c = (m & s).bit_count()
            got += c if c < k else k
            if got >= need:
                break
        if got < need:
            return False
    return True


# ---------------------------------------------------------------------------
# Max flow (Dinic) on a tiny dense network; integral capacities only.


class _Dinic:
    def __init__(self, n: int):
        self.n = n
        self.adj = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cap: int) -> int:
        self.adj[u].append([v, cap, len(self.adj[v])])
        self.adj[v].append([u, 0, len(self.adj[u]) - 1])
        return len(self.adj[u]) - 1

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            q = deque([s])
            while q:
                u = q.popleft()
                for e in self.adj[u]:
                    if e[1] > 0 and level[e[0]] < 0:
                        level[e[0]] = level[u] + 1
                        q.append(e[0])
            if level[t] < 0:
                return flow
            it = [0] * self.n

            def dfs(u, pushed):
                if u == t:
                    return pushed
                while it[u] < len(self.adj[u]):
                    e = self.adj[u][it[u]]
                    v = e[0]
                    if e[1] > 0 and level[v] == level[u] + 1:
                        d = dfs(v, min(pushed, e[1]))
                        if d > 0:
                            e[1] -= d
                            self.adj[v][e[2]][1] += d
                            return d
                    it[u] += 1
                return 0

            while True:
                pushed = dfs(s, 1 << 60)
                if pushed == 0:
                    break
                flow += pushed


def _degree_constrained_subgraph(b: BipartiteGraph, k: int):
    """Edges of a subgraph with degree exactly k on the left, <= k on the
    right, or None when no such subgraph exists (max flow falls short)."""
    nl, nr = len(b.left), len(b.right)
    lidx = {a: i for i, a in enumerate(b.left)}
    ridx = {w: i for i, w in enumerate(b.right)}
    src, sink = nl + nr, nl + nr + 1
    net = _Dinic(nl + nr + 2)
    for i in range(nl):
        net.add_edge(src, i, k)
    edge_slots = []
    for a, w in b.edges:
        slot = net.add_edge(lidx[a], nl + ridx[w], 1)
        edge_slots.append((a, w, lidx[a], slot))
    for j in range(nr):
        net.add_edge(nl + j, sink, k)
    if net.max_flow(src, sink) != k * nl:
        return None
    return [(a, w) for a, w, u, slot in edge_slots if net.adj[u][slot][1] == 0]


def _konig_edge_colouring(edges, k: int) -> list:
    """Split a bipartite (sub)graph with max degree <= k into k matchings.

    Classic alternating-chain recolouring: for each edge pick a colour free
    at the left end and one free at the right end; when they differ, swap the
    two colours along the maximal alternating chain from the right end, which
    frees the left end's colour at both endpoints.
    """
    at = {}  # (vertex, colour) -> other endpoint
    colour_of = {}
    for a, w in edges:
        free_a = next(c for c in range(k) if (a, c) not in at)
        free_w = next(c for c in range(k) if (w, c) not in at)
        if free_a != free_w:
            alpha, beta = free_a, free_w
            chain = []
            cur, col = w, alpha
            while (cur, col) in at:
                nxt = at[(cur, col)]
                chain.append((cur, nxt, col))
                cur, col = nxt, beta if col == alpha else alpha
            for u, v, col in chain:
                new = beta if col == alpha else alpha
                del at[(u, col)]
                del at[(v, col)]
                at[(u, new)] = v
                at[(v, new)] = u
                key = (u, v) if (u, v) in colour_of else (v, u)
                colour_of[key] = new
        at[(a, free_a)] = w
        at[(w, free_a)] = a
        colour_of[(a, w)] = free_a
    classes = [[] for _ in range(k)]
    for (a, w), c in colour_of.items():
        classes[c].append((a, w))
    return classes


def edge_disjoint_matchings(b: BipartiteGraph, k: int) -> Optional[MatchingFamily]:
    """k pairwise edge-disjoint matchings each saturating the left side.

    Returns None exactly when the counting condition of `lebensold_check`
    fails (the flow subproblem is its max-flow/min-cut restatement).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not b.left:
        return MatchingFamily(tuple(() for _ in range(k)))
    sub = _degree_constrained_subgraph(b, k)
    if sub is None:
        return None
    classes = _konig_edge_colouring(sorted(sub), k)
    fam = MatchingFamily(tuple(tuple(m) for m in classes))
    _assert_family(b, fam, k)
    return fam


def _assert_family(b: BipartiteGraph, fam: MatchingFamily, k: int):
    seen = set()
    for m in fam.matchings:
        used = set()
        for a, w in m:
            if (a, w) in seen:
                raise AssertionError("matchings share an edge")
            seen.add((a, w))
            if a in used or w in used:
                raise AssertionError("matching reuses a vertex")
            used.update((a, w))
        if set(b.left) - used:
            raise AssertionError("matching does not saturate the left side")


def corollary_matchings(g: Graph, a_set: Iterable) -> MatchingFamily:
    """delta - Delta_A edge-disjoint A-saturating matchings between A and N(A).

    Requires |A| <= delta(G)/2 and A nonempty; existence under that bound is
    a theorem, so a construction failure here is an internal error.
    """
    from .core import min_degree

    a = frozenset(a_set)
    if not a:
        raise ValueError("A must be nonempty")
    delta = min_degree(g)
    if 2 * len(a) > delta:
        raise ValueError(f"|A| = {len(a)} exceeds delta/2 = {delta}/2")
    delta_a = max((len(g.neighbors(v) & a) for v in a), default=0)
    nbhd = frozenset().union(*(g.neighbors(v) for v in a)) - a
    b = BipartiteGraph.between(g, a, nbhd)
    fam = edge_disjoint_matchings(b, delta - delta_a)
    if fam is None:
        raise RuntimeError("guaranteed matching family not found; internal error")
    return fam
