"""Canonical data model for graphs, uniform hypergraphs and vertex weightings.

A hypergraph is a pair (n, E) where the vertices are the integers 0..n-1 and
every edge is a k-subset of them.  Weightings assign an exact rational to each
vertex; all sign decisions downstream hinge on exact comparisons (the property
under study is sensitive to edge sums that are exactly zero), so floating
point is never used on a verdict path.

Edges are canonicalised on construction: vertices sorted inside each edge,
edges sorted lexicographically.  Edge-subset arguments and results are plain
``frozenset`` objects holding indices into ``Hypergraph.edges``.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

__all__ = [
    "FormatError",
    "BudgetExceededError",
    "Hypergraph",
    "Graph",
    "Weighting",
    "EdgeSet",
    "min_degree",
    "nonneg_edge_count",
    "induced_edge_set",
    "is_independent",
    "complete_graph",
    "cycle_graph",
    "complete_hypergraph",
    "hypergraph_to_json",
    "parse_hypergraph",
    "weighting_to_json",
    "parse_weighting",
]


class FormatError(ValueError):
    """A document failed to parse or violated a structural invariant."""


class BudgetExceededError(RuntimeError):
    """An exhaustive operation was asked to exceed its configured budget."""


#: Subset of a host hypergraph's edges, as indices into its edge list.
EdgeSet = frozenset


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """A k-uniform hypergraph on vertices 0..n-1 with a canonical edge order."""

    n: int
    k: int
    edges: tuple

    def __post_init__(self):
        if self.n < 0:
            raise FormatError(f"vertex count must be nonnegative, got {self.n}")
        if self.k < 1:
            raise FormatError(f"uniformity must be positive, got {self.k}")
        canon = []
        for i, edge in enumerate(self.edges):
            e = tuple(sorted(edge))
            if len(e) != self.k:
                raise FormatError(f"edge {i}: expected {self.k} vertices, got {len(e)}")
            for a, b in zip(e, e[1:]):
                if a == b:
                    raise FormatError(f"edge {i}: duplicate vertex {a}")
            if e[0] < 0 or e[-1] >= self.n:
                bad = e[0] if e[0] < 0 else e[-1]
                raise FormatError(f"edge {i}: vertex {bad} out of range [0, {self.n})")
            canon.append(e)
        canon.sort()
        for i in range(1, len(canon)):
            if canon[i] == canon[i - 1]:
                raise FormatError(f"duplicate edge {list(canon[i])}")
        object.__setattr__(self, "edges", tuple(canon))

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.k, self.edges) == (other.n, other.k, other.edges)

    def __hash__(self):
        return hash((self.n, self.k, self.edges))

    @cached_property
    def degrees(self) -> tuple:
        """Number of incident edges, per vertex."""
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    @cached_property
    def incidence(self) -> tuple:
        """Indices of the edges containing each vertex."""
        inc = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(ixs) for ixs in inc)


class Graph(Hypergraph):
    """2-uniform specialisation with an adjacency index for O(1) neighbour sets."""

    def __init__(self, n: int, edges: Iterable):
        super().__init__(n, 2, tuple(edges))

    @cached_property
    def adjacency(self) -> tuple:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    @cached_property
    def adjacency_masks(self) -> tuple:
        """Neighbour sets as bitmasks, for subset-enumeration loops."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)


def as_graph(h: Hypergraph) -> Graph:
    """View a 2-uniform hypergraph as a Graph."""
    if h.k != 2:
        raise ValueError(f"not a graph: uniformity is {h.k}")
    if isinstance(h, Graph):
        return h
    return Graph(h.n, h.edges)


@dataclass(frozen=True)
class Weighting:
    """An exact rational weight per vertex."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def edge_sum(self, edge) -> Fraction:
        return sum((self.values[v] for v in edge), Fraction(0))

    def scaled(self, c) -> "Weighting":
        c = Fraction(c)
        return Weighting(tuple(v * c for v in self.values))


def min_degree(h: Hypergraph) -> int:
    """Least number of edges incident to any vertex; 0 for an empty structure."""
    if h.n == 0:
        return 0
    return min(h.degrees)


def _check_weighting(h: Hypergraph, f: Weighting):
    if len(f) != h.n:
        raise ValueError(f"weighting has {len(f)} values for {h.n} vertices")


def nonneg_edge_count(h: Hypergraph, f: Weighting) -> int:
    """Number of edges whose vertex-weight sum is >= 0 (exact comparison)."""
    _check_weighting(h, f)
    vals = f.values
    count = 0
    for e in h.edges:
        s = Fraction(0)
        for v in e:
            s += vals[v]
        if s >= 0:
            count += 1
    return count


def induced_edge_set(h: Hypergraph, vertices: Iterable) -> frozenset:
    """Indices of the edges lying entirely inside the given vertex set."""
    a = set(vertices)
    for v in a:
        if not 0 <= v < h.n:
            raise ValueError(f"vertex {v} out of range [0, {h.n})")
    return frozenset(i for i, e in enumerate(h.edges) if a.issuperset(e))


def is_independent(h: Hypergraph, vertices: Iterable, deleted: frozenset = frozenset()) -> bool:
    """True iff no surviving edge lies entirely inside the vertex set."""
    a = set(vertices)
    return all(
        i in deleted or not a.issuperset(e) for i, e in enumerate(h.edges)
    )


# Elementary builders used throughout the test corpus and the CLI.

def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_hypergraph(n: int, k: int) -> Hypergraph:
    from itertools import combinations

    return Hypergraph(n, k, tuple(combinations(range(n), k)))


# ---------------------------------------------------------------------------
# Canonical JSON serialization.
#
# Hypergraph: {"n": int, "k": int, "edges": [[int, ...], ...]}
# Weighting:  {"values": ["p/q", ...]}
#
# Canonical form sorts vertices inside edges and edges lexicographically
# (guaranteed by the constructor) and writes weights as exact reduced
# fraction strings.

def hypergraph_to_json(h: Hypergraph) -> str:
    doc = {"n": h.n, "k": h.k, "edges": [list(e) for e in h.edges]}
    return json.dumps(doc, sort_keys=True)


def parse_hypergraph(text: str) -> Hypergraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object")
    for field in ("n", "k", "edges"):
        if field not in doc:
            raise FormatError(f"missing field {field!r}")
    n, k, edges = doc["n"], doc["k"], doc["edges"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise FormatError("field 'n' must be an integer")
    if not isinstance(k, int) or isinstance(k, bool):
        raise FormatError("field 'k' must be an integer")
    if not isinstance(edges, list):
        raise FormatError("field 'edges' must be a list")
    for i, e in enumerate(edges):
        if not isinstance(e, list) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in e
        ):
            raise FormatError(f"edge {i}: must be a list of integers")
    h = Hypergraph(n, k, tuple(tuple(e) for e in edges))
    return as_graph(h) if k == 2 else h


def _fraction_to_str(x: Fraction) -> str:
    return str(x)


def _parse_fraction(s, where: str) -> Fraction:
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"{where}: invalid rational {s!r}") from exc
    raise FormatError(f"{where}: expected a 'p/q' string, got {type(s).__name__}")


def weighting_to_json(f: Weighting) -> str:
    return json.dumps({"values": [_fraction_to_str(v) for v in f.values]}, sort_keys=True)


def parse_weighting(text: str) -> Weighting:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "values" not in doc:
        raise FormatError("expected a JSON object with a 'values' field")
    values = doc["values"]
    if not isinstance(values, list):
        raise FormatError("field 'values' must be a list")
    return Weighting(tuple(_parse_fraction(v, f"value {i}") for i, v in enumerate(values)))
