"""Deciding the nonnegative-edge-sum property.

A hypergraph H has the property when every weighting with nonnegative total
sum leaves at least delta(H) edges with nonnegative sums.  Graphs admit a
fast exact decision: the property fails exactly when some vertex set S can be
made independent and Hall-deficient by deleting at most delta-1 edges, and
the cheapest deletion set for a given S decomposes cleanly (all internal
edges of S, then fully disconnecting the cheapest surplus neighbours).  The
failure weighting mirrors that structure: +1 on S, a calibrated negative
value on the surviving neighbourhood, and a small negative value elsewhere.

For general hypergraphs the oracle is exact rational LP feasibility: H fails
iff for some edge set T of size delta-1 there is a weighting with total sum
>= 0 that makes every edge outside T strictly negative.  Each T is decided
through the Farkas-dual system (a fractional perfect matching on the
complement certifies infeasibility), which lets provably infeasible T be
skipped wholesale once a certificate avoiding them is known.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Optional

from .core import (
    BudgetExceededError,
    Graph,
    Hypergraph,
    Weighting,
    as_graph,
    induced_edge_set,
    is_independent,
    min_degree,
    nonneg_edge_count,
)
from .lp import feasible_weighting, fractional_perfect_matching
from .prng import SplitMix64

__all__ = [
    "FailureWitness",
    "MmsVerdict",
    "PseudoMatching",
    "check_mms_graph",
    "witness_weighting",
    "check_mms_lp",
    "check_mms_random",
    "find_pseudo_matching",
    "check_pseudo_matching_sufficient",
    "assert_witness_valid",
    "verdict_to_json_dict",
]

GRAPH_VERTEX_CAP = 24
LP_SUBSET_BUDGET = 500_000
PSEUDO_PAIR_BUDGET = 5_000_000


@dataclass(frozen=True)
class FailureWitness:
    """Certificate that the property fails.

    ``deleted`` holds edge indices (the set E'), ``hall_set`` the deficient
    vertex set S when the graph decision procedure produced the witness
    (None for LP-produced witnesses), and ``weighting`` a concrete weighting
    with nonnegative total and fewer than delta nonnegative edges.
    """

    deleted: frozenset
    hall_set: Optional[frozenset]
    weighting: Weighting


@dataclass(frozen=True)
class MmsVerdict:
    holds: bool
    witness: Optional[FailureWitness] = None


@dataclass(frozen=True)
class PseudoMatching:
    """Edges pairwise intersecting only inside the target set and covering it."""

    edges: frozenset
    target: frozenset


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def check_mms_graph(g: Graph, cap: int = GRAPH_VERTEX_CAP) -> MmsVerdict:
    """Exact decision for graphs.

    Scans every nonempty vertex set S in order of size then lexicographic
    rank, computing the cheapest edge-deletion count that leaves S
    independent with fewer than |S| surviving neighbours.  The property
    fails iff some S costs at most delta-1; the first minimum-cost S found
    is reported, with its deletion set and a failure weighting.
    """
    g = as_graph(g)
    delta = min_degree(g)
    if delta == 0:
        return MmsVerdict(True)
    if g.n > cap:
        raise BudgetExceededError(
            f"{g.n} vertices exceed the exact-decision cap {cap}; "
            "use check_mms_random for one-sided falsification"
        )
    adj = g.adjacency_masks
    n = g.n
    best_cost = None
    best = None
    for size in range(1, n + 1):
        for s_tuple in combinations(range(n), size):
            smask = 0
            for v in s_tuple:
                smask |= 1 << v
            e_in = 0
            nmask = 0
            for v in s_tuple:
                av = adj[v]
                e_in += (av & smask).bit_count()
                nmask |= av
            e_in //= 2
            if best_cost is not None and e_in >= best_cost:
                continue
            nmask &= ~smask
            surplus = nmask.bit_count() - size + 1
            if surplus <= 0:
                cost = e_in
                removed = ()
            else:
                weights = sorted(((adj[u] & smask).bit_count(), u) for u in _bits(nmask))
                cost = e_in + sum(c for c, _ in weights[:surplus])
                removed = tuple(u for _, u in weights[:surplus])
            if best_cost is None or cost < best_cost:
                best_cost = cost
                best = (s_tuple, removed)
        if best_cost == 0:
            break
    if best_cost > delta - 1:
        return MmsVerdict(True)
    s_tuple, removed = best
    s_set = frozenset(s_tuple)
    edge_index = {e: i for i, e in enumerate(g.edges)}
    deleted = set(induced_edge_set(g, s_set))
    for u in removed:
        for v in g.neighbors(u) & s_set:
            deleted.add(edge_index[(min(u, v), max(u, v))])
    deleted = frozenset(deleted)
    witness = FailureWitness(deleted, s_set, witness_weighting(g, s_set, deleted))
    verdict = MmsVerdict(False, witness)
    assert_witness_valid(g, witness)
    return verdict


def witness_weighting(g: Graph, s_set: Iterable, deleted: frozenset) -> Weighting:
    """The explicit failure weighting for a Hall-deficient independent set.

    With N the surviving neighbourhood of S: f = 1 on S,
    -|S|/|N| + eps/|N| on N, and -eps/|V| elsewhere, with eps fixed to the
    midpoint (|S|/|N| - 1)/2 of its admissible interval.  Every surviving
    edge then has a strictly negative sum, so at most |deleted| <= delta-1
    edges are nonnegative, while the total sum stays positive.
    """
    g = as_graph(g)
    s_set = frozenset(s_set)
    if not s_set:
        raise ValueError("S must be nonempty")
    delta = min_degree(g)
    if len(deleted) > delta - 1:
        raise ValueError(f"|deleted| = {len(deleted)} exceeds delta-1 = {delta - 1}")
    if not is_independent(g, s_set, deleted):
        raise ValueError("S is not independent after the deletions")
    nbhd = set()
    for i, (u, v) in enumerate(g.edges):
        if i in deleted:
            continue
        if u in s_set and v not in s_set:
            nbhd.add(v)
        elif v in s_set and u not in s_set:
            nbhd.add(u)
    if len(nbhd) >= len(s_set):
        raise ValueError("S has at least |S| surviving neighbours")
    values = [None] * g.n
    if nbhd:
        ratio = Fraction(len(s_set), len(nbhd))
        eps = (ratio - 1) / 2
        on_nbhd = -ratio + eps / len(nbhd)
        elsewhere = -eps / g.n
    else:
        on_nbhd = None
        elsewhere = Fraction(-1, g.n)
    for v in range(g.n):
        if v in s_set:
            values[v] = Fraction(1)
        elif v in nbhd:
            values[v] = on_nbhd
        else:
            values[v] = elsewhere
    return Weighting(tuple(values))


def check_mms_lp(h: Hypergraph, budget: int = LP_SUBSET_BUDGET) -> MmsVerdict:
    """Exact LP oracle for uniform hypergraphs.

    H fails iff some T of exactly delta-1 edges admits an exact rational f
    with sum(f) >= 0 and edge sum <= -1 outside T; supersets of feasible
    smaller T stay feasible, so only size delta-1 needs enumeration.  A
    fractional perfect matching supported inside E - T certifies that T is
    infeasible; certificates are cached and reused to skip later T they
    avoid, and up to delta pairwise-disjoint ones are collected up front.
    """
    delta = min_degree(h)
    if delta == 0:
        return MmsVerdict(True)
    ne = len(h.edges)
    t_size = delta - 1
    if comb(ne, t_size) > budget:
        raise BudgetExceededError(
            f"C({ne}, {t_size}) subsets exceed the LP budget {budget}"
        )
    supports = []
    remaining = set(range(ne))
    while len(supports) < delta:
        y = fractional_perfect_matching(h, remaining)
        if y is None:
            break
        mask = 0
        for i in y:
            mask |= 1 << i
        supports.append(mask)
        remaining -= set(y)
    for t_tuple in combinations(range(ne), t_size):
        tmask = 0
        for i in t_tuple:
            tmask |= 1 << i
        if any(s & tmask == 0 for s in supports):
            continue
        allowed = [i for i in range(ne) if not tmask & (1 << i)]
        y = fractional_perfect_matching(h, allowed)
        if y is not None:
            mask = 0
            for i in y:
                mask |= 1 << i
            supports.insert(0, mask)
            continue
        f = feasible_weighting(h, frozenset(allowed))
        if f is None:
            raise RuntimeError("LP duality violated; internal error")
        _check_lp_witness(h, f, set(t_tuple))
        witness = FailureWitness(frozenset(t_tuple), None, f)
        return MmsVerdict(False, witness)
    return MmsVerdict(True)


def _check_lp_witness(h: Hypergraph, f: Weighting, t_set: set):
    if f.total() < 0:
        raise RuntimeError("LP witness has negative total")
    for i, e in enumerate(h.edges):
        if i not in t_set and f.edge_sum(e) >= 0:
            raise RuntimeError("LP witness leaves a constrained edge nonnegative")


def check_mms_random(
    h: Hypergraph, trials: int, seed: int
) -> Optional[Weighting]:
    """One-sided falsifier: a weighting with < delta nonnegative edges, or None.

    Cycles through three seeded generators: the single +1 / uniform negative
    pattern, a boundary pattern that puts +1 on a random vertex subset and
    balances the rest to total zero, and small random rationals re-centred to
    total zero.  Finding a weighting disproves the property; finding nothing
    proves nothing.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    delta = min_degree(h)
    if delta == 0:
        return None
    n = h.n
    rng = SplitMix64(seed)
    for t in range(trials):
        kind = t % 3
        if kind == 0 and n >= 2:
            v = rng.below(n)
            base = Fraction(-1, n - 1)
            f = Weighting(tuple(Fraction(1) if u == v else base for u in range(n)))
        elif kind == 1 and n >= 2:
            size = 1 + rng.below(n - 1)
            order = list(range(n))
            rng.shuffle(order)
            chosen = set(order[:size])
            rest = Fraction(-size, n - size)
            f = Weighting(
                tuple(Fraction(1) if u in chosen else rest for u in range(n))
            )
        else:
            vals = [
                Fraction(rng.randrange(-8, 9), rng.randrange(1, 5)) for _ in range(n)
            ]
            shift = sum(vals, Fraction(0)) / n
            f = Weighting(tuple(v - shift for v in vals))
        if nonneg_edge_count(h, f) < delta:
            return f
    return None


def find_pseudo_matching(
    h: Hypergraph, target: Iterable, deleted: frozenset = frozenset()
) -> Optional[PseudoMatching]:
    """Exhaustive search for edges covering the target set that pairwise meet
    only inside it.  None when no such edge set exists."""
    a = frozenset(target)
    if not is_independent(h, a, deleted):
        raise ValueError("target set is not independent after the deletions")
    if not a:
        return PseudoMatching(frozenset(), a)
    # Only edges meeting the target can appear in a minimal pseudo-matching.
    candidates = [
        (i, frozenset(h.edges[i]))
        for i in range(len(h.edges))
        if i not in deleted and a & frozenset(h.edges[i])
    ]
    by_vertex = {v: [] for v in a}
    for i, e in candidates:
        for v in e & a:
            by_vertex[v].append((i, e))
    order = sorted(a)

    def extend(covered: frozenset, outside: frozenset, chosen: tuple):
        missing = [v for v in order if v not in covered]
        if not missing:
            return chosen
        v = missing[0]
        for i, e in by_vertex[v]:
            ext = e - a
            if ext & outside:
                continue
            result = extend(covered | (e & a), outside | ext, chosen + (i,))
            if result is not None:
                return result
        return None

    chosen = extend(frozenset(), frozenset(), ())
    if chosen is None:
        return None
    return PseudoMatching(frozenset(chosen), a)


def check_pseudo_matching_sufficient(
    h: Hypergraph, budget: int = PSEUDO_PAIR_BUDGET
) -> bool:
    """True iff every deletion of at most delta-1 edges leaves every
    independent set saturated by some pseudo-matching.

    A true answer implies the property holds (sufficient, not necessary).
    """
    delta = min_degree(h)
    if delta <= 0:
        return True
    ne = len(h.edges)
    n = h.n
    subsets = sum(comb(ne, j) for j in range(delta))
    if subsets * (1 << n) > budget:
        raise BudgetExceededError(
            f"{subsets} deletion sets x 2^{n} vertex sets exceed budget {budget}"
        )
    edge_masks = [sum(1 << v for v in e) for e in h.edges]
    for j in range(delta):
        for t_tuple in combinations(range(ne), j):
            deleted = frozenset(t_tuple)
            surviving = [edge_masks[i] for i in range(ne) if i not in deleted]
            for amask in range(1, 1 << n):
                if any(em & ~amask == 0 for em in surviving):
                    continue  # not independent
                a = frozenset(_bits(amask))
                if find_pseudo_matching(h, a, deleted) is None:
                    return False
    return True


def assert_witness_valid(h: Hypergraph, w: FailureWitness):
    """Hard-check the witness invariants; raises AssertionError on failure."""
    delta = min_degree(h)
    if len(w.deleted) > delta - 1:
        raise AssertionError("witness deletes too many edges")
    if w.hall_set is not None:
        if not is_independent(h, w.hall_set, w.deleted):
            raise AssertionError("hall set is not independent after deletions")
        g = as_graph(h)
        nbhd = set()
        for i, (u, v) in enumerate(g.edges):
            if i in w.deleted:
                continue
            if u in w.hall_set and v not in w.hall_set:
                nbhd.add(v)
            elif v in w.hall_set and u not in w.hall_set:
                nbhd.add(u)
        if len(nbhd) >= len(w.hall_set):
            raise AssertionError("hall set is not deficient")
    if w.weighting.total() < 0:
        raise AssertionError("witness weighting has negative total")
    if nonneg_edge_count(h, w.weighting) > delta - 1:
        raise AssertionError("witness weighting leaves too many nonnegative edges")


def verdict_to_json_dict(h: Hypergraph, verdict: MmsVerdict) -> dict:
    """Wire form: {"holds": bool, "witness": {...} | null}."""
    if verdict.witness is None:
        return {"holds": verdict.holds, "witness": None}
    w = verdict.witness
    return {
        "holds": verdict.holds,
        "witness": {
            "deleted": sorted(list(h.edges[i]) for i in sorted(w.deleted)),
            "hall_set": sorted(w.hall_set) if w.hall_set is not None else [],
            "weighting": [str(v) for v in w.weighting.values],
        },
    }
