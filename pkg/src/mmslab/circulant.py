"""Circulant graphs: construction, coprimality, and the residue criterion.

A circulant on Z_n with generators s_1..s_k joins i and j when i - j is
congruent to some +-s_i.  When every generator is a unit and no two sum to n
("coprime" circulants), the graph is an edge-disjoint union of spanning
cycles and, for odd n, membership in the studied property reduces to a
residue condition: for each i, the normalised generator multiset
{|t_i^-1 t_j| : j} must not land inside {1, 3}, where |l| = min(l, n - l).
"""

from dataclasses import dataclass
from math import gcd

from .core import Graph

__all__ = [
    "CirculantSpec",
    "build_circulant",
    "is_coprime_circulant",
    "abs_mod",
    "circulant_mms_criterion",
    "euler_phi",
    "construct_regular_mms",
]


@dataclass(frozen=True)
class CirculantSpec:
    n: int
    generators: tuple

    def __post_init__(self):
        gens = tuple(sorted(self.generators))
        if len(set(gens)) != len(gens):
            raise ValueError("generators must be pairwise distinct")
        for s in gens:
            if not 0 < s < self.n:
                raise ValueError(f"generator {s} outside (0, {self.n})")
        object.__setattr__(self, "generators", gens)


def build_circulant(spec: CirculantSpec) -> Graph:
    edges = set()
    for i in range(spec.n):
        for s in spec.generators:
            j = (i + s) % spec.n
            if i != j:
                edges.add((min(i, j), max(i, j)))
    return Graph(spec.n, tuple(sorted(edges)))


def is_coprime_circulant(spec: CirculantSpec) -> bool:
    gens = spec.generators
    if any(gcd(spec.n, s) != 1 for s in gens):
        return False
    return all(
        (gens[i] + gens[j]) % spec.n != 0
        for i in range(len(gens))
        for j in range(i + 1, len(gens))
    )


def abs_mod(l: int, n: int) -> int:
    """Distance of a residue from 0 on the n-cycle: min(l, n - l)."""
    if not 0 <= l < n:
        raise ValueError(f"residue {l} outside [0, {n})")
    return min(l, n - l)


def circulant_mms_criterion(spec: CirculantSpec) -> bool:
    """Residue criterion, equivalent to the property for odd coprime circulants.

    True iff for every generator t_i the set {|t_i^-1 t_j mod n|} is not
    contained in {1, 3}.
    """
    if spec.n % 2 == 0:
        raise ValueError("criterion is defined for odd n only")
    if not is_coprime_circulant(spec):
        raise ValueError("criterion is defined for coprime circulants only")
    n = spec.n
    for t in spec.generators:
        inv = pow(t, -1, n)
        normalised = {abs_mod(inv * s % n, n) for s in spec.generators}
        if normalised <= {1, 3}:
            return False
    return True


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum(1 for i in range(1, n + 1) if gcd(i, n) == 1)


def construct_regular_mms(n: int, d: int) -> Graph:
    """A connected d-regular circulant on n vertices passing the criterion.

    Requires n odd with euler_phi(n) >= 8 and d even in [4, euler_phi(n)].
    Generators are chosen smallest-first: for d >= 6, the d/2 smallest units
    with pairwise distinct |.| starting from 1; for d = 4, the pair {1, k}
    with k the smallest unit satisfying |k| not in {1, 3} and |k^-1| != 3.
    """
    if n % 2 == 0:
        raise ValueError("n must be odd")
    phi = euler_phi(n)
    if phi < 8:
        raise ValueError(f"euler_phi({n}) = {phi} < 8")
    if d % 2 != 0 or not 4 <= d <= phi:
        raise ValueError(f"d must be even in [4, {phi}], got {d}")
    r = d // 2
    if r >= 3:
        gens = []
        seen = set()
        for s in range(1, n):
            if gcd(s, n) != 1:
                continue
            a = abs_mod(s, n)
            if a in seen:
                continue
            seen.add(a)
            gens.append(s)
            if len(gens) == r:
                break
    else:
        k = None
        for s in range(2, n):
            if gcd(s, n) != 1:
                continue
            if abs_mod(s, n) in (1, 3):
                continue
            if abs_mod(pow(s, -1, n), n) == 3:
                continue
            k = s
            break
        if k is None:
            raise RuntimeError("no admissible second generator; internal error")
        gens = [1, k]
    spec = CirculantSpec(n, tuple(gens))
    if not circulant_mms_criterion(spec):
        raise RuntimeError("constructed circulant fails the criterion; internal error")
    g = build_circulant(spec)
    if any(g.degree(v) != d for v in range(n)):
        raise RuntimeError("constructed circulant is not d-regular; internal error")
    return g
