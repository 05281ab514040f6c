"""Exact rational linear feasibility via phase-one simplex.

Everything here runs on ``fractions.Fraction``; there is no floating point
and no tolerance anywhere.  Termination is guaranteed by Bland's rule
(entering column of lowest index among candidates, leaving row breaking ties
by lowest basic-variable index).

Two systems back the hypergraph verdict oracle:

``feasible_weighting``
    f free per vertex, sum(f) >= 0, and sum_{v in e} f(v) <= -1 for every
    constrained edge.  Strict negativity of edge sums is equivalent to the
    <= -1 form because the constraint cone is invariant under positive
    scaling.

``fractional_perfect_matching``
    y_e >= 0 on an allowed edge set with sum_{e : v in e} y_e = 1 for every
    vertex.  By Farkas duality this system is solvable exactly when the
    weighting system above (constrained on the same edges) is not, which is
    what makes it a fast certificate for "no bad weighting exists here".
"""

from fractions import Fraction

from .core import Hypergraph, Weighting

LE = "<="
GE = ">="
EQ = "=="

_ZERO = Fraction(0)
_ONE = Fraction(1)


def phase_one_feasible(num_vars, constraints):
    """Feasibility of {x >= 0 : constraints} via phase-one simplex.

    constraints: iterable of (coeffs, rel, rhs) with coeffs a length-num_vars
    sequence, rel one of "<=", ">=", "==".  Returns a list of Fractions (a
    feasible point) or None.
    """
    rows = []
    rels = []
    rhss = []
    for coeffs, rel, rhs in constraints:
        row = [Fraction(c) for c in coeffs]
        if len(row) != num_vars:
            raise ValueError("coefficient row has wrong length")
        rows.append(row)
        rels.append(rel)
        rhss.append(Fraction(rhs))

    m = len(rows)
    # Columns: original vars, then one slack per inequality, then artificials.
    num_slacks = sum(1 for r in rels if r != EQ)
    slack_col = {}
    col = num_vars
    for i, rel in enumerate(rels):
        if rel != EQ:
            slack_col[i] = col
            col += 1
    total = col  # artificials appended below as needed

    tableau = []
    basis = []
    art_rows = []
    for i in range(m):
        row = rows[i] + [_ZERO] * num_slacks
        if rels[i] == LE:
            row[slack_col[i]] = _ONE
        elif rels[i] == GE:
            row[slack_col[i]] = -_ONE
        b = rhss[i]
        if b < 0:
            row = [-c for c in row]
            b = -b
        # A +1 slack with nonnegative rhs can start in the basis; anything
        # else needs an artificial variable.
        if rels[i] != EQ and row[slack_col[i]] == _ONE:
            basis.append(slack_col[i])
        else:
            basis.append(None)  # patched to the artificial column below
            art_rows.append(i)
        tableau.append(row + [b])

    num_art = len(art_rows)
    art_first = total
    for j, i in enumerate(art_rows):
        basis[i] = art_first + j
    total += num_art
    for i in range(m):
        art = [_ZERO] * num_art
        if basis[i] >= art_first:
            art[basis[i] - art_first] = _ONE
        tableau[i] = tableau[i][:-1] + art + [tableau[i][-1]]

    if num_art == 0:
        return _extract(tableau, basis, num_vars)

    # Phase-one objective: minimise the artificial sum, kept as the
    # representation  sum(art) = obj_val - sum_j obj[j] * x_j.
    obj = [_ZERO] * total
    obj_val = _ZERO
    for i in art_rows:
        row = tableau[i]
        for j in range(total):
            obj[j] += row[j]
        obj_val += row[total]
    for j in range(art_first, total):
        obj[j] = _ZERO  # artificials never re-enter

    while True:
        enter = -1
        for j in range(art_first):  # Bland: lowest index
            if obj[j] > 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][total] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            # Unbounded in phase one cannot happen (objective bounded below
            # by zero); guard against a logic error rather than loop.
            raise RuntimeError("phase-one simplex lost boundedness")
        _pivot(tableau, obj, basis, leave, enter, total)
        obj_val = _ZERO
        for i in range(m):
            if basis[i] >= art_first:
                obj_val += tableau[i][total]

    if obj_val != 0:
        return None
    return _extract(tableau, basis, num_vars)


def _pivot(tableau, obj, basis, leave, enter, total):
    prow = tableau[leave]
    p = prow[enter]
    if p != 1:
        inv = 1 / p
        tableau[leave] = prow = [c * inv for c in prow]
    nz = [j for j, c in enumerate(prow) if c != 0]
    for i, row in enumerate(tableau):
        if i == leave:
            continue
        f = row[enter]
        if f != 0:
            for j in nz:
                row[j] -= f * prow[j]
    f = obj[enter]
    if f != 0:
        for j in nz:
            if j < total:
                obj[j] -= f * prow[j]
    basis[leave] = enter


def _extract(tableau, basis, num_vars):
    x = [_ZERO] * num_vars
    for i, b in enumerate(basis):
        if b is not None and b < num_vars:
            x[b] = tableau[i][-1]
    return x


def feasible_weighting(h: Hypergraph, constrained: frozenset):
    """Exact f with sum(f) >= 0 and edge sum <= -1 on every constrained edge.

    Free vertex variables are split f = u - w with u, w >= 0.  Returns a
    Weighting or None.
    """
    n = h.n
    cons = []
    row = [_ONE] * n + [-_ONE] * n
    cons.append((row, GE, _ZERO))
    for i in sorted(constrained):
        coeffs = [_ZERO] * (2 * n)
        for v in h.edges[i]:
            coeffs[v] = _ONE
            coeffs[n + v] = -_ONE
        cons.append((coeffs, LE, Fraction(-1)))
    sol = phase_one_feasible(2 * n, cons)
    if sol is None:
        return None
    return Weighting(tuple(sol[v] - sol[n + v] for v in range(n)))


def fractional_perfect_matching(h: Hypergraph, allowed):
    """y >= 0 on the allowed edges with every vertex covered with total 1.

    Returns {edge index: Fraction} restricted to the support, or None.
    """
    allowed = sorted(allowed)
    if h.n == 0:
        return {}
    cols = {e: j for j, e in enumerate(allowed)}
    cons = []
    for v in range(h.n):
        coeffs = [_ZERO] * len(allowed)
        hit = False
        for i in h.incidence[v]:
            j = cols.get(i)
            if j is not None:
                coeffs[j] = _ONE
                hit = True
        if not hit:
            return None  # an uncoverable vertex kills the system outright
        cons.append((coeffs, EQ, _ONE))
    sol = phase_one_feasible(len(allowed), cons)
    if sol is None:
        return None
    return {allowed[j]: sol[j] for j in range(len(allowed)) if sol[j] != 0}
