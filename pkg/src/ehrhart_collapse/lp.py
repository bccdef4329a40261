"""Exact two-phase simplex method over ``Fraction``.

Solves ``max c.x  s.t.  A x = b, x >= 0``. Bland's rule is used for both
entering and leaving variables, so the method terminates without any
tolerance or perturbation.
"""

from dataclasses import dataclass
from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple | None = None


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, c):
        row = self.rows[r]
        piv = row[c]
        self.rows[r] = row = [x / piv for x in row]
        self.rhs[r] /= piv
        for i, other in enumerate(self.rows):
            f = other[c]
            if i != r and f != 0:
                self.rows[i] = [a - f * b for a, b in zip(other, row)]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def optimize(self, cost, allowed):
        """Maximize ``cost`` over the current basis; False if unbounded."""
        while True:
            reduced = _reduced_costs(self, cost)
            entering = next((j for j in allowed if reduced[j] > 0), None)
            if entering is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], entering)


def _reduced_costs(tab, cost):
    n = len(cost)
    reduced = list(cost)
    for i, b in enumerate(tab.basis):
        cb = cost[b]
        if cb != 0:
            row = tab.rows[i]
            for j in range(n):
                reduced[j] -= cb * row[j]
    return reduced


def maximize(c, A, b):
    """Maximize ``c.x`` subject to ``A x = b`` and ``x >= 0``."""
    n = len(c)
    m = len(A)
    rows = []
    rhs = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        row += [Fraction(int(j == i)) for j in range(m)]
        rows.append(row)
        rhs.append(bi)
    tab = _Tableau(rows, rhs, [n + i for i in range(m)])

    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    tab.optimize(phase1, range(n + m))
    if sum(tab.rhs[i] for i, v in enumerate(tab.basis) if v >= n) != 0:
        return LPResult(INFEASIBLE)

    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n:
            col = next((j for j in range(n) if tab.rows[i][j] != 0), None)
            if col is None:
                del tab.rows[i], tab.rhs[i], tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1
    tab.rows = [row[:n] for row in tab.rows]

    cost = [Fraction(x) for x in c]
    if not tab.optimize(cost, range(n)):
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, v in enumerate(tab.basis):
        x[v] = tab.rhs[i]
    return LPResult(OPTIMAL, sum(ci * xi for ci, xi in zip(cost, x)), tuple(x))


def max_min_weight(groups, target=None, with_point=False):
    """Largest ``t`` such that one point is a convex combination of each
    group with every weight >= t.

    ``groups`` is a list of point lists. With ``target`` given, each group
    must reproduce that point; otherwise all groups must reproduce a
    common (free) point. Returns ``None`` if no such point exists, else
    the optimal ``t`` (>= 0). ``t > 0`` means the relative interiors of
    the groups' hulls share a point (containing ``target`` if given).
    With ``with_point`` the result is ``(t, point)`` where ``point`` is the
    common point found.
    """
    dim = len(groups[0][0])
    sizes = [len(g) for g in groups]
    nvars = sum(sizes) + 1  # slack weights s, then t; weight = t + s
    tcol = nvars - 1
    A, b = [], []

    offsets = []
    off = 0
    for sz in sizes:
        offsets.append(off)
        off += sz

    def weighted_rows(g, sign):
        rows = [[Fraction(0)] * nvars for _ in range(dim)]
        for k, p in enumerate(groups[g]):
            for r in range(dim):
                rows[r][offsets[g] + k] += sign * p[r]
                rows[r][tcol] += sign * p[r]
        return rows

    if target is not None:
        for g in range(len(groups)):
            rows = weighted_rows(g, 1)
            A.extend(rows)
            b.extend(Fraction(x) for x in target)
    else:
        for g in range(1, len(groups)):
            first = weighted_rows(0, 1)
            other = weighted_rows(g, -1)
            for r in range(dim):
                A.append([x + y for x, y in zip(first[r], other[r])])
                b.append(Fraction(0))
    for g, sz in enumerate(sizes):
        row = [Fraction(0)] * nvars
        for k in range(sz):
            row[offsets[g] + k] = Fraction(1)
        row[tcol] = Fraction(sz)
        A.append(row)
        b.append(Fraction(1))

    c = [Fraction(0)] * nvars
    c[tcol] = Fraction(1)
    res = maximize(c, A, b)
    if res.status == INFEASIBLE:
        return None
    if not with_point:
        return res.value
    t = res.x[tcol]
    point = tuple(
        sum((t + res.x[k]) * p[r] for k, p in enumerate(groups[0]))
        for r in range(dim)
    )
    return res.value, point
