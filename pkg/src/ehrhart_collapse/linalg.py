"""Small exact linear algebra over the rationals.

Matrices are lists of rows; entries are ``Fraction`` or ``int``.
Everything here is meant for the tiny systems that show up in
dimension <= 3 geometry, so clarity wins over speed.
"""

from fractions import Fraction
from math import gcd, lcm


def frac_vector(v):
    return tuple(Fraction(x) for x in v)


def rref(rows, ncols=None):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [x / piv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(rows):
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows, ncols):
    """Basis of {x : rows . x = 0} as a list of Fraction tuples."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -R[i][f]
        basis.append(tuple(x))
    return basis


def det(M):
    """Exact determinant by fraction-free elimination (Bareiss)."""
    n = len(M)
    if n == 0:
        return 1
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = num / prev if isinstance(num, Fraction) else _exact_div(num, prev)
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
    return Fraction(a) / b


def solve(M, b):
    """Solve M x = b for square invertible M; None when singular."""
    n = len(M)
    aug = [list(M[i]) + [b[i]] for i in range(n)]
    R, pivots = rref(aug, n)
    if pivots != list(range(n)):
        return None
    return tuple(R[i][n] for i in range(n))


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def matvec(A, x):
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def common_denominator(values):
    return lcm(1, *(Fraction(x).denominator for x in values))


def primitive_integer(v):
    """Positive rescaling of a rational vector to a primitive integer vector."""
    d = common_denominator(v)
    ints = [int(Fraction(x) * d) for x in v]
    g = gcd(*ints)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)
