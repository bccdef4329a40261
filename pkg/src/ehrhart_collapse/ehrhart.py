"""Ehrhart quasi-polynomials from exact counts.

A rational polytope of dimension d and denominator D has a counting
function that is a degree-d quasi-polynomial with quasi-period D, so the
D*(d+1) counts at k = 1..D(d+1) pin it down: each residue class mod D
gets exactly d+1 samples and one interpolating polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import linalg
from .counting import count_interior, count_points
from .errors import EhrhartError, UnsupportedDimensionError
from .geometry import MAX_TRIANGULATION_DIM, RationalPolytope, denominator


class InterpolationError(EhrhartError):
    pass


@dataclass(frozen=True, eq=False)
class QuasiPolynomial:
    """``coefficients[r][i]`` is the coefficient of ``k**i`` when ``k = r mod period``."""

    degree: int
    period: int
    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(tuple(Fraction(c) for c in row) for row in self.coefficients)
        if len(coeffs) != self.period or any(len(row) != self.degree + 1 for row in coeffs):
            raise ValueError("coefficient table does not match degree/period")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def polynomial(cls, coeffs) -> QuasiPolynomial:
        """Period-1 quasi-polynomial from ascending coefficients."""
        return cls(len(coeffs) - 1, 1, (tuple(coeffs),))

    def __call__(self, k: int) -> Fraction:
        return evaluate(self, k)

    def coefficient(self, i: int, r: int = 0) -> Fraction:
        if i > self.degree:
            return Fraction(0)
        return self.coefficients[r % self.period][i]

    def coefficient_function(self, i: int):
        return tuple(self.coefficient(i, r) for r in range(self.period))

    def lift(self, period: int, degree: int | None = None) -> QuasiPolynomial:
        """Same function written with a multiple of the period (and maybe a larger degree)."""
        if period % self.period:
            raise ValueError(f"{period} is not a multiple of {self.period}")
        degree = self.degree if degree is None else degree
        if degree < self.degree:
            raise ValueError("cannot lower the degree by lifting")
        rows = []
        for r in range(period):
            row = list(self.coefficients[r % self.period])
            rows.append(tuple(row + [Fraction(0)] * (degree - self.degree)))
        return QuasiPolynomial(degree, period, tuple(rows))

    def _common(self, other):
        other = _coerce(other)
        n = lcm(self.period, other.period)
        d = max(self.degree, other.degree)
        return self.lift(n, d), other.lift(n, d)

    def __eq__(self, other):
        if not isinstance(other, (QuasiPolynomial, int, Fraction)):
            return NotImplemented
        a, b = self._common(other)
        return a.coefficients == b.coefficients

    def __hash__(self):
        m = self.reduced()
        return hash((m.period, m.coefficients))

    def __add__(self, other):
        a, b = self._common(other)
        rows = tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a.coefficients, b.coefficients))
        return QuasiPolynomial(a.degree, a.period, rows).trimmed()

    __radd__ = __add__

    def __neg__(self):
        return QuasiPolynomial(self.degree, self.period, tuple(tuple(-c for c in row) for row in self.coefficients))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        s = Fraction(scalar)
        return QuasiPolynomial(self.degree, self.period, tuple(tuple(s * c for c in row) for row in self.coefficients)).trimmed()

    __rmul__ = __mul__

    def trimmed(self) -> QuasiPolynomial:
        """Drop leading degrees whose coefficient function is identically zero."""
        d = self.degree
        while d > 0 and all(row[d] == 0 for row in self.coefficients):
            d -= 1
        return QuasiPolynomial(d, self.period, tuple(row[: d + 1] for row in self.coefficients))

    def coefficient_periods(self):
        return tuple(_minimal_period(self.coefficient_function(i)) for i in range(self.degree + 1))

    def minimal_period(self) -> int:
        return lcm(1, *self.coefficient_periods())

    def reduced(self) -> QuasiPolynomial:
        """Equivalent representation with the minimal period."""
        m = self.minimal_period()
        return QuasiPolynomial(self.degree, m, self.coefficients[:m])

    def is_polynomial(self) -> bool:
        return self.minimal_period() == 1

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "period": self.period,
            "coefficients": [[str(c) for c in row] for row in self.coefficients],
        }

    def __repr__(self):
        if self.period == 1:
            return f"QuasiPolynomial({_poly_str(self.coefficients[0])})"
        parts = ", ".join(f"{r}: {_poly_str(row)}" for r, row in enumerate(self.coefficients))
        return f"QuasiPolynomial(period={self.period}; {parts})"


def _poly_str(row):
    terms = []
    for i in range(len(row) - 1, -1, -1):
        c = row[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("k" if i == 1 else f"k^{i}")
        terms.append(f"({c}){mono}" if mono else f"{c}")
    return " + ".join(terms) or "0"


def _coerce(x) -> QuasiPolynomial:
    if isinstance(x, QuasiPolynomial):
        return x
    return QuasiPolynomial.polynomial([Fraction(x)])


def _minimal_period(values) -> int:
    """Smallest divisor m of len(values) with values[r] == values[r+m] for all r."""
    n = len(values)
    for m in range(1, n + 1):
        if n % m == 0 and all(values[r] == values[(r + m) % n] for r in range(n)):
            return m
    return n


def evaluate(q: QuasiPolynomial, k: int) -> Fraction:
    row = q.coefficients[k % q.period]
    return sum((c * Fraction(k) ** i for i, c in enumerate(row)), Fraction(0))


def interpolate(counts, d: int, N: int) -> QuasiPolynomial:
    """Quasi-polynomial of degree <= d and period N through the samples.

    ``counts`` maps k to the count at k and must cover k = 1..N(d+1); any
    further samples are used as a consistency check.
    """
    needed = range(1, N * (d + 1) + 1)
    missing = [k for k in needed if k not in counts]
    if missing:
        raise InterpolationError(f"missing samples at k = {missing}")
    rows = [None] * N
    for r in range(N):
        ks = [k for k in needed if k % N == r]
        vander = [[Fraction(k) ** i for i in range(d + 1)] for k in ks]
        coeffs = linalg.solve(vander, [Fraction(counts[k]) for k in ks])
        rows[r] = coeffs
    q = QuasiPolynomial(d, N, tuple(rows))
    bad = [k for k, v in sorted(counts.items()) if evaluate(q, k) != v]
    if bad:
        raise InterpolationError(f"(d={d}, N={N}) does not reproduce the samples at k = {bad}")
    return q


def _check_dim(p: RationalPolytope):
    if p.dim > MAX_TRIANGULATION_DIM:
        raise UnsupportedDimensionError(
            f"Ehrhart computations support dimension <= {MAX_TRIANGULATION_DIM}, got {p.dim}"
        )


def ehrhart_of(p: RationalPolytope) -> QuasiPolynomial:
    _check_dim(p)
    d = p.dim
    D = denominator(p)
    counts = {k: count_points(p, k) for k in range(1, D * (d + 1) + 1)}
    return interpolate(counts, d, D)


@dataclass(frozen=True)
class CollapseReport:
    denominator: int
    minimal_quasi_period: int
    collapsed: bool
    quasi_polynomial: QuasiPolynomial

    def to_dict(self) -> dict:
        return {
            "denominator": self.denominator,
            "minimal_quasi_period": self.minimal_quasi_period,
            "collapsed": self.collapsed,
            "coefficient_periods": list(self.quasi_polynomial.coefficient_periods()),
            "quasi_polynomial": self.quasi_polynomial.to_dict(),
        }


def minimal_quasi_period(p: RationalPolytope) -> CollapseReport:
    q = ehrhart_of(p)
    D = denominator(p)
    m = q.minimal_period()
    return CollapseReport(D, m, m < D, q)


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    witness: int | None = None
    detail: dict | None = None

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        out = {"verdict": "pass" if self.passed else "fail"}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out.update(self.detail)
        return out


def reciprocity_check(p: RationalPolytope, k_max: int) -> CheckResult:
    """(-1)^d L_P(-k) == #interior points of kP for k = 1..k_max."""
    q = ehrhart_of(p)
    sign = -1 if p.dim % 2 else 1
    for k in range(1, k_max + 1):
        lhs = sign * evaluate(q, -k)
        rhs = count_interior(p, k)
        if lhs != rhs:
            return CheckResult(False, k, {"expected": rhs, "got": str(lhs)})
    return CheckResult(True, detail={"k_max": k_max})


def quadrilateral_identity_check(D: int) -> CheckResult:
    """L_Q = 2 L_T - (D k + 1), and the linear coefficient of L_Q is 1."""
    from .fixtures import mw_triangle, quadrilateral_q

    lq = ehrhart_of(quadrilateral_q(D))
    lt = ehrhart_of(mw_triangle(D))
    rhs = 2 * lt - QuasiPolynomial.polynomial([1, D])
    identity = lq == rhs
    linear = lq.coefficient_function(1)
    linear_ok = all(c == 1 for c in linear)
    detail = {
        "identity": identity,
        "linear_coefficient": [str(c) for c in linear],
        "L_Q": lq.reduced().to_dict(),
    }
    return CheckResult(identity and linear_ok, None, detail)
