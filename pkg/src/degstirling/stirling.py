"""Degenerate (r-)Stirling triangles and the transforms they induce.

The primary route is exact change of basis: a degree-``n`` polynomial is
expanded in a monic graded basis by peeling off the leading basis element
and working downward.  The generating-function route in
:func:`triangle_via_egf` is an independent cross-check.
"""

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from .core import LambdaPoly, XPoly, degenerate_falling, degenerate_rising
from .series import compose, exp_deg, geometric_pow, log_deg, variable

__all__ = [
    "Kind",
    "Provenance",
    "StirlingTriangle",
    "OrthogonalityReport",
    "expand_in_basis",
    "second_kind_r_basis",
    "first_kind_unsigned_r_basis",
    "signed_first_kind",
    "signed_first_kind_direct",
    "triangle_via_egf",
    "transform_forward",
    "transform_inverse",
    "orthogonality_matrix_check",
]


class Kind(enum.Enum):
    UNSIGNED_FIRST = "unsigned-first"
    SIGNED_FIRST = "signed-first"
    SECOND = "second"


class Provenance(enum.Enum):
    BASIS = "basis-conversion"
    EGF = "egf"
    RECURRENCE = "recurrence"


_ZERO = LambdaPoly()


@dataclass(frozen=True)
class StirlingTriangle:
    kind: Kind
    r: int
    n_max: int
    entries: tuple
    provenance: Provenance = field(default=Provenance.BASIS, compare=False)

    def __post_init__(self):
        if len(self.entries) != self.n_max + 1:
            raise ValueError("triangle must have n_max + 1 rows")
        for n, row in enumerate(self.entries):
            if len(row) != n + 1:
                raise ValueError(f"row {n} must have {n + 1} entries")

    def __getitem__(self, nk):
        n, k = nk
        if k < 0 or k > n:
            return _ZERO
        return self.entries[n][k]

    def row(self, n):
        return self.entries[n]

    def column(self, k):
        return [self.entries[n][k] for n in range(k, self.n_max + 1)]

    def at_lambda(self, lam):
        """Entries evaluated at a rational lambda (kept as constant LambdaPolys)."""
        rows = tuple(tuple(LambdaPoly.coerce(e.evaluate(lam)) for e in row) for row in self.entries)
        return StirlingTriangle(self.kind, self.r, self.n_max, rows, self.provenance)

    def truncate(self, n_max):
        return StirlingTriangle(self.kind, self.r, n_max, self.entries[: n_max + 1], self.provenance)

    def perturbed(self, n, k, delta=1):
        """Copy with ``delta`` added to entry ``(n, k)``; used for fault injection."""
        rows = [list(row) for row in self.entries]
        rows[n][k] = rows[n][k] + delta
        return StirlingTriangle(self.kind, self.r, self.n_max, tuple(tuple(r) for r in rows), self.provenance)


def expand_in_basis(poly, basis):
    """Coefficients ``c`` with ``poly == sum c[k] * basis[k]``.

    ``basis[k]`` must be monic of x-degree ``k``.  Returns a list of
    LambdaPoly of length ``poly.degree + 1``.
    """
    poly = XPoly.coerce(poly)
    out = [_ZERO] * (poly.degree + 1)
    rest = poly
    for k in range(poly.degree, -1, -1):
        b = basis[k]
        if b.degree != k or b.coefficient(k) != 1:
            raise ValueError(f"basis element {k} is not monic of degree {k}")
        c = rest.coefficient(k)
        if c:
            out[k] = c
            rest = rest - b * c
    if rest:
        raise ArithmeticError("back-substitution left a nonzero remainder")
    return out


def _triangle(kind, r, n_max, sources, basis):
    rows = []
    for n in range(n_max + 1):
        coeffs = expand_in_basis(sources[n], basis)
        rows.append(tuple(coeffs + [_ZERO] * (n + 1 - len(coeffs))))
    return StirlingTriangle(kind, r, n_max, tuple(rows), Provenance.BASIS)


@lru_cache(maxsize=None)
def second_kind_r_basis(n_max, r):
    """Coefficients of ``(x)_k`` in ``(x + r)_{n,L}``."""
    _check_range(n_max, r)
    sources = [degenerate_falling(n, r) for n in range(n_max + 1)]
    basis = [degenerate_falling(k, 0, ordinary=True) for k in range(n_max + 1)]
    return _triangle(Kind.SECOND, r, n_max, sources, basis)


@lru_cache(maxsize=None)
def first_kind_unsigned_r_basis(n_max, r):
    """Coefficients of ``<x>_{k,L}`` in ``<x + r>_n``."""
    _check_range(n_max, r)
    sources = [degenerate_rising(n, r, ordinary=True) for n in range(n_max + 1)]
    basis = [degenerate_rising(k) for k in range(n_max + 1)]
    return _triangle(Kind.UNSIGNED_FIRST, r, n_max, sources, basis)


@lru_cache(maxsize=None)
def signed_first_kind(n_max, r=0):
    """``S_{1,L}(n, k) = (-1)^(n-k)`` times the unsigned entry."""
    unsigned = first_kind_unsigned_r_basis(n_max, r)
    rows = tuple(
        tuple(e if (n - k) % 2 == 0 else -e for k, e in enumerate(row)) for n, row in enumerate(unsigned.entries)
    )
    return StirlingTriangle(Kind.SIGNED_FIRST, r, n_max, rows, Provenance.BASIS)


def signed_first_kind_direct(n_max, r=0):
    """Signed triangle by expanding ``(x - r)_n`` in ``{(x)_{k,L}}`` directly."""
    _check_range(n_max, r)
    sources = [degenerate_falling(n, -r, ordinary=True) for n in range(n_max + 1)]
    basis = [degenerate_falling(k) for k in range(n_max + 1)]
    return _triangle(Kind.SIGNED_FIRST, r, n_max, sources, basis)


def _column_base(kind, r, order):
    """(prefactor, inner) with column k generated by prefactor * inner^k / k!."""
    t = variable(order)
    if kind is Kind.SECOND:
        return exp_deg(r, order), exp_deg(1, order) - 1
    if kind is Kind.UNSIGNED_FIRST:
        return geometric_pow(r, 1, order), -compose(log_deg(order), -t)
    return geometric_pow(r, -1, order), log_deg(order)


@lru_cache(maxsize=None)
def triangle_via_egf(kind, r, n_max):
    """Triangle read off the column generating functions, ``n! [t^n]``."""
    _check_range(n_max, r)
    kind = Kind(kind)
    prefactor, inner = _column_base(kind, r, n_max)
    rows = [[_ZERO] * (n + 1) for n in range(n_max + 1)]
    power = prefactor
    for k in range(n_max + 1):
        column = power.egf_values()
        for n in range(k, n_max + 1):
            rows[n][k] = column[n] / factorial(k)
        power = power * inner
    return StirlingTriangle(kind, r, n_max, tuple(tuple(row) for row in rows), Provenance.EGF)


def _check_range(n_max, r):
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if r < 0:
        raise ValueError("r must be nonnegative")


# -- inverse relations --------------------------------------------------


def transform_forward(a, r, second=None):
    """``b_n = sum_k {n+r, k+r}_{r,L} a_k``."""
    n_max = len(a) - 1
    second = second or second_kind_r_basis(n_max, r)
    return [sum((second[n, k] * a[k] for k in range(n + 1)), _ZERO) for n in range(n_max + 1)]


def transform_inverse(b, r, first=None):
    """``a_n = sum_k (-1)^(n-k) [n+r, k+r]_{r,L} b_k``."""
    n_max = len(b) - 1
    first = first or first_kind_unsigned_r_basis(n_max, r)
    out = []
    for n in range(n_max + 1):
        acc = _ZERO
        for k in range(n + 1):
            term = first[n, k] * b[k]
            acc = acc + term if (n - k) % 2 == 0 else acc - term
        out.append(acc)
    return out


@dataclass(frozen=True)
class OrthogonalityReport:
    passed: bool
    relation: str = None
    n: int = None
    j: int = None
    residual: LambdaPoly = None


def orthogonality_residuals(first, second):
    """Yield ``(relation, n, j, residual)`` for both delta relations."""
    n_max = min(first.n_max, second.n_max)
    for n in range(n_max + 1):
        for j in range(n + 1):
            delta = 1 if n == j else 0
            lhs = _ZERO
            for k in range(j, n + 1):
                term = first[n, k] * second[k, j]
                lhs = lhs + term if (n - k) % 2 == 0 else lhs - term
            yield "first", n, j, lhs - delta
            lhs = _ZERO
            for k in range(j, n + 1):
                term = second[n, k] * first[k, j]
                lhs = lhs + term if (k - j) % 2 == 0 else lhs - term
            yield "second", n, j, lhs - delta


def orthogonality_matrix_check(n_max, r, first=None, second=None):
    """Check both orthogonality relations; report the first counterexample."""
    first = first or first_kind_unsigned_r_basis(n_max, r)
    second = second or second_kind_r_basis(n_max, r)
    for relation, n, j, residual in orthogonality_residuals(first, second):
        if residual:
            return OrthogonalityReport(False, relation, n, j, residual)
    return OrthogonalityReport(True)
