"""Truncated formal power series in ``t``.

A :class:`Series` keeps the coefficients of ``t**0 .. t**order``.  The
coefficient ring is whatever the entries are: usually :class:`LambdaPoly`,
or :class:`XPoly` when an ``x``-argument is kept symbolic.  Binary
operations insist on equal orders instead of truncating silently.
"""

from fractions import Fraction
from math import comb, factorial

from .core import L, LambdaPoly, XPoly, one_factorial_inverse_lambda

__all__ = [
    "Series",
    "SeriesError",
    "exp_deg",
    "log_deg",
    "scaled_log",
    "geometric_pow",
    "binomial_series",
    "variable",
]


class SeriesError(ValueError):
    """Order mismatch or a violated composition/inversion precondition."""


def _zero_like(c):
    return c * 0


def _unit_inverse(c):
    """Inverse of a constant term, which must be a nonzero rational."""
    v = c
    if isinstance(v, XPoly):
        if not v.is_constant():
            raise SeriesError("constant term depends on x; not a unit")
        v = v.constant()
    if isinstance(v, LambdaPoly):
        if not v.is_constant():
            raise SeriesError("constant term depends on lambda; not a unit")
        v = v.constant()
    v = Fraction(v)
    if not v:
        raise SeriesError("constant term is zero; series is not invertible")
    return 1 / v


class Series:
    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order=None):
        coeffs = [LambdaPoly.coerce(c) if isinstance(c, (int, Fraction)) else c for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise SeriesError("order must be nonnegative")
        if len(coeffs) > order + 1:
            coeffs = coeffs[: order + 1]
        pad = _zero_like(coeffs[0]) if coeffs else LambdaPoly()
        coeffs = coeffs + [pad] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def one(cls, order):
        return cls([1], order)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other):
        if not isinstance(other, Series):
            raise TypeError("expected a Series")
        if other.order != self.order:
            raise SeriesError(f"order mismatch: {self.order} vs {other.order}")

    def truncate(self, order):
        if order > self.order:
            raise SeriesError("cannot extend a truncated series")
        return Series(list(self.coeffs[: order + 1]), order)

    def egf_values(self):
        """``n! * [t^n]`` for every retained ``n``."""
        return [c * factorial(n) for n, c in enumerate(self.coeffs)]

    def map(self, fn):
        return Series([fn(c) for c in self.coeffs], self.order)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Series):
            other = Series([other], self.order)
        self._check(other)
        return Series([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return Series([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        if not isinstance(other, Series):
            other = Series([other], self.order)
        return self + (-other)

    def __rsub__(self, other):
        return Series([other], self.order) - self

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series([a * other for a in self.coeffs], self.order)
        self._check(other)
        return mul(self, other)

    def __rmul__(self, other):
        return Series([other * a for a in self.coeffs], self.order)

    def __truediv__(self, other):
        if not isinstance(other, Series):
            inv = _unit_inverse(other)
            return self * inv
        return div(self, other)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = Series.one(self.order)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, inner):
        return compose(self, inner)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        return f"Series([{', '.join(str(c) for c in self.coeffs)}])"

    # -- shifts and calculus --------------------------------------------

    def shift_down(self):
        """``s / t`` for ``s`` with zero constant term; the order drops by one."""
        if self.coeffs[0]:
            raise SeriesError("shift_down needs a zero constant term")
        if self.order == 0:
            raise SeriesError("nothing left after dividing by t")
        return Series(list(self.coeffs[1:]), self.order - 1)

    def derivative(self):
        """Formal ``d/dt``; the unknown top coefficient is set to zero."""
        out = [c * (n + 1) for n, c in enumerate(self.coeffs[1:])]
        out.append(_zero_like(self.coeffs[0]))
        return Series(out, self.order)

    def valuation(self):
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None


def mul(a, b):
    """Truncated Cauchy product."""
    a._check(b)
    n = a.order
    out = []
    ac, bc = a.coeffs, b.coeffs
    nz_a = [i for i, c in enumerate(ac) if c]
    for k in range(n + 1):
        acc = None
        for i in nz_a:
            if i > k:
                break
            term = ac[i] * bc[k - i]
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else _zero_like(ac[0]) * bc[0])
    return Series(out, n)


def div(a, b):
    """``q`` with ``q * b == a`` to the common order."""
    a._check(b)
    inv = _unit_inverse(b.coeffs[0])
    q = []
    for k in range(a.order + 1):
        acc = a.coeffs[k]
        for i in range(k):
            acc = acc - q[i] * b.coeffs[k - i]
        q.append(acc * inv)
    return Series(q, a.order)


def compose(outer, inner):
    """``outer(inner(t))``; ``inner`` must have zero constant term."""
    outer._check(inner)
    if inner.coeffs[0]:
        raise SeriesError("inner series must have zero constant term")
    acc = Series([outer.coeffs[-1]], outer.order)
    for c in reversed(outer.coeffs[:-1]):
        acc = acc * inner + c
    return acc


def reversion(s):
    """Compositional inverse of ``s`` (``s[0] == 0``, ``s[1]`` a unit).

    Newton iteration ``g <- g - (s(g) - t) / s'(g)``; the number of correct
    coefficients roughly doubles per step.
    """
    if s.coeffs[0]:
        raise SeriesError("reversion needs s[0] == 0")
    if s.order == 0:
        return Series([0], 0)
    inv = _unit_inverse(s.coeffs[1])
    t = variable(s.order)
    g = t * inv
    ds = s.derivative()
    correct = 1
    while correct < s.order:
        residual = compose(s, g) - t
        g = g - div(residual, compose(ds, g))
        correct *= 2
    return g


def variable(order):
    """The series ``t``."""
    if order == 0:
        return Series([0], 0)
    return Series([0, 1], order)


Series.compose = compose
Series.reversion = reversion


# -- named generating functions -----------------------------------------


def exp_deg(x, order):
    """Degenerate exponential ``sum (x)_{n,L} t^n / n!``.

    ``x`` may be a rational (e.g. ``r`` or ``-r``), a :class:`LambdaPoly`, or
    an :class:`XPoly` such as ``X`` to keep the argument symbolic.
    """
    coeffs = []
    value = XPoly.coerce(1) if isinstance(x, XPoly) else LambdaPoly.coerce(1)
    for n in range(order + 1):
        coeffs.append(value / factorial(n))
        value = value * (x - n * L)
    return Series(coeffs, order)


def log_deg(order):
    """Degenerate logarithm ``log_L(1 + t)``."""
    coeffs = [LambdaPoly()]
    for n in range(1, order + 1):
        coeffs.append(one_factorial_inverse_lambda(n) / factorial(n))
    return Series(coeffs, order)


def scaled_log(order):
    """Ordinary ``log(1 + L t) / L = sum (-1)^(n-1) L^(n-1) t^n / n``."""
    coeffs = [LambdaPoly()]
    for n in range(1, order + 1):
        coeffs.append(L ** (n - 1) * Fraction((-1) ** (n - 1), n))
    return Series(coeffs, order)


def geometric_pow(r, sign, order):
    """``(1 - sign*t)^(-r)``: ``sign=+1`` gives ``1/(1-t)^r``, ``-1`` gives ``1/(1+t)^r``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return Series.one(order)
    return Series([comb(n + r - 1, n) * sign**n for n in range(order + 1)], order)


def binomial_series(x, order):
    """Ordinary ``(1 + t)^x = sum (x)_n t^n / n!``, ``x`` in any supported ring."""
    coeffs = []
    value = XPoly.coerce(1) if isinstance(x, XPoly) else LambdaPoly.coerce(1)
    for n in range(order + 1):
        coeffs.append(value / factorial(n))
        value = value * (x - n)
    return Series(coeffs, order)
