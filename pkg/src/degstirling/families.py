"""Degenerate Bernoulli, Fubini, Euler, poly-Bernoulli and harmonic families.

Every family is read off its exponential generating function with the
series engine.  Where a closed form in terms of the r-Stirling numbers of
the second kind exists, a second function computes it that way, and the
unqualified accessor (``euler``, ``poly_bernoulli``, ``hyperharmonic``)
returns values only after both routes agree.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .core import X, LambdaPoly, XPoly, lambda_binomial, one_factorial_inverse_lambda
from .series import (
    Series,
    binomial_series,
    compose,
    div,
    exp_deg,
    geometric_pow,
    log_deg,
    scaled_log,
    variable,
)
from .stirling import second_kind_r_basis

__all__ = [
    "ConsistencyError",
    "Family",
    "carlitz_bernoulli",
    "fully_degenerate_bernoulli",
    "fully_degenerate_bernoulli_closed_form",
    "fubini",
    "fubini_closed_form",
    "euler_polynomials",
    "euler_egf",
    "euler_closed_form",
    "euler",
    "polylog_degenerate",
    "poly_bernoulli_egf",
    "poly_bernoulli_closed_form",
    "poly_bernoulli",
    "bernoulli_second_kind",
    "harmonic_number",
    "harmonic",
    "hyperharmonic_recursive",
    "hyperharmonic_gf",
    "hyperharmonic",
]


class ConsistencyError(ArithmeticError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class Family:
    """A computed sequence ``values[0..n_max]``.

    ``values`` are :class:`XPoly` for polynomial families (``ring == "x"``)
    and :class:`LambdaPoly` for number sequences (``ring == "lambda"``).
    Parameters such as ``r`` and ``p`` live in ``params``.
    """

    family: str
    n_max: int
    values: tuple
    params: dict = field(default_factory=dict)

    @property
    def ring(self):
        return "x" if any(isinstance(v, XPoly) for v in self.values) else "lambda"

    def __getitem__(self, n):
        return self.values[n]

    def at_x(self, x):
        """Values with ``x`` instantiated (a list of LambdaPoly)."""
        return [XPoly.coerce(v).at_x(x) for v in self.values]

    def at_lambda(self, lam):
        if self.ring == "x":
            values = tuple(v.at_lambda(lam) for v in self.values)
        else:
            values = tuple(LambdaPoly.coerce(v.evaluate(lam)) for v in self.values)
        return Family(self.family, self.n_max, values, dict(self.params))

    def perturbed(self, n, delta=1):
        values = list(self.values)
        values[n] = values[n] + delta
        return Family(self.family, self.n_max, tuple(values), dict(self.params))


def _check_n(n_max):
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")


def _exp_minus_one_over_t(order):
    return (exp_deg(1, order + 1) - 1).shift_down()


def _poly_family(name, gf, **params):
    return Family(name, gf.order, tuple(XPoly.coerce(v) for v in gf.egf_values()), params)


def carlitz_bernoulli(n_max):
    """``t / (e_L(t) - 1) * e_L^x(t)``."""
    _check_n(n_max)
    gf = div(Series.one(n_max), _exp_minus_one_over_t(n_max)) * exp_deg(X, n_max)
    return _poly_family("carlitz-bernoulli", gf)


def fully_degenerate_bernoulli(n_max):
    """``log(1 + L t) / (L (e_L(t) - 1)) * e_L^x(t)``."""
    _check_n(n_max)
    ratio = div(scaled_log(n_max + 1).shift_down(), _exp_minus_one_over_t(n_max))
    return _poly_family("fully-degenerate-bernoulli", ratio * exp_deg(X, n_max))


def fully_degenerate_bernoulli_closed_form(n_max, r, second=None):
    """``beta_{n,L}(r) = sum_k (-1)^k {n+r, k+r}_{r,L} k! / (k+1)``."""
    second = second or second_kind_r_basis(n_max, r)
    return [
        sum((second[n, k] * Fraction((-1) ** k * factorial(k), k + 1) for k in range(n + 1)), LambdaPoly())
        for n in range(n_max + 1)
    ]


def fubini(n_max, y):
    """Two-variable Fubini polynomials ``F_{n,L}(x | y)`` at a rational ``y``.

    ``1 / (1 - x (e_L(t) - 1))`` is expanded as ``sum_k x^k (e_L(t) - 1)^k``;
    powers beyond ``n_max`` vanish to this order.
    """
    _check_n(n_max)
    u = exp_deg(1, n_max) - 1
    total = Series([XPoly()], n_max)
    power = Series.one(n_max)
    for k in range(n_max + 1):
        total = total + power * X**k
        power = power * u
    return _poly_family("fubini", total * exp_deg(y, n_max), r=y)


def fubini_closed_form(n_max, r, second=None):
    """``F_{n,L}(x | r) = sum_k x^k k! {n+r, k+r}_{r,L}``."""
    second = second or second_kind_r_basis(n_max, r)
    return [XPoly([second[n, k] * factorial(k) for k in range(n + 1)]) for n in range(n_max + 1)]


def euler_polynomials(n_max):
    """``2 / (e_L(t) + 1) * e_L^x(t)`` with ``x`` symbolic."""
    _check_n(n_max)
    gf = div(Series([2], n_max), exp_deg(1, n_max) + 1) * exp_deg(X, n_max)
    return _poly_family("euler", gf)


def euler_egf(n_max, r):
    _check_n(n_max)
    gf = div(Series([2], n_max), exp_deg(1, n_max) + 1) * exp_deg(r, n_max)
    return gf.egf_values()


def euler_closed_form(n_max, r, second=None):
    """``E_{n,L}(r) = sum_k (-1/2)^k k! {n+r, k+r}_{r,L}``."""
    second = second or second_kind_r_basis(n_max, r)
    return [
        sum((second[n, k] * (Fraction(-1, 2) ** k * factorial(k)) for k in range(n + 1)), LambdaPoly())
        for n in range(n_max + 1)
    ]


def _agree(name, a, b):
    for n, (u, v) in enumerate(zip(a, b)):
        if u != v:
            raise ConsistencyError(f"{name}: routes disagree at n={n}: {u} != {v}")
    return a


def euler(n_max, r):
    """Degenerate Euler numbers at ``r``, checked by EGF and closed form."""
    return _agree("euler", euler_egf(n_max, r), euler_closed_form(n_max, r))


def polylog_degenerate(p, n_max):
    """``Li_{p,L}(x)`` truncated at ``x^n_max``, as a Series in ``x``.

    The ``n``-th coefficient is ``(1-L)(2-L)...(n-1-L) / ((n-1)! n^p)``;
    any integer ``p`` is allowed.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    coeffs = [LambdaPoly()]
    for n in range(1, n_max + 1):
        c = one_factorial_inverse_lambda(n) * ((-1) ** (n - 1))
        coeffs.append(c * (Fraction(1, factorial(n - 1)) / Fraction(n) ** p))
    return Series(coeffs, n_max)


def poly_bernoulli_egf(p, n_max, r):
    """``beta^{(p)}_{n,L}(-r)`` from the generating function.

    At ``x = -r`` the factor ``e_L^{-x}(-t)`` is ``e_L^r(-t)``.
    """
    _check_n(n_max)
    minus_t = -variable(n_max)
    e_neg = compose(exp_deg(1, n_max), minus_t)
    u = 1 - e_neg
    li_over_x = polylog_degenerate(p, n_max + 1).shift_down()
    gf = compose(li_over_x, u) * compose(exp_deg(r, n_max), minus_t)
    return gf.egf_values()


def poly_bernoulli_closed_form(p, n_max, r, second=None):
    """``(-1)^n sum_k (L-1)(L-2)...(L-k) / (k+1)^p {n+r, k+r}_{r,L}``."""
    second = second or second_kind_r_basis(n_max, r)
    weights = [one_factorial_inverse_lambda(k + 1) / Fraction(k + 1) ** p for k in range(n_max + 1)]
    out = []
    for n in range(n_max + 1):
        acc = sum((weights[k] * second[n, k] for k in range(n + 1)), LambdaPoly())
        out.append(acc if n % 2 == 0 else -acc)
    return out


def poly_bernoulli(p, n_max, r):
    return _agree("poly-bernoulli", poly_bernoulli_egf(p, n_max, r), poly_bernoulli_closed_form(p, n_max, r))


def bernoulli_second_kind(n_max):
    """``t / log_L(1 + t) * (1 + t)^x`` with the ordinary binomial series."""
    _check_n(n_max)
    ratio = div(Series.one(n_max), log_deg(n_max + 1).shift_down())
    return _poly_family("bernoulli-second-kind", ratio * binomial_series(X, n_max))


def harmonic_number(n):
    """``H_{n,L}``; ``H_{0,L} = 1`` by definition."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return LambdaPoly(1)
    return sum((lambda_binomial(k) * (-1) ** (k - 1) for k in range(1, n + 1)), LambdaPoly())


def harmonic(n_max):
    """``H_{n,L}`` for ``n <= n_max`` in generating-function position (index 0 is 0)."""
    _check_n(n_max)
    values = [LambdaPoly()]
    acc = LambdaPoly()
    for k in range(1, n_max + 1):
        acc = acc + lambda_binomial(k) * (-1) ** (k - 1)
        values.append(acc)
    return Family("harmonic", n_max, tuple(values), {"r": 1})


def hyperharmonic_recursive(r, n_max):
    """``r``-fold partial sums of the harmonic numbers."""
    if r < 1:
        raise ValueError("hyperharmonic numbers need r >= 1")
    values = list(harmonic(n_max).values)
    for _ in range(r - 1):
        acc = LambdaPoly()
        sums = [LambdaPoly()]
        for v in values[1:]:
            acc = acc + v
            sums.append(acc)
        values = sums
    return values


def hyperharmonic_gf(r, n_max):
    """Coefficients of ``-log_L(1 - t) / (1 - t)^r``."""
    if r < 1:
        raise ValueError("hyperharmonic numbers need r >= 1")
    _check_n(n_max)
    neg_log = -compose(log_deg(n_max), -variable(n_max))
    return list((neg_log * geometric_pow(r, 1, n_max)).coeffs)


def hyperharmonic(r, n_max):
    values = _agree("hyperharmonic", hyperharmonic_recursive(r, n_max), hyperharmonic_gf(r, n_max))
    return Family("hyperharmonic", n_max, tuple(values), {"r": r})
