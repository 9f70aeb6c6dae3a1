"""Exact polynomial arithmetic over the rationals.

Two rings live here:

* :class:`LambdaPoly` -- dense polynomials in the deformation parameter
  ``L`` (lambda) with :class:`fractions.Fraction` coefficients.
* :class:`XPoly` -- dense polynomials in ``x`` whose coefficients are
  :class:`LambdaPoly` values.

Both are immutable and kept in canonical form (trailing zeros stripped), so
equality is structural.  Plain ``int`` and ``Fraction`` operands are coerced
on the fly; a ``LambdaPoly`` mixed with an ``XPoly`` yields an ``XPoly``.

The factorial-type building blocks used everywhere else are at the bottom
of the module.
"""

from fractions import Fraction
from math import factorial, gcd

__all__ = [
    "LambdaPoly",
    "XPoly",
    "L",
    "X",
    "falling",
    "rising",
    "degenerate_falling",
    "degenerate_rising",
    "lambda_binomial",
    "one_factorial_inverse_lambda",
]

_SCALARS = (int, Fraction)


def _strip(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


def _lcm(values):
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


class LambdaPoly:
    """Polynomial in ``L`` over Q; ``coeffs[i]`` is the coefficient of ``L**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, _SCALARS):
            coeffs = (coeffs,)
        self.coeffs = _strip([Fraction(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs):
        # coeffs must already be a stripped tuple of Fractions
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        return obj

    @classmethod
    def coerce(cls, value):
        if isinstance(value, LambdaPoly):
            return value
        if isinstance(value, _SCALARS):
            return cls._raw(_strip((Fraction(value),)))
        raise TypeError(f"cannot coerce {type(value).__name__} to LambdaPoly")

    # -- inspection -----------------------------------------------------

    @property
    def degree(self):
        """Degree in ``L``; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant(self):
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def coefficient(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def evaluate(self, lam):
        """Evaluate at the rational ``lam`` (Horner)."""
        lam = Fraction(lam)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * lam + c
        return acc

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        if isinstance(other, _SCALARS):
            other = LambdaPoly.coerce(other)
        elif not isinstance(other, LambdaPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return LambdaPoly._raw(_strip(out))

    __radd__ = __add__

    def __neg__(self):
        return LambdaPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, _SCALARS):
            other = LambdaPoly.coerce(other)
        elif not isinstance(other, LambdaPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LambdaPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            s = Fraction(other)
            if not s:
                return LambdaPoly._raw(())
            return LambdaPoly._raw(tuple(c * s for c in self.coeffs))
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return LambdaPoly._raw(())
        if len(a) == 1:
            return other * a[0]
        if len(b) == 1:
            return self * b[0]
        # integer convolution over a common denominator per operand
        da = _lcm(c.denominator for c in a)
        db = _lcm(c.denominator for c in b)
        ia = [c.numerator * (da // c.denominator) for c in a]
        ib = [c.numerator * (db // c.denominator) for c in b]
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(ia):
            if x:
                for j, y in enumerate(ib):
                    out[i + j] += x * y
        den = da * db
        return LambdaPoly._raw(_strip([Fraction(v, den) for v in out]))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            return self * (1 / Fraction(other))
        if isinstance(other, LambdaPoly) and other.is_constant() and not other.is_zero():
            return self * (1 / other.coeffs[0])
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = LambdaPoly._raw((Fraction(1),))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LambdaPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, _SCALARS):
            return self.coeffs == _strip((Fraction(other),))
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.constant())
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"LambdaPoly({str(self)!r})"

    def __str__(self):
        from .formats import format_lambda_poly

        return format_lambda_poly(self)


class XPoly:
    """Polynomial in ``x`` with :class:`LambdaPoly` coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, (LambdaPoly,) + _SCALARS):
            coeffs = (coeffs,)
        self.coeffs = _strip([LambdaPoly.coerce(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs):
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        return obj

    @classmethod
    def coerce(cls, value):
        if isinstance(value, XPoly):
            return value
        return cls._raw(_strip((LambdaPoly.coerce(value),)))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant(self):
        return self.coeffs[0] if self.coeffs else LambdaPoly._raw(())

    def coefficient(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else LambdaPoly._raw(())

    def at_x(self, x):
        """Substitute a rational or :class:`LambdaPoly` for ``x``."""
        x = LambdaPoly.coerce(x)
        acc = LambdaPoly._raw(())
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def at_lambda(self, lam):
        """Substitute a rational for ``L``, leaving an ``x``-polynomial over Q."""
        return XPoly([c.evaluate(lam) for c in self.coeffs])

    def evaluate(self, x, lam):
        return self.at_lambda(lam).at_x(x).constant()

    def __add__(self, other):
        if not isinstance(other, XPoly):
            if isinstance(other, (LambdaPoly,) + _SCALARS):
                other = XPoly.coerce(other)
            else:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return XPoly._raw(_strip(out))

    __radd__ = __add__

    def __neg__(self):
        return XPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, (XPoly, LambdaPoly) + _SCALARS):
            return NotImplemented
        return self + (-XPoly.coerce(other))

    def __rsub__(self, other):
        return XPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (LambdaPoly,) + _SCALARS):
            return XPoly._raw(_strip([c * other for c in self.coeffs]))
        if not isinstance(other, XPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return XPoly._raw(())
        out = [LambdaPoly._raw(())] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return XPoly._raw(_strip(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = XPoly.coerce(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, XPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (LambdaPoly,) + _SCALARS):
            return self.coeffs == XPoly.coerce(other).coeffs
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.constant())
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"XPoly({str(self)!r})"

    def __str__(self):
        from .formats import format_x_poly

        return format_x_poly(self)


L = LambdaPoly((0, 1))
X = XPoly((0, 1))


# -- factorial-type primitives ------------------------------------------


def _product(factors):
    out = 1
    for f in factors:
        out = f * out
    return out


def falling(x, n, step=None):
    """Generic ``x (x - step) ... (x - (n-1) step)``; ``step`` defaults to ``L``.

    ``x`` may be any ring element (int, Fraction, LambdaPoly, XPoly); the
    result lives in the ring generated by ``x`` and ``step``.
    """
    step = L if step is None else step
    out = _product(x - j * step for j in range(n))
    return out if n else (XPoly.coerce(1) if isinstance(x, XPoly) else LambdaPoly.coerce(1))


def rising(x, n, step=None):
    """Generic ``x (x + step) ... (x + (n-1) step)``."""
    step = L if step is None else step
    out = _product(x + j * step for j in range(n))
    return out if n else (XPoly.coerce(1) if isinstance(x, XPoly) else LambdaPoly.coerce(1))


def degenerate_falling(n, shift=0, ordinary=False):
    """``(x + shift)_{n,L}`` as an :class:`XPoly`.

    With ``ordinary=True`` the step is 1 instead of ``L``, giving the usual
    falling factorial ``(x + shift)(x + shift - 1)...``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return XPoly.coerce(falling(X + shift, n, 1 if ordinary else L))


def degenerate_rising(n, shift=0, ordinary=False):
    """``<x + shift>_{n,L}``; ``ordinary=True`` gives the rising factorial."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return XPoly.coerce(rising(X + shift, n, 1 if ordinary else L))


def lambda_binomial(k):
    """``binom(L, k) / L`` with the ``1/L`` cancelled: ``(L-1)...(L-k+1) / k!``."""
    if k < 1:
        raise ValueError("lambda_binomial is only polynomial for k >= 1")
    return one_factorial_inverse_lambda(k) / factorial(k)


def one_factorial_inverse_lambda(n):
    """``L**(n-1) * (1)_{n,1/L}``, i.e. ``(L-1)(L-2)...(L-n+1)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return LambdaPoly.coerce(_product(L - j for j in range(1, n)))
