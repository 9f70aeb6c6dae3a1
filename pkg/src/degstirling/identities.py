"""Executable checks for every identity relating the triangles and families.

Each check compares two canonical polynomials structurally, so a ``Pass``
is a proof for that parameter set, not a numerical spot check.  The only
randomness is in the inverse-relation round trips, which use a seeded
generator.

All inputs come from a :class:`Tables` instance.  Faults injected there
perturb one stored value; a sensitive suite must then report failures.
"""

import enum
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from . import families as fam
from .core import LambdaPoly, XPoly, one_factorial_inverse_lambda
from .formats import format_value
from .series import compose, exp_deg, log_deg, reversion, variable
from .stirling import (
    Kind,
    first_kind_unsigned_r_basis,
    orthogonality_residuals,
    second_kind_r_basis,
    transform_forward,
    transform_inverse,
    triangle_via_egf,
)

__all__ = [
    "Status",
    "CheckResult",
    "Fault",
    "SuiteConfig",
    "Report",
    "Tables",
    "FAULT_TABLES",
    "CONSUMERS",
    "parse_fault",
    "check_routes",
    "check_theorem1",
    "check_theorem2",
    "check_corollary3",
    "check_theorem4",
    "check_theorems5_6",
    "check_theorem7",
    "check_prop8_eq34",
    "check_inverse_pair",
    "run_all",
]


class Status(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"


@dataclass
class CheckResult:
    identity_id: str
    params: dict
    status: Status
    residual: object = None
    elapsed: float = 0.0  # seconds

    @property
    def passed(self):
        return self.status is Status.PASS

    def sort_key(self):
        return self.identity_id, tuple(sorted(self.params.items()))

    def to_dict(self, stable=False):
        out = {
            "identity_id": self.identity_id,
            "params": dict(sorted(self.params.items())),
            "status": self.status.value,
            "residual": None if self.residual is None else format_value(self.residual),
        }
        if not stable:
            out["elapsed_ms"] = round(self.elapsed * 1000, 3)
        return out


def _result(identity_id, params, residual, started):
    elapsed = time.perf_counter() - started
    if residual:
        return CheckResult(identity_id, params, Status.FAIL, residual, elapsed)
    return CheckResult(identity_id, params, Status.PASS, None, elapsed)


# -- inputs and fault injection -----------------------------------------

FAULT_TABLES = (
    "brack",
    "brace",
    "brack-egf",
    "brace-egf",
    "beta",
    "fubini",
    "euler",
    "poly-bernoulli",
    "bernoulli2",
    "hyperharmonic",
)

# identity ids that read each table; a fault may only break these
CONSUMERS = {
    "brack": {"route-first", "thm1-first", "thm1-second", "thm2-forward", "thm2-backward",
              "cor3", "thm4", "thm6", "thm7"},
    "brace": {"route-second", "thm1-first", "thm1-second", "thm2-forward", "thm2-backward",
              "eq19", "eq22", "thm5", "eq28"},
    "brack-egf": {"route-first"},
    "brace-egf": {"route-second"},
    "beta": {"eq19", "cor3"},
    "fubini": {"eq22", "thm4", "eq24"},
    "euler": {"thm5", "eq24", "thm6"},
    "poly-bernoulli": {"eq28", "thm7"},
    "bernoulli2": {"eq34", "b2-gf"},
    "hyperharmonic": {"prop8", "eq34"},
}

# default table to corrupt when a fault is named after an identity
_IDENTITY_FAULTS = {
    "route": "brace-egf",
    "thm1": "brace",
    "thm2": "brack",
    "eq19": "beta",
    "cor3": "beta",
    "eq22": "fubini",
    "thm4": "fubini",
    "thm5": "euler",
    "eq24": "euler",
    "thm6": "euler",
    "eq28": "poly-bernoulli",
    "thm7": "poly-bernoulli",
    "prop8": "hyperharmonic",
    "eq34": "bernoulli2",
}


@dataclass(frozen=True)
class Fault:
    """Add ``delta`` to entry ``(n, k)`` of a table (``k`` ignored for families).

    ``r`` and ``p`` restrict the fault to one parameter value; ``None``
    applies it for every value.
    """

    table: str
    n: int = 2
    k: int = 1
    delta: int = 1
    r: int = None
    p: int = None

    def __post_init__(self):
        if self.table not in FAULT_TABLES:
            raise ValueError(f"unknown fault table {self.table!r}")

    def applies(self, r, p=None):
        return (self.r is None or self.r == r) and (self.p is None or self.p == p)


def parse_fault(spec, n_max):
    """``name[:n[:k]]`` where name is a table or an identity id."""
    name, *pos = spec.split(":")
    table = _IDENTITY_FAULTS.get(name, name)
    if table not in FAULT_TABLES:
        raise ValueError(f"unknown fault target {name!r}")
    n = int(pos[0]) if pos else min(2, n_max)
    k = int(pos[1]) if len(pos) > 1 else min(1, n)
    if not 0 <= k <= n <= n_max:
        raise ValueError(f"fault position ({n}, {k}) outside the table")
    return Fault(table, n, k)


class Tables:
    """Lazily built, per-parameter inputs shared by the checks."""

    def __init__(self, n_max, faults=()):
        self.n_max = n_max
        self.faults = tuple(faults)
        self._cache = {}

    def _get(self, key, build, r, p=None, triangle=True):
        if key not in self._cache:
            value = build()
            for f in self.faults:
                if f.table == key[0] and f.applies(r, p):
                    if triangle:
                        value = value.perturbed(f.n, f.k, f.delta)
                    else:
                        value = list(value)
                        value[f.n] = value[f.n] + f.delta
            self._cache[key] = value
        return self._cache[key]

    def brack(self, r):
        return self._get(("brack", r), lambda: first_kind_unsigned_r_basis(self.n_max, r), r)

    def brace(self, r):
        return self._get(("brace", r), lambda: second_kind_r_basis(self.n_max, r), r)

    def brack_egf(self, r):
        return self._get(("brack-egf", r), lambda: triangle_via_egf(Kind.UNSIGNED_FIRST, r, self.n_max), r)

    def brace_egf(self, r):
        return self._get(("brace-egf", r), lambda: triangle_via_egf(Kind.SECOND, r, self.n_max), r)

    def _family(self, name, r, build, p=None):
        return self._get((name, r, p), build, r, p, triangle=False)

    def beta(self, r):
        return self._family("beta", r, lambda: fam.fully_degenerate_bernoulli(self.n_max).at_x(r))

    def fubini(self, r):
        return self._family("fubini", r, lambda: list(fam.fubini(self.n_max, r).values))

    def euler(self, r):
        return self._family("euler", r, lambda: fam.euler_egf(self.n_max, r))

    def poly_bernoulli(self, p, r):
        return self._family("poly-bernoulli", r, lambda: fam.poly_bernoulli_egf(p, self.n_max, r), p)

    def bernoulli2(self, r):
        return self._family("bernoulli2", r, lambda: fam.bernoulli_second_kind(self.n_max).at_x(r))

    def hyperharmonic(self, r):
        return self._family("hyperharmonic", r, lambda: fam.hyperharmonic_recursive(r, self.n_max))


def _tables(n_max, tables):
    if tables is None:
        return Tables(n_max)
    if tables.n_max < n_max:
        raise ValueError("tables were built for a smaller n_max")
    return tables


def _alt_sum(terms):
    """``sum sign * value`` over ``(sign, value)`` pairs."""
    acc = LambdaPoly()
    for sign, value in terms:
        acc = acc + value if sign > 0 else acc - value
    return acc


def _sign(e):
    return -1 if e % 2 else 1


# -- checks ---------------------------------------------------------------


def check_routes(n_max, r, tables=None):
    """Basis-conversion rows equal EGF-extracted rows, both kinds."""
    tables = _tables(n_max, tables)
    out = []
    pairs = (("route-first", tables.brack(r), tables.brack_egf(r)),
             ("route-second", tables.brace(r), tables.brace_egf(r)))
    for identity_id, basis, egf in pairs:
        for n in range(n_max + 1):
            started = time.perf_counter()
            residual = next((basis[n, k] - egf[n, k] for k in range(n + 1) if basis[n, k] != egf[n, k]), None)
            out.append(_result(identity_id, {"r": r, "n": n}, residual, started))
    return out


def check_theorem1(n_max, r, tables=None):
    """Both orthogonality relations, for every ``0 <= j <= n <= n_max``."""
    tables = _tables(n_max, tables)
    out = []
    started = time.perf_counter()
    first, second = tables.brack(r).truncate(n_max), tables.brace(r).truncate(n_max)
    for relation, n, j, residual in orthogonality_residuals(first, second):
        out.append(_result(f"thm1-{relation}", {"r": r, "n": n, "j": j}, residual, started))
        started = time.perf_counter()
    return out


def random_vector(rng, length, max_degree=3):
    """Vector of random LambdaPoly with small rational coefficients."""
    vec = []
    for _ in range(length):
        degree = rng.randint(-1, max_degree)
        vec.append(LambdaPoly([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(degree + 1)]))
    return vec


def check_theorem2(n_max, r, trials=100, seed=0, tables=None):
    """Inverse relations: both composites are the identity on random vectors."""
    tables = _tables(n_max, tables)
    first, second = tables.brack(r).truncate(n_max), tables.brace(r).truncate(n_max)
    rng = random.Random(f"thm2:{seed}:{r}:{n_max}")
    out = []
    for trial in range(trials):
        a = random_vector(rng, n_max + 1)
        started = time.perf_counter()
        back = transform_inverse(transform_forward(a, r, second), r, first)
        residual = next((u - v for u, v in zip(back, a) if u != v), None)
        out.append(_result("thm2-forward", {"r": r, "trial": trial}, residual, started))
        started = time.perf_counter()
        again = transform_forward(transform_inverse(a, r, first), r, second)
        residual = next((u - v for u, v in zip(again, a) if u != v), None)
        out.append(_result("thm2-backward", {"r": r, "trial": trial}, residual, started))
    return out


def check_corollary3(n_max, r, tables=None):
    """Closed form for ``beta_{n,L}(r)`` and ``n!/(n+1) = sum (-1)^k [..] beta_k(r)``."""
    tables = _tables(n_max, tables)
    beta, first = tables.beta(r), tables.brack(r)
    closed = fam.fully_degenerate_bernoulli_closed_form(n_max, r, tables.brace(r))
    out = []
    for n in range(n_max + 1):
        started = time.perf_counter()
        out.append(_result("eq19", {"r": r, "n": n}, beta[n] - closed[n], started))
        started = time.perf_counter()
        rhs = _alt_sum((_sign(k), first[n, k] * beta[k]) for k in range(n + 1))
        out.append(_result("cor3", {"r": r, "n": n}, rhs - Fraction(factorial(n), n + 1), started))
    return out


def check_theorem4(n_max, r, tables=None):
    """``x^n n! = sum (-1)^(n-k) [n+r, k+r] F_k(x | r)`` in ``Q[L][x]``."""
    tables = _tables(n_max, tables)
    fubini, first = tables.fubini(r), tables.brack(r)
    closed = fam.fubini_closed_form(n_max, r, tables.brace(r))
    out = []
    for n in range(n_max + 1):
        started = time.perf_counter()
        out.append(_result("eq22", {"r": r, "n": n}, fubini[n] - closed[n], started))
        started = time.perf_counter()
        rhs = XPoly()
        for k in range(n + 1):
            term = fubini[k] * first[n, k]
            rhs = rhs + term if (n - k) % 2 == 0 else rhs - term
        lhs = XPoly([0] * n + [factorial(n)])
        out.append(_result("thm4", {"r": r, "n": n}, rhs - lhs, started))
    return out


def check_theorems5_6(n_max, r, tables=None):
    """Euler closed form, the Fubini bridge at ``x = -1/2``, and ``n!/2^n``."""
    tables = _tables(n_max, tables)
    euler, first, fubini = tables.euler(r), tables.brack(r), tables.fubini(r)
    closed = fam.euler_closed_form(n_max, r, tables.brace(r))
    out = []
    for n in range(n_max + 1):
        started = time.perf_counter()
        out.append(_result("thm5", {"r": r, "n": n}, euler[n] - closed[n], started))
        started = time.perf_counter()
        bridge = XPoly.coerce(fubini[n]).at_x(Fraction(-1, 2))
        out.append(_result("eq24", {"r": r, "n": n}, euler[n] - bridge, started))
        started = time.perf_counter()
        rhs = _alt_sum((_sign(k), first[n, k] * euler[k]) for k in range(n + 1))
        out.append(_result("thm6", {"r": r, "n": n}, rhs - Fraction(factorial(n), 2**n), started))
    return out


def check_theorem7(n_max, r, p_set=(-2, -1, 0, 1, 2, 3), tables=None):
    """Poly-Bernoulli closed form at ``-r`` and its inverse relation."""
    tables = _tables(n_max, tables)
    first = tables.brack(r)
    out = []
    for p in p_set:
        values = tables.poly_bernoulli(p, r)
        closed = fam.poly_bernoulli_closed_form(p, n_max, r, tables.brace(r))
        for n in range(n_max + 1):
            started = time.perf_counter()
            out.append(_result("eq28", {"r": r, "p": p, "n": n}, values[n] - closed[n], started))
            started = time.perf_counter()
            # (-L)^n (1)_{n+1,1/L} = (1-L)(2-L)...(n-L)
            lhs = one_factorial_inverse_lambda(n + 1) * _sign(n) / Fraction(n + 1) ** p
            rhs = sum((first[n, k] * values[k] for k in range(n + 1)), LambdaPoly())
            out.append(_result("thm7", {"r": r, "p": p, "n": n}, rhs - lhs, started))
    return out


def check_prop8_eq34(n_max, r, tables=None):
    """Hyperharmonic generating function, its convolution with ``b_k(r)``, and
    the generating function of ``b_k(r)`` itself.

    ``H^{(r)}_{0,L}`` is 0 here for every ``r``, including ``r = 1``.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    tables = _tables(n_max, tables)
    hyper = tables.hyperharmonic(r)
    gf = fam.hyperharmonic_gf(r, n_max)
    b = tables.bernoulli2(r)
    ell = log_deg(n_max + 1).shift_down().coeffs
    out = []
    for n in range(n_max + 1):
        started = time.perf_counter()
        out.append(_result("prop8", {"r": r, "n": n}, hyper[n] - gf[n], started))
        started = time.perf_counter()
        conv = _alt_sum((_sign(k), b[k] * hyper[n - k] / factorial(k)) for k in range(n + 1))
        out.append(_result("eq34", {"r": r, "n": n}, conv - (1 if n == 1 else 0), started))
        # b_n(r) carries weight 1/n! here, so no entry is invisible to the suite
        started = time.perf_counter()
        lhs = sum((b[k] / factorial(k) * ell[n - k] for k in range(n + 1)), LambdaPoly())
        out.append(_result("b2-gf", {"r": r, "n": n}, lhs - comb(r, n), started))
    return out


def check_inverse_pair(order):
    """``e_L(log_L(1+t)) = 1+t``, ``log_L(e_L(t)) = t`` and reversion vs closed form."""
    out = []
    t = variable(order)
    started = time.perf_counter()
    lhs = compose(exp_deg(1, order), log_deg(order))
    out.append(_result("sec1-exp-log", {"order": order}, _series_residual(lhs, 1 + t), started))
    started = time.perf_counter()
    lhs = compose(log_deg(order), exp_deg(1, order) - 1)
    out.append(_result("sec1-log-exp", {"order": order}, _series_residual(lhs, t), started))
    started = time.perf_counter()
    inverse = reversion(exp_deg(1, order) - 1)
    out.append(_result("sec1-reversion", {"order": order}, _series_residual(inverse, log_deg(order)), started))
    return out


def _series_residual(a, b):
    return next((u - v for u, v in zip(a.coeffs, b.coeffs) if u != v), None)


# -- runner -----------------------------------------------------------------


@dataclass(frozen=True)
class SuiteConfig:
    n_max: int = 10
    r_max: int = 3
    p_set: tuple = (-2, -1, 0, 1, 2, 3)
    seed: int = 0
    trials: int = 100
    series_order: int = 20
    faults: tuple = ()
    jobs: int = 1


@dataclass
class Report:
    results: list = field(default_factory=list)

    @property
    def failures(self):
        return [res for res in self.results if not res.passed]

    @property
    def ok(self):
        return not self.failures

    def to_json(self, stable=False):
        return json.dumps([res.to_dict(stable) for res in self.results], indent=2) + "\n"

    def to_text(self, stable=False):
        lines = []
        for res in self.results:
            params = " ".join(f"{k}={v}" for k, v in sorted(res.params.items()))
            line = f"{res.identity_id:<16} {params:<24} {res.status.value}"
            if res.residual is not None:
                line += f"  residual={format_value(res.residual)}"
            if not stable:
                line += f"  {res.elapsed * 1000:.2f}ms"
            lines.append(line)
        lines.append(f"{len(self.results)} checks, {len(self.failures)} failures")
        return "\n".join(lines) + "\n"


def _run_task(args):
    config, (group, r) = args
    n = config.n_max
    if group == "series":
        return check_inverse_pair(config.series_order)
    tables = Tables(n, config.faults)
    if group == "harmonic":
        return check_prop8_eq34(n, r, tables)
    out = []
    out += check_routes(n, r, tables)
    out += check_theorem1(n, r, tables)
    out += check_theorem2(n, r, config.trials, config.seed, tables)
    out += check_corollary3(n, r, tables)
    out += check_theorem4(n, r, tables)
    out += check_theorems5_6(n, r, tables)
    out += check_theorem7(n, r, config.p_set, tables)
    return out


def run_all(config=None):
    """Run every check and return a :class:`Report` sorted by id, then params.

    Stirling-based checks use ``r = 0..r_max``; the hyperharmonic checks use
    ``r = 1..max(r_max, 1)``.
    """
    config = config or SuiteConfig()
    if config.n_max < 0 or config.r_max < 0:
        raise ValueError("n_max and r_max must be nonnegative")
    tasks = [("series", None)]
    tasks += [("stirling", r) for r in range(config.r_max + 1)]
    tasks += [("harmonic", r) for r in range(1, max(config.r_max, 1) + 1)]
    results = []
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for chunk in pool.map(_run_task, [(config, t) for t in tasks]):
                results.extend(chunk)
    else:
        for t in tasks:
            results.extend(_run_task((config, t)))
    results.sort(key=CheckResult.sort_key)
    return Report(results)
