from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_stirling2, lambda_polys
from degstirling.core import L, LambdaPoly, degenerate_falling
from degstirling.stirling import (
    Kind,
    Provenance,
    StirlingTriangle,
    expand_in_basis,
    first_kind_unsigned_r_basis,
    orthogonality_matrix_check,
    second_kind_r_basis,
    signed_first_kind,
    signed_first_kind_direct,
    transform_forward,
    transform_inverse,
    triangle_via_egf,
)


def int_poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def rising_r_coeffs(n, r):
    """Coefficients of x^k in (x+r)(x+r+1)...(x+r+n-1)."""
    out = [1]
    for j in range(n):
        out = int_poly_mul(out, [r + j, 1])
    return out


def test_second_kind_examples():
    t0 = second_kind_r_basis(2, 0)
    assert t0[2, 1] == 1 - L and t0[2, 2] == 1
    t1 = second_kind_r_basis(2, 1)
    assert [t1[2, k] for k in range(3)] == [1 - L, 3 - L, 1]
    for r in range(4):
        assert second_kind_r_basis(0, r)[0, 0] == 1


def test_first_kind_examples():
    t1 = first_kind_unsigned_r_basis(2, 1)
    assert [t1[2, k] for k in range(3)] == [2, 3 - L, 1]
    t0 = first_kind_unsigned_r_basis(2, 0)
    assert t0[2, 1] == 1 - L and t0[2, 2] == 1


def test_egf_examples():
    assert triangle_via_egf(Kind.SECOND, 0, 4)[2, 1] == 1 - L
    assert triangle_via_egf(Kind.UNSIGNED_FIRST, 0, 4)[2, 1] == 1 - L
    for kind in Kind:
        tri = triangle_via_egf(kind, 2, 6)
        assert all(tri[k, k] == 1 for k in range(7))
        assert tri.provenance is Provenance.EGF


def test_signed_first_kind_examples():
    s = signed_first_kind(4)
    assert s[2, 1] == L - 1
    assert s[1, 1] == 1
    assert s[2, 1].evaluate(0) == -1
    assert all(s[n, n] == 1 for n in range(5))


@pytest.mark.parametrize("r", range(4))
def test_signed_first_kind_matches_direct_expansion(r):
    assert signed_first_kind(8, r) == signed_first_kind_direct(8, r)


@pytest.mark.parametrize("r", range(5))
@pytest.mark.parametrize("kind", list(Kind))
def test_route_equivalence(kind, r):
    basis = {
        Kind.SECOND: second_kind_r_basis,
        Kind.UNSIGNED_FIRST: first_kind_unsigned_r_basis,
        Kind.SIGNED_FIRST: signed_first_kind,
    }[kind](12, r)
    assert basis == triangle_via_egf(kind, r, 12)


@pytest.mark.parametrize("n", range(9))
def test_second_kind_classical_limit(n):
    tri = second_kind_r_basis(8, 0).at_lambda(0)
    for k in range(n + 1):
        assert tri[n, k] == brute_stirling2(n, k)


@pytest.mark.parametrize("r", range(4))
def test_first_kind_classical_limit(r):
    # at L = 0 the basis <x>_{k,0} is x^k
    tri = first_kind_unsigned_r_basis(8, r).at_lambda(0)
    for n in range(9):
        assert [tri[n, k].constant() for k in range(n + 1)] == rising_r_coeffs(n, r)
        assert all(tri[n, k].constant() >= 0 for k in range(n + 1))


@pytest.mark.parametrize("r", range(5))
def test_second_kind_constant_column(r):
    tri = second_kind_r_basis(10, r)
    for n in range(11):
        assert tri[n, 0] == degenerate_falling(n).at_x(r)


def test_triangle_shape():
    tri = second_kind_r_basis(5, 2)
    assert [len(row) for row in tri.entries] == [1, 2, 3, 4, 5, 6]
    assert tri[2, 3] == 0
    with pytest.raises(ValueError):
        StirlingTriangle(Kind.SECOND, 0, 2, ((LambdaPoly(1),),))


def test_expand_in_basis_rejects_non_monic():
    bad = [degenerate_falling(0), degenerate_falling(1) * 2]
    with pytest.raises(ValueError):
        expand_in_basis(degenerate_falling(1), bad)


@pytest.mark.parametrize("r", range(5))
def test_orthogonality(r):
    assert orthogonality_matrix_check(6, r).passed
    assert orthogonality_matrix_check(12, r).passed


def test_orthogonality_detects_fault():
    bad = second_kind_r_basis(6, 0).perturbed(2, 1)
    report = orthogonality_matrix_check(6, 0, second=bad)
    assert not report.passed
    assert (report.n, report.j) == (2, 1)
    assert report.residual


def test_transform_examples():
    unit = [LambdaPoly(1)] + [LambdaPoly()] * 4
    b = transform_forward(unit, 1)
    assert b[2] == 1 - L
    assert b == second_kind_r_basis(4, 1).column(0)
    a = transform_inverse(unit, 2)
    first = first_kind_unsigned_r_basis(4, 2)
    assert a == [first[n, 0] * (-1) ** n for n in range(5)]
    assert transform_inverse([L + 3], 3) == [L + 3]
    last = [LambdaPoly()] * 4 + [LambdaPoly(1)]
    assert transform_forward(last, 0) == [0, 0, 0, 0, 1]


@settings(max_examples=40, deadline=None)
@given(st.lists(lambda_polys, min_size=1, max_size=11), st.integers(0, 4))
def test_inverse_relations_round_trip(a, r):
    assert transform_inverse(transform_forward(a, r), r) == a
    assert transform_forward(transform_inverse(a, r), r) == a
