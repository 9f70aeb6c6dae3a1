"""Exit criteria for the package; every check is exact (zero residual)."""

import json
import time
from fractions import Fraction

import pytest

from conftest import brute_stirling2, classical_bernoulli_polynomials
from degstirling import families as fam
from degstirling.cli import main
from degstirling.core import XPoly
from degstirling.formats import (
    family_from_csv,
    family_from_json,
    family_to_csv,
    family_to_json,
    triangle_from_csv,
    triangle_from_json,
    triangle_to_csv,
    triangle_to_json,
)
from degstirling.identities import (
    FAULT_TABLES,
    Fault,
    Status,
    SuiteConfig,
    check_corollary3,
    check_inverse_pair,
    check_prop8_eq34,
    check_routes,
    check_theorem1,
    check_theorem2,
    check_theorem4,
    check_theorems5_6,
    check_theorem7,
    run_all,
)
from degstirling.stirling import Kind, first_kind_unsigned_r_basis, second_kind_r_basis, triangle_via_egf

P_SET = (-2, -1, 0, 1, 2, 3)


def assert_all_pass(results):
    assert results
    failed = [r.to_dict(stable=True) for r in results if r.status is not Status.PASS]
    assert not failed, failed[:5]


def test_c1_orthogonality():
    started = time.perf_counter()
    results = []
    for r in range(5):
        results += check_theorem1(12, r)
    assert_all_pass(results)
    assert len(results) == 5 * 2 * (13 * 14 // 2)
    assert time.perf_counter() - started < 30


def test_c2_inverse_relations():
    results = []
    for r in range(5):
        results += check_theorem2(10, r, trials=100, seed=0)
    assert_all_pass(results)
    assert len(results) == 5 * 2 * 100


def test_c3_route_equivalence():
    results = []
    for r in range(5):
        results += check_routes(12, r)
    assert_all_pass(results)


def test_c4_family_closed_forms():
    started = time.perf_counter()
    results = []
    for r in range(4):
        results += check_corollary3(10, r)
        results += check_theorem4(10, r)
        results += check_theorems5_6(10, r)
        results += check_theorem7(10, r, P_SET)
    assert_all_pass(results)
    ids = {res.identity_id for res in results}
    assert {"cor3", "thm4", "thm5", "thm6", "thm7"} <= ids
    assert time.perf_counter() - started < 120


def test_c5_hyperharmonic_and_convolution():
    results = []
    for r in range(1, 5):
        results += check_prop8_eq34(12, r)
    assert_all_pass(results)
    assert {res.identity_id for res in results} == {"prop8", "eq34", "b2-gf"}


def test_c6_classical_limits():
    second = second_kind_r_basis(8, 0).at_lambda(0)
    for n in range(9):
        for k in range(n + 1):
            assert second[n, k] == brute_stirling2(n, k)
    oracle = classical_bernoulli_polynomials(10)
    carlitz = fam.carlitz_bernoulli(10)
    fully = fam.fully_degenerate_bernoulli(10)
    for n in range(11):
        assert carlitz[n].at_lambda(0) == XPoly(oracle[n])
        assert fully[n].at_lambda(0) == XPoly(oracle[n])
    for n in range(1, 13):
        assert fam.harmonic_number(n).evaluate(0) == sum(Fraction(1, k) for k in range(1, n + 1))


def test_c7_compositional_inverse_pair():
    results = check_inverse_pair(20)
    assert_all_pass(results)
    assert {res.identity_id for res in results} == {"sec1-exp-log", "sec1-log-exp", "sec1-reversion"}


def _fault_positions(table, n_max):
    if table in ("brack", "brace", "brack-egf", "brace-egf"):
        return [(n, k) for n in range(n_max + 1) for k in range(n + 1)]
    return [(n, 0) for n in range(n_max + 1)]


@pytest.mark.parametrize("table", FAULT_TABLES)
def test_c8_fault_injection_is_detected(table):
    n_max = 4
    clean = run_all(SuiteConfig(n_max=n_max, r_max=1, trials=2, series_order=3))
    assert clean.ok
    for n, k in _fault_positions(table, n_max):
        for r in (0, 1):
            if table in ("bernoulli2", "hyperharmonic") and r == 0:
                continue
            fault = Fault(table, n, k, r=r)
            report = run_all(SuiteConfig(n_max=n_max, r_max=1, trials=2, series_order=3, faults=(fault,)))
            assert report.failures, fault


def test_c9_round_trips_and_stable_output(tmp_path, capsys):
    triangles = [second_kind_r_basis(8, r) for r in range(4)]
    triangles += [first_kind_unsigned_r_basis(8, r) for r in range(4)]
    triangles += [triangle_via_egf(Kind.SIGNED_FIRST, 2, 6), second_kind_r_basis(5, 3).at_lambda(Fraction(5, 2))]
    for tri in triangles:
        assert triangle_from_json(triangle_to_json(tri)) == tri
        assert triangle_from_csv(triangle_to_csv(tri)) == tri
    families = [
        fam.carlitz_bernoulli(6),
        fam.fully_degenerate_bernoulli(6),
        fam.fubini(5, 2),
        fam.euler_polynomials(6),
        fam.bernoulli_second_kind(6),
        fam.hyperharmonic(2, 8),
        fam.Family("poly-bernoulli", 5, tuple(fam.poly_bernoulli(3, 5, 2)), {"p": 3, "r": 2}),
        fam.Family("euler", 5, tuple(fam.euler(5, 1)), {"r": 1}),
    ]
    for family in families:
        assert family_from_json(family_to_json(family)) == family
        assert family_from_csv(family_to_csv(family)) == family

    for argv in (
        ["verify", "--n-max", "4", "--r-max", "2", "--trials", "5", "--stable", "--format", "json"],
        ["table", "second", "--r", "2", "--n-max", "8", "--format", "csv"],
        ["poly", "fubini", "--r", "1", "--n-max", "6", "--format", "json"],
    ):
        blobs = []
        for i in range(2):
            path = tmp_path / f"out{i}"
            assert main(argv + ["--output", str(path)]) == 0
            blobs.append(path.read_bytes())
        assert blobs[0] == blobs[1]
    capsys.readouterr()
    assert json.loads(blobs[0])["family"] == "fubini"
